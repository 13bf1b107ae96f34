#include "listlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "listlab/numerics.hpp"

namespace listlab {

namespace {

Rational weight_fraction(const Code& code) {
    if (!code.weight_tag()) throw DomainError("code must carry a constant-weight tag");
    return Rational((long long)*code.weight_tag(), (long long)code.n());
}

void require_binary(const Code& code) {
    if (code.q() != 2) throw DomainError("construction requires a binary code");
}

long long integral_or_throw(const Rational& value, const char* name) {
    if (!value.is_integer())
        throw DomainError(std::string(name) + " is not integral: " + value.to_string());
    return value.num().to_int64();
}

// Recompute achieved statistics and enforce the stored caps.
void finalize(AttackResult& r) {
    if (r.list.empty()) return;
    ListTuple list(r.list);
    auto [maxd, sum] = dist_stats(r.center, list);
    r.achieved_max = maxd;
    r.achieved_sum = sum;
    if ((long long)maxd > r.per_word_bound)
        throw std::logic_error("construction cap violated: max distance");
    if ((long long)sum > r.avg_bound)
        throw std::logic_error("construction cap violated: distance sum");
    if (!r.member_bounds.empty()) {
        for (size_t j = 0; j < r.list.size(); ++j)
            if ((long long)distance(r.center, r.list[j]) > r.member_bounds[j])
                throw std::logic_error("construction cap violated: member distance");
    }
}

Word indicator_word(uint32_t n, uint32_t q, const IndexSet& S) {
    Word x(n, q);
    for (uint32_t i : S.to_positions()) x.set_sym(i, 1);
    return x;
}

}  // namespace

AttackResult lemma13_center(const Code& code, const Rational& p, Rng& rng) {
    require_binary(code);
    const uint32_t n = code.n();
    Rational lambda = weight_fraction(code);
    Rational alpha = attack_alpha(p, lambda);
    long long alpha_n = integral_or_throw(alpha * Rational((long long)n), "alpha*n");

    IndexSet S = IndexSet::of(n, rng.sample_subset(n, uint32_t(alpha_n)));
    Word x = indicator_word(n, 2, S);

    // membership: wt(c|S) >= (1-p) alpha n, threshold held as a rational
    Rational member_threshold = (Rational(1) - p) * Rational(alpha_n);
    AttackResult r;
    r.center = x;
    for (const auto& c : code) {
        uint32_t wS = c.weight_on(S);
        if (Rational((long long)wS) >= member_threshold) r.list.push_back(c);
    }
    // every listed word is within (lambda - alpha(1-2p)) n = p n of x
    Rational cap = (lambda - alpha * (Rational(1) - Rational(2) * p)) * Rational((long long)n);
    if (cap != p * Rational((long long)n))
        throw std::logic_error("alpha identity failed");  // unreachable by construction
    r.per_word_bound = cap.floor().to_int64();
    r.avg_bound = r.per_word_bound * (long long)r.list.size();

    // split identity d(x,c) = (alpha n - wt(c|S)) + wt(c|S-bar), all c
    IndexSet Sbar = S.complement();
    for (const auto& c : code) {
        uint32_t wS = c.weight_on(S), wSbar = c.weight_on(Sbar);
        if (distance(x, c) != (uint32_t(alpha_n) - wS) + wSbar)
            throw std::logic_error("distance split identity failed");
    }
    finalize(r);
    return r;
}

AttackResult thm11_attack(const Code& code, const Rational& p, long long L, Rng& rng) {
    require_binary(code);
    if (code.size() == 0) throw DomainError("empty code");
    const uint32_t n = code.n();
    Rational lambda = weight_fraction(code);
    const long long w = (long long)*code.weight_tag();
    Rational beta = attack_beta(p, lambda, L);
    long long beta_n = integral_or_throw(beta * Rational((long long)n), "beta*n");
    if (beta_n > w) throw DomainError("beta*n exceeds the codeword weight");

    const Word& cstar = code[rng.uniform_below(code.size())];
    std::vector<uint32_t> supp = cstar.support().to_positions();
    std::vector<uint32_t> pick = rng.sample_subset(uint32_t(supp.size()), uint32_t(beta_n));
    std::vector<uint32_t> positions;
    positions.reserve(pick.size());
    for (uint32_t i : pick) positions.push_back(supp[i]);
    IndexSet S = IndexSet::of(n, positions);
    Word x = indicator_word(n, 2, S);

    Rational member_threshold = (Rational(1) - p) * Rational(beta_n);
    std::vector<Word> pool;  // list members other than cstar, in code order
    for (const auto& c : code) {
        if (c == cstar) continue;
        if (Rational((long long)c.weight_on(S)) >= member_threshold) pool.push_back(c);
    }

    AttackResult r;
    r.center = x;
    r.list.push_back(cstar);
    for (const auto& c : pool) {
        if ((long long)r.list.size() >= L) break;
        r.list.push_back(c);
    }
    r.success = (long long)r.list.size() == L;
    r.shortfall = L - (long long)r.list.size();

    // designated word: distance exactly (lambda - beta) n
    long long dstar = w - beta_n;
    if ((long long)distance(x, cstar) != dstar)
        throw std::logic_error("designated-word distance identity failed");
    // other members: within (lambda - beta(1-2p)) n
    Rational member_cap =
        (lambda - beta * (Rational(1) - Rational(2) * p)) * Rational((long long)n);
    r.per_word_bound = member_cap.floor().to_int64();
    r.member_bounds.assign(r.list.size(), r.per_word_bound);
    r.member_bounds[0] = dstar;
    // sum over the full list: p n L on success, per-member caps otherwise
    Rational sum_cap = r.success
                           ? p * Rational((long long)n) * Rational(L)
                           : Rational(dstar) + member_cap * Rational((long long)r.list.size() - 1);
    r.avg_bound = sum_cap.floor().to_int64();
    finalize(r);
    return r;
}

AttackResult thm15_center(const Code& code, long long L, Rng& rng) {
    require_binary(code);
    if (!code.weight_tag()) throw DomainError("code must carry a constant-weight tag");
    const long long w = (long long)*code.weight_tag();
    if (code.size() < size_t(L)) throw DomainError("code smaller than the list size");

    std::vector<uint32_t> pick = rng.sample_subset(uint32_t(code.size()), uint32_t(L));
    IndexSet S = code[pick[0]].support();
    for (uint32_t i : pick) S = S.intersect(code[i].support());
    Word x = indicator_word(code.n(), 2, S);

    AttackResult r;
    r.center = x;
    for (uint32_t i : pick) r.list.push_back(code[i]);
    long long cap = w - (long long)S.count();
    for (const auto& c : r.list)
        if ((long long)distance(x, c) != cap)
            throw std::logic_error("weight-difference distance identity failed");
    r.per_word_bound = cap;
    r.avg_bound = cap * L;
    finalize(r);
    return r;
}

CommonSupportExpectation expected_common_support(const Code& code, long long L) {
    require_binary(code);
    const long long M = (long long)code.size();
    if (M < L) throw DomainError("code smaller than the list size");
    Rational lambda = weight_fraction(code);
    const uint32_t n = code.n();

    BigInt num(0);
    for (uint32_t i = 0; i < n; ++i) {
        long long mi = 0;
        for (const auto& c : code) mi += c.sym(i) != 0;
        num += binomial(mi, L);
    }
    CommonSupportExpectation out;
    out.exact = Rational(num, binomial(M, L));
    Rational lambda_m = lambda * Rational(M);
    out.lower_bound = Rational((long long)n) * binomial_rational(lambda_m, uint32_t(L)) /
                      Rational(binomial(M, L));
    out.jensen_valid = lambda_m >= Rational(L - 1);
    return out;
}

ErdosSearchResult erdos_search(const std::vector<IndexSet>& sets, long long L,
                               const Rational& lambda, uint64_t budget) {
    if (sets.empty() || L < 1) throw DomainError("need at least one set and L >= 1");
    const uint32_t n = sets[0].n();
    Rational min_size = lambda * Rational((long long)n);
    for (const auto& s : sets) {
        if (s.n() != n) throw ShapeError("ground set mismatch");
        if (Rational((long long)s.count()) < min_size)
            throw DomainError("every set must have size at least lambda*n");
    }
    long long threshold =
        (Rational((long long)n) * lambda.pow(L) / Rational(2)).ceil().to_int64();

    ErdosSearchResult out;
    auto accept = [&](std::vector<uint32_t> idx, IndexSet inter) {
        out.found = IntersectionFamily{std::move(idx), std::move(inter), threshold};
    };

    if (sets.size() < size_t(L)) return out;
    BigInt combos = binomial((long long)sets.size(), L);
    if (combos <= BigInt(budget)) {
        for_each_combination(uint32_t(sets.size()), uint32_t(L),
                             [&](const std::vector<uint32_t>& idx) {
                                 IndexSet inter = sets[idx[0]];
                                 for (uint32_t i : idx) inter = inter.intersect(sets[i]);
                                 if ((long long)inter.count() >= threshold) {
                                     accept(idx, inter);
                                     return false;
                                 }
                                 return true;
                             });
        return out;
    }

    // greedy: from every start, repeatedly add the set keeping the largest
    // intersection
    out.heuristic_only = true;
    for (uint32_t start = 0; start < sets.size(); ++start) {
        std::vector<uint32_t> idx{start};
        IndexSet inter = sets[start];
        while ((long long)idx.size() < L) {
            int64_t best = -1;
            uint32_t best_count = 0;
            for (uint32_t cand = 0; cand < sets.size(); ++cand) {
                if (std::find(idx.begin(), idx.end(), cand) != idx.end()) continue;
                uint32_t c = inter.intersect(sets[cand]).count();
                if (best < 0 || c > best_count) {
                    best = cand;
                    best_count = c;
                }
            }
            if (best < 0) break;
            idx.push_back(uint32_t(best));
            inter = inter.intersect(sets[size_t(best)]);
        }
        if ((long long)idx.size() == L && (long long)inter.count() >= threshold) {
            std::sort(idx.begin(), idx.end());
            accept(idx, inter);
            return out;
        }
    }
    return out;
}

std::vector<IndexSet> even_partition(const IndexSet& S, long long L) {
    std::vector<uint32_t> positions = S.to_positions();
    if ((long long)positions.size() < L)
        throw DomainError("common support smaller than the list size");
    std::vector<IndexSet> parts;
    size_t base = positions.size() / size_t(L), extra = positions.size() % size_t(L);
    size_t at = 0;
    for (long long j = 0; j < L; ++j) {
        size_t len = base + (size_t(j) < extra ? 1 : 0);
        IndexSet part(S.n());
        for (size_t k = 0; k < len; ++k) part.set(positions[at++]);
        parts.push_back(std::move(part));
    }
    return parts;
}

AttackResult thm16_center(const std::vector<Word>& words,
                          const std::vector<IndexSet>& partition) {
    if (words.empty()) throw DomainError("empty word list");
    if (words.size() != partition.size())
        throw ShapeError("one partition part per word required");
    const uint32_t n = words[0].n(), q = words[0].q();
    IndexSet S = words[0].support();
    for (const auto& w : words) {
        if (w.n() != n || w.q() != q) throw ShapeError("word shape mismatch");
        S = S.intersect(w.support());
    }
    // parts must be disjoint, nonempty, and cover exactly S
    IndexSet seen(n);
    for (const auto& part : partition) {
        if (part.n() != n) throw ShapeError("partition ground set mismatch");
        if (part.count() == 0) throw DomainError("empty partition part");
        if (seen.intersect(part).count() != 0) throw DomainError("overlapping partition parts");
        seen = seen.unite(part);
    }
    if (!(seen == S)) throw DomainError("partition must cover the common support exactly");

    Word x(n, q);
    for (size_t j = 0; j < words.size(); ++j)
        for (uint32_t i : partition[j].to_positions()) x.set_sym(i, words[j].sym(i));

    AttackResult r;
    r.center = x;
    r.list = words;
    long long worst = 0;
    for (size_t j = 0; j < words.size(); ++j) {
        long long cap = (long long)words[j].weight() - (long long)partition[j].count();
        r.member_bounds.push_back(cap);
        worst = std::max(worst, cap);
    }
    r.per_word_bound = worst;
    r.avg_bound = 0;
    for (long long cap : r.member_bounds) r.avg_bound += cap;
    finalize(r);
    return r;
}

SubcodeExtraction lemma12_subcode(const Code& code, const Rational& lambda, Rng& rng,
                                  uint64_t center_budget, uint64_t trials) {
    const uint32_t n = code.n(), q = code.q();
    long long w = integral_or_throw(lambda * Rational((long long)n), "lambda*n");
    if (w < 0 || w > (long long)n) throw DomainError("lambda outside [0, 1]");

    auto shell_count = [&](const Word& x) {
        uint64_t count = 0;
        for (const auto& c : code) count += distance(x, c) == uint32_t(w);
        return count;
    };

    SubcodeExtraction out;
    auto space = WordEnumerator::space_size(n, q);
    uint64_t best_count = 0;
    Word best(n, q);
    if (space && *space <= center_budget) {
        out.exhaustive = true;
        for_each_word(n, q, [&](const Word& x) {
            uint64_t c = shell_count(x);
            if (c > best_count) {
                best_count = c;
                best = x;
            }
            return true;
        });
    } else {
        for (uint64_t t = 0; t < trials; ++t) {
            Word x(n, q);
            for (uint32_t i = 0; i < n; ++i) x.set_sym(i, uint8_t(rng.uniform_below(q)));
            uint64_t c = shell_count(x);
            if (c > best_count) {
                best_count = c;
                best = x;
            }
        }
    }

    std::vector<Word> members;
    for (const auto& c : code)
        if (distance(best, c) == uint32_t(w)) members.push_back(subtract_mod_q(c, best));
    out.center = best;
    out.subcode = Code(n, q, std::move(members), uint32_t(w));
    out.size_guarantee = Rational(BigInt(code.size()) * binomial(n, w) *
                                      BigInt::pow(BigInt((long long)(q - 1)), uint64_t(w)),
                                  BigInt::pow(BigInt((long long)q), n));
    if (out.exhaustive && Rational((long long)out.subcode.size()) < out.size_guarantee)
        throw std::logic_error("averaging guarantee violated");
    return out;
}

BiasedSampleReport thm18_sample(const Rational& p, long long L, uint32_t n, Rng& rng) {
    if (!(p > Rational(0) && p < Rational(1, 2))) throw DomainError("p must lie in (0, 1/2)");
    if (L < 1) throw DomainError("list size must be >= 1");
    double b = bias_exponent_scale(p).to_double();
    double pd = p.to_double();

    BiasedSampleReport rep;
    rep.eps = std::exp(-b * double(L));
    rep.lambda_prime = pd + 4.0 * rep.eps;
    rep.rate = std::min(rep.eps * rep.eps, rep.eps / (6.0 * double(L)));
    rep.threshold_relaxed = double(L) < std::log2(32.0 / b) / (2.0 * b);
    rep.side_condition_ok = 0.5 - rep.lambda_prime >= 0.5 * (0.5 - pd);
    rep.weight_cap = (pd + 5.0 * rep.eps) * double(n);

    rep.sampled = uint64_t(std::ceil(std::exp2(rep.rate * double(n))));
    // weight classes, counted with multiplicity over the sampled map
    std::vector<std::vector<Word>> classes(n + 1);
    for (uint64_t i = 0; i < rep.sampled; ++i) {
        Word w(n, 2);
        for (uint32_t j = 0; j < n; ++j)
            if (rng.bernoulli(rep.lambda_prime)) w.set_sym(j, 1);
        classes[w.weight()].push_back(std::move(w));
    }
    size_t best_w = 0;
    for (size_t w = 1; w <= n; ++w)
        if (classes[w].size() > classes[best_w].size()) best_w = w;

    rep.class_size = classes[best_w].size();
    rep.weight = uint32_t(best_w);
    rep.weight_within_cap = double(best_w) <= rep.weight_cap;
    // distinct members of the winning class form the expurgated code
    Code sub(n, 2, {}, uint32_t(best_w));
    for (const auto& w : classes[best_w]) {
        try {
            sub.add(w);
        } catch (const ShapeError&) {  // duplicate image
        }
    }
    rep.code = std::move(sub);
    return rep;
}

RestrictionResult lemma19_restrict(const Code& code, const Rational& p, Rng& rng) {
    require_binary(code);
    const uint32_t n = code.n();
    Rational lambda = weight_fraction(code);
    Rational alpha2 = attack_alpha2(p, lambda);
    long long a2n = integral_or_throw(alpha2 * Rational((long long)n), "alpha2*n");
    if (a2n % 2 != 0) throw DomainError("alpha2*n/2 is not integral");
    long long half = a2n / 2;

    RestrictionResult out;
    out.S = IndexSet::of(n, rng.sample_subset(n, uint32_t(a2n)));
    IndexSet Sbar = out.S.complement();
    Rational tail_cap = p * (Rational(1) - alpha2) * Rational((long long)n);

    std::vector<Word> kept;
    for (const auto& c : code) {
        if ((long long)c.weight_on(out.S) < half) continue;
        ++out.kept;
        if (Rational((long long)c.weight_on(Sbar)) > tail_cap)
            throw std::logic_error("restricted-tail weight cap violated");
        kept.push_back(restrict_word(c, out.S));
    }
    out.tail_bound_verified = true;

    // merge duplicates, recording multiplicity
    std::map<Word, uint32_t> merged;
    for (const auto& w : kept) ++merged[w];
    Code restriction(uint32_t(a2n), 2);
    for (const auto& [w, count] : merged) {
        restriction.add(w);
        out.multiplicities.push_back(count);
    }
    out.restriction = std::move(restriction);
    return out;
}

std::vector<uint32_t> admissible_lengths(const std::string& construction_id,
                                         const Rational& p, const Rational& lambda,
                                         long long L, uint32_t n_lo, uint32_t n_hi) {
    std::vector<uint32_t> good;
    for (uint32_t n = n_lo; n <= n_hi; ++n) {
        Rational nn((long long)n);
        if (!(lambda * nn).is_integer()) continue;
        bool ok = true;
        if (construction_id == "lemma13") {
            ok = (attack_alpha(p, lambda) * nn).is_integer();
        } else if (construction_id == "thm11") {
            ok = (attack_beta(p, lambda, L) * nn).is_integer();
        } else if (construction_id == "lemma19") {
            Rational a2n = attack_alpha2(p, lambda) * nn;
            ok = a2n.is_integer() && (a2n / Rational(2)).is_integer();
        } else if (construction_id == "lemma12" || construction_id == "thm15" ||
                   construction_id == "thm16" || construction_id == "thm18") {
            ok = true;  // only lambda*n matters
        } else {
            throw DomainError("unknown construction id: " + construction_id);
        }
        if (ok) good.push_back(n);
    }
    return good;
}

}  // namespace listlab
