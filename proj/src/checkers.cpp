#include "listlab/checkers.hpp"

#include <algorithm>
#include <unordered_map>

#include "listlab/code_io.hpp"
#include "listlab/numerics.hpp"
#include "listlab/parallel.hpp"
#include "listlab/rng.hpp"

namespace listlab {

const char* to_string(CheckMode mode) {
    switch (mode) {
        case CheckMode::max_radius: return "max_radius";
        case CheckMode::avg_radius: return "avg_radius";
        case CheckMode::erasure: return "erasure";
    }
    return "?";
}

DecodabilityQuery::DecodabilityQuery(Code c, Rational p_, long long L_, CheckMode m)
    : code(std::move(c)), p(std::move(p_)), L(L_), mode(m) {
    if (!(p > Rational(0) && p < Rational(1))) throw DomainError("p must lie in (0, 1)");
    if (L < 1) throw DomainError("list size must be >= 1");
}

uint32_t DecodabilityQuery::radius() const {
    return uint32_t((p * Rational(code.n())).floor().to_int64());
}

uint32_t DecodabilityQuery::support_size() const {
    return uint32_t(((Rational(1) - p) * Rational(code.n())).ceil().to_int64());
}

bool Witness::reverify(const DecodabilityQuery& query) const {
    if (list.size() != size_t(query.L)) return false;
    // members must be distinct codewords
    for (size_t i = 0; i < list.size(); ++i) {
        bool found = false;
        for (const auto& c : query.code) found = found || c == list[i];
        if (!found) return false;
        for (size_t j = i + 1; j < list.size(); ++j)
            if (list[i] == list[j]) return false;
    }
    if (mode == CheckMode::erasure) {
        if (!std::holds_alternative<ErasedWord>(center)) return false;
        const auto& a = std::get<ErasedWord>(center);
        if (a.supp_star().count() != query.support_size()) return false;
        uint64_t agreeing = 0;
        for (const auto& c : query.code) agreeing += agrees(a, c) ? 1 : 0;
        for (const auto& c : list)
            if (!agrees(a, c)) return false;
        return agreeing == stat && stat >= uint64_t(query.L);
    }
    if (!std::holds_alternative<Word>(center)) return false;
    const auto& x = std::get<Word>(center);
    auto [maxd, sum] = dist_stats(x, ListTuple(list));
    uint64_t e = query.radius();
    if (mode == CheckMode::max_radius) return maxd == stat && stat <= e;
    return sum == stat && stat <= e * uint64_t(query.L);
}

std::pair<Word, uint64_t> optimal_avg_center(const ListTuple& list) {
    Word c = centroid(list);
    return {c, dist_stats(c, list).second};
}

namespace {

struct MaxCenterSearch {
    const ListTuple& list;
    uint32_t n, L;
    std::vector<std::vector<uint8_t>> candidates;  // per coordinate, sorted
    std::vector<uint32_t> mismatch;                // per member, along current path
    Word current, best;
    uint32_t best_radius;
    uint64_t nodes = 0, node_budget;

    MaxCenterSearch(const ListTuple& l, uint64_t budget)
        : list(l),
          n(l[0].n()),
          L(uint32_t(l.size())),
          mismatch(l.size(), 0),
          current(l[0].n(), l[0].q()),
          best(l[0].n(), l[0].q()),
          node_budget(budget) {
        candidates.resize(n);
        for (uint32_t i = 0; i < n; ++i) {
            for (const auto& m : list) candidates[i].push_back(m.sym(i));
            auto& v = candidates[i];
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        // seed the bound with the centroid
        best = centroid(list);
        best_radius = dist_stats(best, list).first;
    }

    void dfs(uint32_t coord) {
        if (++nodes > node_budget)
            throw ResourceError("center-search", double(nodes), double(node_budget));
        uint32_t lower = 0;
        for (uint32_t j = 0; j < L; ++j) lower = std::max(lower, mismatch[j]);
        if (lower >= best_radius) return;  // cannot strictly improve
        if (coord == n) {
            // lower == exact radius of the completed center here
            best = current;
            best_radius = lower;
            return;
        }
        for (uint8_t sym : candidates[coord]) {
            current.set_sym(coord, sym);
            for (uint32_t j = 0; j < L; ++j) mismatch[j] += list[j].sym(coord) != sym;
            dfs(coord + 1);
            for (uint32_t j = 0; j < L; ++j) mismatch[j] -= list[j].sym(coord) != sym;
        }
    }
};

}  // namespace

std::pair<Word, uint32_t> optimal_max_center(const ListTuple& list, uint64_t node_budget) {
    MaxCenterSearch search(list, node_budget);
    if (search.n > 0) search.dfs(0);
    return {search.best, search.best_radius};
}

namespace {

// Smallest L distances from x to the code, exact sum, plus the members.
uint64_t closest_sum(const Word& x, const Code& code, uint32_t L,
                     std::vector<uint32_t>* members_out) {
    // distances with original indices; partial selection keeps determinism
    std::vector<std::pair<uint32_t, uint32_t>> d;
    d.reserve(code.size());
    for (uint32_t i = 0; i < code.size(); ++i) d.emplace_back(distance(x, code[i]), i);
    std::partial_sort(d.begin(), d.begin() + L, d.end());
    uint64_t sum = 0;
    for (uint32_t j = 0; j < L; ++j) {
        sum += d[j].first;
        if (members_out) members_out->push_back(d[j].second);
    }
    return sum;
}

struct CenterScanHit {
    uint64_t rank;
    Witness witness;
};

}  // namespace

CheckResult check_by_centers(const DecodabilityQuery& q, const CheckBudgets& budgets) {
    if (q.mode == CheckMode::erasure)
        throw DomainError("center scan applies to max_radius and avg_radius modes");
    const Code& code = q.code;
    auto space = WordEnumerator::space_size(code.n(), code.q());
    if (!space || *space > budgets.center_enum)
        throw ResourceError("center-enumeration", space ? double(*space) : 1e300,
                            double(budgets.center_enum));
    if (code.size() < size_t(q.L)) return {true, std::nullopt, "centers"};

    const uint64_t total = *space;
    const uint32_t L = uint32_t(q.L);
    const uint64_t e = q.radius();
    const uint32_t workers =
        budgets.workers ? budgets.workers : std::min<uint32_t>(default_workers(), 8);
    const uint64_t chunks = std::min<uint64_t>(total, uint64_t(workers) * 8);
    const uint64_t chunk_len = (total + chunks - 1) / chunks;

    std::vector<std::optional<CenterScanHit>> hits(chunks);
    parallel_for(chunks, workers, [&](uint64_t chunk) {
        uint64_t begin = chunk * chunk_len, end = std::min(total, begin + chunk_len);
        if (begin >= end) return;
        // decode the chunk's first center once, then advance in place
        Word cur = WordEnumerator::at(code.n(), code.q(), begin);
        for (uint64_t rank = begin; rank < end; ++rank) {
            if (q.mode == CheckMode::max_radius) {
                uint32_t within = 0;
                for (const auto& c : code) within += distance(cur, c) <= e;
                if (within >= L) {
                    Witness w;
                    w.center = cur;
                    w.mode = q.mode;
                    uint32_t maxd = 0;
                    for (const auto& c : code) {
                        if (w.list.size() < L && distance(cur, c) <= e) {
                            w.list.push_back(c);
                            maxd = std::max(maxd, distance(cur, c));
                        }
                    }
                    w.stat = maxd;
                    hits[chunk] = CenterScanHit{rank, std::move(w)};
                    return;
                }
            } else {
                std::vector<uint32_t> members;
                uint64_t sum = closest_sum(cur, code, L, &members);
                if (sum <= e * L) {
                    Witness w;
                    w.center = cur;
                    w.mode = q.mode;
                    for (uint32_t i : members) w.list.push_back(code[i]);
                    w.stat = sum;
                    hits[chunk] = CenterScanHit{rank, std::move(w)};
                    return;
                }
            }
            // advance cur to the next rank
            for (uint32_t i = 0; i < code.n(); ++i) {
                uint8_t v = cur.sym(i);
                if (v + 1u < code.q()) {
                    cur.set_sym(i, v + 1);
                    break;
                }
                cur.set_sym(i, 0);
            }
        }
    });

    const CenterScanHit* first = nullptr;
    for (const auto& h : hits)
        if (h && (!first || h->rank < first->rank)) first = &*h;
    if (!first) return {true, std::nullopt, "centers"};
    return {false, first->witness, "centers"};
}

namespace {

// DFS over L-subsets with monotone pruning; exact for both modes.
struct SubsetScan {
    const DecodabilityQuery& q;
    const CheckBudgets& budgets;
    const std::vector<std::vector<uint32_t>>& dist;  // pairwise distances
    uint32_t M, L;
    uint64_t e;
    std::vector<uint32_t> chosen;
    uint64_t pair_sum = 0;
    std::optional<Witness> found;

    bool prune_pair(uint32_t a, uint32_t b) const {
        // max mode: no center is within e of two codewords farther than 2e apart
        return q.mode == CheckMode::max_radius && dist[a][b] > 2 * e;
    }

    bool prune_sum() const {
        // avg mode: sum over pairs <= (L-1) * distance sum for any center
        return q.mode == CheckMode::avg_radius && pair_sum > e * uint64_t(L) * (L - 1);
    }

    void dfs(uint32_t next) {
        if (found) return;
        if (chosen.size() == L) {
            std::vector<Word> members;
            members.reserve(L);
            for (uint32_t i : chosen) members.push_back(q.code[i]);
            ListTuple list(std::move(members));
            if (q.mode == CheckMode::max_radius) {
                auto [center, radius] = optimal_max_center(list, budgets.center_search);
                if (radius <= e) {
                    Witness w;
                    w.center = center;
                    w.mode = q.mode;
                    w.list = list.members();
                    w.stat = radius;
                    found = std::move(w);
                }
            } else {
                auto [center, sum] = optimal_avg_center(list);
                if (sum <= e * uint64_t(L)) {
                    Witness w;
                    w.center = center;
                    w.mode = q.mode;
                    w.list = list.members();
                    w.stat = sum;
                    found = std::move(w);
                }
            }
            return;
        }
        uint32_t need = L - uint32_t(chosen.size());
        for (uint32_t i = next; i + need <= M && !found; ++i) {
            bool ok = true;
            uint64_t added = 0;
            for (uint32_t j : chosen) {
                if (prune_pair(j, i)) {
                    ok = false;
                    break;
                }
                added += dist[j][i];
            }
            if (!ok) continue;
            pair_sum += added;
            if (!prune_sum()) {
                chosen.push_back(i);
                dfs(i + 1);
                chosen.pop_back();
            }
            pair_sum -= added;
        }
    }
};

}  // namespace

CheckResult check_by_subsets(const DecodabilityQuery& q, const CheckBudgets& budgets) {
    if (q.mode == CheckMode::erasure)
        throw DomainError("subset scan applies to max_radius and avg_radius modes");
    const uint32_t M = uint32_t(q.code.size());
    if (M < size_t(q.L)) return {true, std::nullopt, "subsets"};
    BigInt count = binomial(M, q.L);
    if (count > BigInt(budgets.subset_enum))
        throw ResourceError("subset-enumeration", count.to_double(),
                            double(budgets.subset_enum));

    std::vector<std::vector<uint32_t>> dist(M, std::vector<uint32_t>(M, 0));
    for (uint32_t i = 0; i < M; ++i)
        for (uint32_t j = i + 1; j < M; ++j)
            dist[i][j] = dist[j][i] = distance(q.code[i], q.code[j]);

    SubsetScan scan{q, budgets, dist, M, uint32_t(q.L), q.radius(), {}, 0, std::nullopt};
    scan.dfs(0);
    if (!scan.found) return {true, std::nullopt, "subsets"};
    return {false, std::move(scan.found), "subsets"};
}

CheckResult check_list_decodable(const DecodabilityQuery& q, const CheckBudgets& budgets) {
    if (q.mode == CheckMode::erasure)
        throw DomainError("use the erasure checker for erasure mode");
    auto space = WordEnumerator::space_size(q.code.n(), q.code.q());
    bool centers_fit = space && *space <= budgets.center_enum;
    bool subsets_fit =
        q.code.size() < size_t(q.L) || binomial(q.code.size(), q.L) <= BigInt(budgets.subset_enum);
    if (!centers_fit && !subsets_fit)
        throw ResourceError("exact-check", space ? double(*space) : 1e300,
                            double(std::max(budgets.center_enum, budgets.subset_enum)));
    if (centers_fit && subsets_fit) {
        CheckResult a = check_by_centers(q, budgets);
        CheckResult b = check_by_subsets(q, budgets);
        if (a.decodable != b.decodable)
            throw std::logic_error("center and subset strategies disagree");
        CheckResult out = std::move(a);
        out.strategy = "centers+subsets";
        return out;
    }
    return centers_fit ? check_by_centers(q, budgets) : check_by_subsets(q, budgets);
}

CheckResult check_erasure_list_decodable(const DecodabilityQuery& q,
                                         const CheckBudgets& budgets) {
    if (q.mode != CheckMode::erasure) throw DomainError("query mode must be erasure");
    const Code& code = q.code;
    const uint32_t s = q.support_size();
    BigInt work = binomial(code.n(), s) * BigInt(code.size());
    if (work > BigInt(budgets.erasure_enum))
        throw ResourceError("erasure-enumeration", work.to_double(),
                            double(budgets.erasure_enum));
    if (code.size() < size_t(q.L)) return {true, std::nullopt, "supports"};

    std::optional<Witness> found;
    for_each_combination(code.n(), s, [&](const std::vector<uint32_t>& positions) {
        IndexSet S = IndexSet::of(code.n(), positions);
        std::unordered_map<Word, std::vector<uint32_t>, WordHash> buckets;
        for (uint32_t i = 0; i < code.size(); ++i)
            buckets[restrict_word(code[i], S)].push_back(i);
        // deterministic: pick the lowest-indexed oversized bucket
        const std::vector<uint32_t>* bad = nullptr;
        for (const auto& [key, members] : buckets)
            if (members.size() >= size_t(q.L) && (!bad || members[0] < (*bad)[0]))
                bad = &members;
        if (bad) {
            Witness w;
            w.center = ErasedWord::reveal(code[(*bad)[0]], S);
            w.mode = CheckMode::erasure;
            for (size_t j = 0; j < size_t(q.L); ++j) w.list.push_back(code[(*bad)[j]]);
            w.stat = bad->size();
            found = std::move(w);
            return false;
        }
        return true;
    });
    if (!found) return {true, std::nullopt, "supports"};
    return {false, std::move(found), "supports"};
}

std::optional<Witness> find_violation(const DecodabilityQuery& q, uint64_t seed,
                                      uint64_t trials) {
    Rng rng(seed);
    const Code& code = q.code;
    const uint32_t n = code.n(), qn = code.q();
    const uint32_t L = uint32_t(q.L);
    if (code.size() < L) return std::nullopt;

    for (uint64_t trial = 0; trial < trials; ++trial) {
        if (q.mode == CheckMode::erasure) {
            IndexSet S = IndexSet::of(n, rng.sample_subset(n, q.support_size()));
            std::unordered_map<Word, std::vector<uint32_t>, WordHash> buckets;
            for (uint32_t i = 0; i < code.size(); ++i)
                buckets[restrict_word(code[i], S)].push_back(i);
            for (const auto& [key, members] : buckets) {
                if (members.size() >= L) {
                    Witness w;
                    w.center = ErasedWord::reveal(code[members[0]], S);
                    w.mode = q.mode;
                    for (size_t j = 0; j < L; ++j) w.list.push_back(code[members[j]]);
                    w.stat = members.size();
                    if (w.reverify(q)) return w;
                }
            }
            continue;
        }

        // half the trials perturb a random codeword, half take a centroid
        // of a random L-subset
        Word center(n, qn);
        if (trial % 2 == 0) {
            center = code[rng.uniform_below(code.size())];
            uint32_t flips = uint32_t(rng.uniform_below(q.radius() + 1));
            auto coords = rng.sample_subset(n, std::min(flips, n));
            for (uint32_t i : coords) {
                uint8_t delta = uint8_t(1 + rng.uniform_below(qn - 1));
                center.set_sym(i, uint8_t((center.sym(i) + delta) % qn));
            }
        } else {
            std::vector<uint32_t> pick = rng.sample_subset(uint32_t(code.size()), L);
            std::vector<Word> members;
            for (uint32_t i : pick) members.push_back(code[i]);
            center = centroid(ListTuple(std::move(members)));
        }

        uint64_t e = q.radius();
        if (q.mode == CheckMode::max_radius) {
            uint32_t within = 0;
            for (const auto& c : code) within += distance(center, c) <= e;
            if (within < L) continue;
            Witness w;
            w.center = center;
            w.mode = q.mode;
            uint32_t maxd = 0;
            for (const auto& c : code)
                if (w.list.size() < L && distance(center, c) <= e) {
                    w.list.push_back(c);
                    maxd = std::max(maxd, distance(center, c));
                }
            w.stat = maxd;
            if (w.reverify(q)) return w;
        } else {
            std::vector<uint32_t> members;
            uint64_t sum = closest_sum(center, code, L, &members);
            if (sum > e * L) continue;
            Witness w;
            w.center = center;
            w.mode = q.mode;
            for (uint32_t i : members) w.list.push_back(code[i]);
            w.stat = sum;
            if (w.reverify(q)) return w;
        }
    }
    return std::nullopt;
}

std::string witness_to_string(const Witness& w) {
    std::string out = "center ";
    if (std::holds_alternative<Word>(w.center))
        out += word_to_string(std::get<Word>(w.center));
    else
        out += erased_word_to_string(std::get<ErasedWord>(w.center));
    out += "\n";
    for (const auto& c : w.list) out += "member " + word_to_string(c) + "\n";
    out += std::string("stat ") + to_string(w.mode) + " " + std::to_string(w.stat) + "\n";
    return out;
}

}  // namespace listlab
