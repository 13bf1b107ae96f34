#include "listlab/random_codes.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "listlab/parallel.hpp"

namespace listlab {

const char* to_string(CodeKind kind) { return kind == CodeKind::general ? "general" : "linear"; }
const char* to_string(ChannelMode mode) { return mode == ChannelMode::error ? "error" : "erasure"; }

bool is_prime(uint32_t v) {
    if (v < 2) return false;
    for (uint32_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

std::vector<uint8_t> CodeTable::message_digits(uint64_t rank) const {
    std::vector<uint8_t> digits(k);
    for (uint32_t i = 0; i < k; ++i) {
        digits[i] = uint8_t(rank % q);
        rank /= q;
    }
    return digits;
}

Code CodeTable::image_code() const {
    Code code(n, q);
    for (const auto& w : images) {
        try {
            code.add(w);
        } catch (const ShapeError&) {  // collision
        }
    }
    return code;
}

bool CodeTable::injective() const { return image_code().size() == images.size(); }

namespace {

uint64_t checked_message_space(const RandomCodeSpec& spec, const WitnessBudgets& budgets) {
    auto space = WordEnumerator::space_size(spec.k, spec.q);
    if (!space || *space > budgets.message_space)
        throw ResourceError("message-space", space ? double(*space) : 1e300,
                            double(budgets.message_space));
    return *space;
}

Word add_mod_q(const Word& a, const Word& b) {
    Word r(a.n(), a.q());
    if (a.q() == 2) return subtract_mod_q(a, b);  // addition = subtraction mod 2
    for (uint32_t i = 0; i < a.n(); ++i)
        r.set_sym(i, uint8_t((a.sym(i) + b.sym(i)) % a.q()));
    return r;
}

Word scale_mod_q(const Word& a, uint32_t scalar) {
    Word r(a.n(), a.q());
    for (uint32_t i = 0; i < a.n(); ++i)
        r.set_sym(i, uint8_t((uint64_t(a.sym(i)) * scalar) % a.q()));
    return r;
}

Word random_word(Rng& rng, uint32_t n, uint32_t q) {
    Word w(n, q);
    for (uint32_t i = 0; i < n; ++i) w.set_sym(i, uint8_t(rng.uniform_below(q)));
    return w;
}

}  // namespace

CodeTable sample_general_code(const RandomCodeSpec& spec, uint64_t trial_index,
                              const WitnessBudgets& budgets) {
    if (spec.kind != CodeKind::general) throw DomainError("spec kind must be general");
    uint64_t space = checked_message_space(spec, budgets);
    Rng rng(derive_seed(spec.master_seed, trial_index));
    CodeTable table{spec.q, spec.k, spec.n, spec.kind, {}};
    table.images.reserve(space);
    for (uint64_t i = 0; i < space; ++i) table.images.push_back(random_word(rng, spec.n, spec.q));
    return table;
}

CodeTable sample_linear_code(const RandomCodeSpec& spec, uint64_t trial_index,
                             const WitnessBudgets& budgets) {
    if (spec.kind != CodeKind::linear) throw DomainError("spec kind must be linear");
    if (!is_prime(spec.q)) throw DomainError("linear codes require a prime alphabet");
    uint64_t space = checked_message_space(spec, budgets);
    Rng rng(derive_seed(spec.master_seed, trial_index));

    std::vector<Word> basis;
    for (uint32_t i = 0; i < spec.k; ++i) basis.push_back(random_word(rng, spec.n, spec.q));
    // digit * basis-row products, reused across messages
    std::vector<std::vector<Word>> mult(spec.k);
    for (uint32_t i = 0; i < spec.k; ++i)
        for (uint32_t d = 0; d < spec.q; ++d) mult[i].push_back(scale_mod_q(basis[i], d));

    CodeTable table{spec.q, spec.k, spec.n, spec.kind, {}};
    table.images.reserve(space);
    for (uint64_t rank = 0; rank < space; ++rank) {
        Word img(spec.n, spec.q);
        uint64_t rest = rank;
        for (uint32_t i = 0; i < spec.k && rest; ++i) {
            uint32_t d = uint32_t(rest % spec.q);
            rest /= spec.q;
            if (d) img = add_mod_q(img, mult[i][d]);
        }
        table.images.push_back(std::move(img));
    }
    return table;
}

CodeTable sample_code(const RandomCodeSpec& spec, uint64_t trial_index,
                      const WitnessBudgets& budgets) {
    return spec.kind == CodeKind::general ? sample_general_code(spec, trial_index, budgets)
                                          : sample_linear_code(spec, trial_index, budgets);
}

namespace {

// Incremental linear-independence bookkeeping over F_q, prime q.
struct Eliminator {
    uint32_t q;
    std::vector<std::vector<uint8_t>> rows;  // echelon, pivot = leading nonzero
    std::vector<uint32_t> pivots;

    static uint32_t inverse_mod(uint32_t a, uint32_t q) {
        // q prime: a^(q-2) mod q
        uint64_t result = 1, base = a % q;
        for (uint32_t e = q - 2; e; e >>= 1, base = base * base % q)
            if (e & 1) result = result * base % q;
        return uint32_t(result);
    }

    // reduce v by the current rows; true (and absorbed) if independent
    bool try_add(std::vector<uint8_t> v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            uint32_t c = v[pivots[r]];
            if (c == 0) continue;
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = uint8_t((v[j] + (q - c) * uint64_t(rows[r][j])) % q);
        }
        size_t pivot = v.size();
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j]) {
                pivot = j;
                break;
            }
        if (pivot == v.size()) return false;
        uint32_t inv = inverse_mod(v[pivot], q);
        for (auto& x : v) x = uint8_t(uint64_t(x) * inv % q);
        rows.push_back(std::move(v));
        pivots.push_back(uint32_t(pivot));
        return true;
    }

    void pop() {
        rows.pop_back();
        pivots.pop_back();
    }
};

// ordered tuples of L distinct messages: m (m-1) ... (m-L+1)
BigInt falling_factorial(uint64_t m, long long L) {
    BigInt out(1);
    for (long long i = 0; i < L; ++i) {
        if ((long long)m <= i) return BigInt(0);
        out *= BigInt(m - uint64_t(i));
    }
    return out;
}

// ordered linearly independent L-tuples drawn from the given messages
BigInt count_independent_tuples(const CodeTable& table, const std::vector<uint64_t>& ranks,
                                long long L) {
    BigInt total(0);
    Eliminator elim{table.q, {}, {}};
    std::function<void(long long)> dfs = [&](long long depth) {
        if (depth == L) {
            total += BigInt(1);
            return;
        }
        for (uint64_t r : ranks) {
            if (!elim.try_add(table.message_digits(r))) continue;
            dfs(depth + 1);
            elim.pop();
        }
    };
    dfs(0);
    return total;
}

}  // namespace

WitnessStats count_witnesses(const CodeTable& table, ChannelMode mode, const Rational& p,
                             long long L, const WitnessBudgets& budgets) {
    if (!(p > Rational(0) && p < Rational(1))) throw DomainError("p must lie in (0, 1)");
    if (L < 1) throw DomainError("list size must be >= 1");
    const bool independent = table.kind == CodeKind::linear;
    WitnessStats stats{BigInt(0), mode, L, 0, independent};

    if (mode == ChannelMode::error) {
        uint32_t e = uint32_t((p * Rational(table.n)).floor().to_int64());
        stats.e_or_s = e;
        auto centers = WordEnumerator::space_size(table.n, table.q);
        double tuples = falling_factorial(table.messages(), L).to_double();
        if (!centers || double(*centers) * tuples > budgets.error_work)
            throw ResourceError("error-witness-enumeration",
                                centers ? double(*centers) * tuples : 1e300,
                                budgets.error_work);
        WordEnumerator en(table.n, table.q);
        std::vector<uint64_t> inside;
        do {
            inside.clear();
            for (uint64_t r = 0; r < table.messages(); ++r)
                if (distance(en.current(), table.images[r]) <= e) inside.push_back(r);
            if ((long long)inside.size() < L) continue;
            stats.W += independent ? count_independent_tuples(table, inside, L)
                                   : falling_factorial(inside.size(), L);
        } while (en.advance());
        return stats;
    }

    // erasure: bucket restrictions per support, no center enumeration
    uint32_t s = uint32_t(((Rational(1) - p) * Rational(table.n)).ceil().to_int64());
    stats.e_or_s = s;
    double work = binomial(table.n, s).to_double() * double(table.messages());
    if (work > budgets.erasure_work)
        throw ResourceError("erasure-witness-enumeration", work, budgets.erasure_work);
    for_each_combination(table.n, s, [&](const std::vector<uint32_t>& positions) {
        IndexSet S = IndexSet::of(table.n, positions);
        std::unordered_map<Word, std::vector<uint64_t>, WordHash> buckets;
        for (uint64_t r = 0; r < table.messages(); ++r)
            buckets[restrict_word(table.images[r], S)].push_back(r);
        for (const auto& [key, members] : buckets) {
            if ((long long)members.size() < L) continue;
            stats.W += independent ? count_independent_tuples(table, members, L)
                                   : falling_factorial(members.size(), L);
        }
        return true;
    });
    return stats;
}

Rational exact_expected_W(const RandomCodeSpec& spec, ChannelMode mode, const Rational& p,
                          long long L) {
    if (!(p > Rational(0) && p < Rational(1))) throw DomainError("p must lie in (0, 1)");
    BigInt qk = BigInt::pow(BigInt(spec.q), spec.k);
    Rational n_x(1);
    if (spec.kind == CodeKind::general) {
        for (long long i = 0; i < L; ++i) {
            BigInt factor = qk - BigInt(i);
            if (factor.sign() <= 0) return Rational(0);
            n_x *= Rational(factor);
        }
    } else {
        if (!is_prime(spec.q)) throw DomainError("linear codes require a prime alphabet");
        for (long long i = 0; i < L; ++i) {
            BigInt factor = qk - BigInt::pow(BigInt(spec.q), uint64_t(i));
            if (factor.sign() <= 0) return Rational(0);
            n_x *= Rational(factor);
        }
    }
    if (mode == ChannelMode::error) {
        uint32_t e = uint32_t((p * Rational(spec.n)).floor().to_int64());
        Rational mu = ball_fraction(spec.q, spec.n, e);
        return n_x * Rational(BigInt::pow(BigInt(spec.q), spec.n)) * mu.pow(L);
    }
    uint32_t s = uint32_t(((Rational(1) - p) * Rational(spec.n)).ceil().to_int64());
    Rational agree = Rational(BigInt(1), BigInt::pow(BigInt(spec.q), s));
    return n_x * Rational(binomial(spec.n, s)) * Rational(BigInt::pow(BigInt(spec.q), s)) *
           agree.pow(L);
}

void for_each_code_table(uint32_t q, uint32_t k, uint32_t n,
                         const std::function<void(const CodeTable&)>& fn) {
    auto msgs = WordEnumerator::space_size(k, q);
    auto imgs = WordEnumerator::space_size(n, q);
    if (!msgs || !imgs) throw ResourceError("table-enumeration", 1e300, 0);
    // precompute the image alphabet once
    std::vector<Word> alphabet;
    alphabet.reserve(*imgs);
    for_each_word(n, q, [&](const Word& w) {
        alphabet.push_back(w);
        return true;
    });
    CodeTable table{q, k, n, CodeKind::general, {}};
    table.images.assign(*msgs, alphabet[0]);
    std::vector<uint64_t> odometer(*msgs, 0);
    for (;;) {
        fn(table);
        size_t i = 0;
        for (; i < odometer.size(); ++i) {
            if (++odometer[i] < *imgs) {
                table.images[i] = alphabet[odometer[i]];
                break;
            }
            odometer[i] = 0;
            table.images[i] = alphabet[0];
        }
        if (i == odometer.size()) return;
    }
}

std::pair<uint32_t, double> dimension_for_gap(uint32_t q, uint32_t n, const Rational& p,
                                              const Rational& gamma, ChannelMode mode) {
    double realized_base;
    long long k;
    if (mode == ChannelMode::error) {
        double target = 1.0 - entropy(p.to_double(), q) - gamma.to_double();
        k = (long long)std::ceil(target * double(n) - 1e-12);
        realized_base = 1.0 - entropy(p.to_double(), q);
    } else {
        Rational target = (Rational(1) - p - gamma) * Rational(n);
        k = target.ceil().to_int64();
        realized_base = 1.0 - p.to_double();
    }
    if (k < 1) k = 1;
    if (k > (long long)n) k = n;
    double gamma_realized = realized_base - double(k) / double(n);
    return {uint32_t(k), gamma_realized};
}

McReport mc_campaign(const McConfig& config) {
    McConfig cfg = config;
    McReport rep;
    if (cfg.gamma) {
        auto [k, realized] = dimension_for_gap(cfg.spec.q, cfg.spec.n, cfg.p, *cfg.gamma, cfg.mode);
        cfg.spec.k = k;
        rep.gamma_realized = realized;
        rep.gamma_requested = cfg.gamma;
    } else {
        double base = cfg.mode == ChannelMode::error
                          ? 1.0 - entropy(cfg.p.to_double(), cfg.spec.q)
                          : 1.0 - cfg.p.to_double();
        rep.gamma_realized = base - double(cfg.spec.k) / double(cfg.spec.n);
    }
    rep.spec = cfg.spec;
    rep.mode = cfg.mode;
    rep.p = cfg.p;
    rep.L = cfg.L;
    rep.trials = cfg.trials;
    rep.e_or_s = cfg.mode == ChannelMode::error
                     ? uint32_t((cfg.p * Rational(cfg.spec.n)).floor().to_int64())
                     : uint32_t(((Rational(1) - cfg.p) * Rational(cfg.spec.n)).ceil().to_int64());
    rep.exact_EW = exact_expected_W(cfg.spec, cfg.mode, cfg.p, cfg.L);
    if (cfg.trials == 0) return rep;  // degenerate: no trials, no division anywhere

    std::vector<BigInt> w_per_trial(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](uint64_t t) {
        CodeTable table = sample_code(cfg.spec, t, cfg.budgets);
        w_per_trial[t] = count_witnesses(table, cfg.mode, cfg.p, cfg.L, cfg.budgets).W;
    });

    BigInt sum(0), sum_sq(0);
    uint64_t zeros = 0;
    for (const auto& w : w_per_trial) {
        sum += w;
        sum_sq += w * w;
        zeros += w.is_zero();
    }
    rep.zero_trials = zeros;
    Rational t_count((long long)cfg.trials);
    rep.mean_W = Rational(sum) / t_count;
    if (cfg.trials >= 2)
        rep.var_W = (Rational(sum_sq) - Rational(sum * sum) / t_count) /
                    Rational((long long)cfg.trials - 1);

    double phat = double(zeros) / double(cfg.trials);
    double z = cfg.confidence_z, nn = double(cfg.trials);
    double denom = 1.0 + z * z / nn;
    double center = (phat + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nn + z * z / (4 * nn * nn)) / denom;
    rep.pr_w0 = phat;
    rep.pr_w0_lo = std::max(0.0, center - half);
    rep.pr_w0_hi = std::min(1.0, center + half);
    if (rep.exact_EW > Rational(0)) {
        Rational bound = rep.var_W / (rep.exact_EW * rep.exact_EW);
        rep.chebyshev_bound = bound > Rational(1) ? Rational(1) : bound;
    }
    return rep;
}

ListSizeSweep sweep_list_size(const McConfig& base, long long L_max) {
    ListSizeSweep out;
    for (long long L = 1; L <= L_max; ++L) {
        McConfig cfg = base;
        cfg.L = L;
        McReport rep = mc_campaign(cfg);
        double violating = rep.trials ? 1.0 - double(rep.zero_trials) / double(rep.trials) : 0.0;
        out.violating_fraction.emplace_back(L, violating);
        if (violating > 0.5) out.max_persistent_L = L;
        out.reports.push_back(std::move(rep));
    }
    return out;
}

uint64_t affine_closure(const std::vector<Word>& words, const ErasedWord& a,
                        bool check_independent) {
    if (words.empty()) throw DomainError("empty word list");
    const uint32_t q = words[0].q(), n = words[0].n();
    if (!is_prime(q)) throw DomainError("affine closure requires a prime alphabet");
    if (a.n() != n || a.q() != q) throw ShapeError("erased word shape mismatch");
    for (const auto& w : words) {
        if (w.n() != n || w.q() != q) throw ShapeError("word shape mismatch");
        if (!agrees(a, w)) throw DomainError("every input word must agree with a");
    }
    const size_t L = words.size();
    if (check_independent) {
        Eliminator elim{q, {}, {}};
        for (const auto& w : words) {
            std::vector<uint8_t> v(n);
            for (uint32_t i = 0; i < n; ++i) v[i] = w.sym(i);
            if (!elim.try_add(std::move(v)))
                throw DomainError("input words are not linearly independent");
        }
    }

    // enumerate coefficient tuples with theta_1 = 1 - sum(theta_2..theta_L)
    std::unordered_map<Word, bool, WordHash> combos;
    std::vector<uint32_t> theta(L, 0);
    uint64_t free_count = 1;
    for (size_t i = 1; i < L; ++i) free_count *= q;
    for (uint64_t rank = 0; rank < free_count; ++rank) {
        uint64_t rest = rank;
        uint32_t tail_sum = 0;
        for (size_t i = 1; i < L; ++i) {
            theta[i] = uint32_t(rest % q);
            rest /= q;
            tail_sum = (tail_sum + theta[i]) % q;
        }
        theta[0] = (q + 1 - tail_sum % q) % q;
        Word combo(n, q);
        for (size_t i = 0; i < L; ++i)
            if (theta[i]) combo = add_mod_q(combo, scale_mod_q(words[i], theta[i]));
        combos[combo] = true;
    }
    uint64_t agreeing = 0;
    for (const auto& [w, _] : combos) agreeing += agrees(a, w) ? 1 : 0;
    if (check_independent) {
        uint64_t expected = 1;
        for (size_t i = 1; i < L; ++i) expected *= q;
        if (agreeing != expected)
            throw std::logic_error("independent inputs must close to q^(L-1) combinations");
    }
    return agreeing;
}

BallSumEstimate ball_sum_estimate(uint32_t q, const Rational& p, uint32_t n, uint32_t m,
                                  uint64_t trials, uint64_t seed, double confidence_z) {
    if (m < 1) throw DomainError("need at least one summand");
    uint32_t e = uint32_t((p * Rational(n)).floor().to_int64());
    BigInt ball = ball_size(q, n, e);
    if (!ball.fits_int64())
        throw ResourceError("ball-sampler", ball.to_double(), 9.2e18);
    uint64_t ball_points = uint64_t(ball.to_int64());
    // cumulative radius-shell sizes for exact radius sampling
    std::vector<uint64_t> cum;
    BigInt acc(0), qm1(int64_t(q) - 1), shell_scale(1);
    for (uint32_t r = 0; r <= e; ++r) {
        acc += binomial(n, r) * shell_scale;
        shell_scale *= qm1;
        cum.push_back(uint64_t(acc.to_int64()));
    }

    Rng rng(seed);
    auto sample_ball_point = [&]() {
        uint64_t u = rng.uniform_below(ball_points);
        uint32_t radius = uint32_t(std::lower_bound(cum.begin(), cum.end(), u + 1) - cum.begin());
        Word w(n, q);
        for (uint32_t i : rng.sample_subset(n, radius))
            w.set_sym(i, uint8_t(1 + rng.uniform_below(q - 1)));
        return w;
    };

    BallSumEstimate est;
    est.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        Word sum(n, q);
        for (uint32_t i = 0; i < m; ++i) sum = add_mod_q(sum, sample_ball_point());
        est.hits += sum.weight() <= e;
    }
    if (trials == 0) return est;
    double phat = double(est.hits) / double(trials);
    double z = confidence_z, nn = double(trials);
    double denom = 1.0 + z * z / nn;
    double center = (phat + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nn + z * z / (4 * nn * nn)) / denom;
    est.p_hat = phat;
    est.lo = std::max(0.0, center - half);
    est.hi = std::min(1.0, center + half);
    if (phat > 0.0) est.slope = -std::log2(phat) / (std::log2(double(q)) * double(n));
    return est;
}

}  // namespace listlab
