#include "listlab/fact_checks.hpp"

#include <cmath>

#include "listlab/bounds.hpp"
#include "listlab/hamming.hpp"
#include "listlab/numerics.hpp"
#include "listlab/rng.hpp"

namespace listlab {

FactCheckResult check_interchange(uint32_t n_max) {
    FactCheckResult out;
    out.fact_id = "fact7";
    for (long long n = 1; n <= n_max; ++n)
        for (long long m = 0; m <= n; ++m)
            for (long long s = 0; s <= m; ++s)  // symmetry covers s > m
                for (long long t = -1; t <= std::min(m, s) + 1; ++t) {
                    ++out.points;
                    if (hyper_pmf({n, m, s}, t) != hyper_pmf({n, s, m}, t)) ++out.violations;
                }
    return out;
}

FactCheckResult check_dominance(uint32_t n_max) {
    FactCheckResult out;
    out.fact_id = "fact8";
    for (long long n = 1; n <= n_max; ++n) {
        for (long long s = 0; s <= n; ++s) {
            // suffix[m][tau] = sum_{t >= tau} C(m,t) C(n-m,s-t), all over the
            // common denominator C(n,s); int64 is safe through n = 30
            std::vector<std::vector<long long>> suffix(size_t(n + 1));
            for (long long m = 0; m <= n; ++m) {
                std::vector<long long> terms(size_t(s + 2), 0);
                for (long long t = 0; t <= s; ++t)
                    terms[size_t(t)] =
                        (binomial(m, t) * binomial(n - m, s - t)).to_int64();
                std::vector<long long> suf(size_t(s + 2), 0);
                for (long long t = s; t >= 0; --t)
                    suf[size_t(t)] = suf[size_t(t + 1)] + terms[size_t(t)];
                suffix[size_t(m)] = std::move(suf);
            }
            for (long long m = 0; m <= n; ++m)
                for (long long mp = 0; mp <= m; ++mp)
                    for (long long tau = 0; tau <= s + 1; ++tau) {
                        ++out.points;
                        if (suffix[size_t(m)][size_t(tau)] < suffix[size_t(mp)][size_t(tau)])
                            ++out.violations;
                    }
        }
    }
    return out;
}

FactCheckResult check_pmf_normalization(uint32_t n_max) {
    FactCheckResult out;
    out.fact_id = "pmf_normalization";
    for (long long n = 1; n <= n_max; ++n)
        for (long long m = 0; m <= n; ++m)
            for (long long s = 0; s <= n; ++s) {
                ++out.points;
                BigInt total(0);
                for (long long t = 0; t <= std::min(m, s); ++t)
                    total += binomial(m, t) * binomial(n - m, s - t);
                if (total != binomial(n, s)) ++out.violations;
            }
    return out;
}

FactCheckResult check_entropy_binomial_bounds(uint32_t n_max,
                                              const std::vector<uint32_t>& ladder) {
    FactCheckResult out;
    out.fact_id = "fact9";
    out.has_margin = true;
    out.min_margin = 1e300;
    for (uint32_t n = 1; n <= n_max; ++n)
        for (uint32_t k = 0; k <= n; ++k) {
            ++out.points;
            if (!entropy_upper_bound_holds(n, k)) ++out.violations;
            if (k > 0 && k < n) {
                double gap = entropy_bound_gap(n, k);
                out.min_margin = std::min(out.min_margin, gap);
                if (gap < 0) ++out.violations;
            }
        }
    // gap decreasing in n at fixed ratio k/n, over dyadic ratios
    for (uint32_t den : {2u, 4u, 8u}) {
        double prev = 1e300;
        for (uint32_t n : ladder) {
            if (n % den) continue;
            ++out.points;
            double gap = entropy_bound_gap(n, n / den);
            if (gap >= prev) ++out.violations;
            prev = gap;
        }
    }
    return out;
}

FactCheckResult check_ball_volume_bounds(const std::vector<uint32_t>& qs, uint32_t n_max,
                                         const std::vector<uint32_t>& ladder) {
    FactCheckResult out;
    out.fact_id = "fact27";
    out.has_margin = true;
    out.min_margin = 1e300;
    for (uint32_t q : qs) {
        for (uint32_t n = 1; n <= n_max; ++n) {
            // the bound needs e/n <= 1 - 1/q (radius below the covering point)
            uint32_t e_max = n * (q - 1) / q;
            for (uint32_t e = 0; e <= e_max; ++e) {
                ++out.points;
                if (!ball_upper_bound_holds(q, n, e)) ++out.violations;
                if (e > 0 && e < n) {
                    double gap = ball_bound_gap(q, n, e);
                    out.min_margin = std::min(out.min_margin, gap);
                    if (gap < 0) ++out.violations;
                }
            }
        }
        for (uint32_t den : {2u, 4u}) {
            double prev = 1e300;
            for (uint32_t n : ladder) {
                if (n % den) continue;
                ++out.points;
                double gap = ball_bound_gap(q, n, n / den);
                if (gap >= prev) ++out.violations;
                prev = gap;
            }
        }
    }
    return out;
}

FactCheckResult check_centroid_optimality(uint64_t trials, uint64_t seed,
                                          uint64_t space_budget) {
    FactCheckResult out;
    out.fact_id = "fact2";
    Rng rng(seed);
    for (uint64_t trial = 0; trial < trials; ++trial) {
        uint32_t q = 2 + uint32_t(rng.uniform_below(3));
        uint32_t n_cap = 1;
        while (WordEnumerator::space_size(n_cap + 1, q) &&
               *WordEnumerator::space_size(n_cap + 1, q) <= space_budget)
            ++n_cap;
        uint32_t n = 1 + uint32_t(rng.uniform_below(n_cap));
        uint64_t space = *WordEnumerator::space_size(n, q);
        uint32_t L = uint32_t(std::min<uint64_t>(1 + rng.uniform_below(8), space));
        std::vector<Word> members;
        while (members.size() < L) {
            Word w(n, q);
            for (uint32_t i = 0; i < n; ++i) w.set_sym(i, uint8_t(rng.uniform_below(q)));
            bool dup = false;
            for (const auto& m : members) dup = dup || m == w;
            if (!dup) members.push_back(w);
        }
        ListTuple list(std::move(members));
        uint64_t centroid_sum = dist_stats(centroid(list), list).second;
        uint64_t best = ~uint64_t(0);
        for_each_word(n, q, [&](const Word& x) {
            best = std::min(best, dist_stats(x, list).second);
            return true;
        });
        ++out.points;
        if (centroid_sum != best) ++out.violations;
    }
    return out;
}

FactCheckResult check_overlap_decay(const Rational& p, const std::vector<uint32_t>& ladder) {
    FactCheckResult out;
    out.fact_id = "lemma30_exact";
    DecayLadder result = overlap_decay_ladder(p, ladder);
    out.points = result.rows.size();
    if (!result.monotone_decreasing) ++out.violations;
    out.note = result.first_n_below
                   ? "exponent falls below -p(1-p)/8 from n = " +
                         std::to_string(result.first_n_below)
                   : "exponent stays above -p(1-p)/8 on this ladder";
    return out;
}

}  // namespace listlab
