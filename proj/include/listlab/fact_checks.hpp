#pragma once

#include <string>
#include <vector>

#include "listlab/rational.hpp"

namespace listlab {

// One row of the invariant suite: how many points were checked, how many
// violated, and the tightest margin seen (when margins make sense).
struct FactCheckResult {
    std::string fact_id;
    uint64_t points = 0;
    uint64_t violations = 0;
    uint64_t skipped = 0;
    double min_margin = 0.0;
    bool has_margin = false;
    std::string note;

    bool ok() const { return violations == 0; }
};

// f(n,m,s,t) = f(n,s,m,t) as exact rationals, all n <= n_max, all m, s, t.
FactCheckResult check_interchange(uint32_t n_max);

// Upper tails are monotone in the marked count: exact, all n <= n_max,
// all s, all pairs m >= m', all thresholds.
FactCheckResult check_dominance(uint32_t n_max);

// The pmf sums to exactly 1 whenever n >= max(m, s).
FactCheckResult check_pmf_normalization(uint32_t n_max);

// C(n,k) <= 2^(h(k/n)n) exactly for all n <= n_max; the gap decreases
// along a doubling ladder at fixed k/n.
FactCheckResult check_entropy_binomial_bounds(uint32_t n_max,
                                              const std::vector<uint32_t>& ladder);

// |B|/q^n <= q^((h_q - 1)n) exactly for q in qs, n <= n_max; gap decreasing
// along the ladder at fixed e/n.
FactCheckResult check_ball_volume_bounds(const std::vector<uint32_t>& qs, uint32_t n_max,
                                         const std::vector<uint32_t>& ladder);

// Random lists: the centroid's distance sum equals the exhaustive minimum
// over all q^n centers. space_budget caps q^n.
FactCheckResult check_centroid_optimality(uint64_t trials, uint64_t seed,
                                          uint64_t space_budget);

// The exact overlap-decay exponent ladder is monotone decreasing and
// eventually sits below -p(1-p)/8.
FactCheckResult check_overlap_decay(const Rational& p, const std::vector<uint32_t>& ladder);

}  // namespace listlab
