#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "listlab/numerics.hpp"

namespace listlab {

// Inputs of the closed-form rate/list-size evaluators. Fields are exact
// rationals; only evaluation happens in floating point.
struct BoundParams {
    Rational p;           // error fraction in (0, 1/2)
    long long L = 1;      // list size
    Rational lambda;      // weight fraction in (p, 1/2] where used
    Rational gamma;       // gap to capacity, > 0 where used
    uint32_t q = 2;       // alphabet size
    Rational eps;         // slack >= 0
};

struct BoundReport {
    std::string bound_id;
    BoundParams inputs;
    double lhs = 0.0, rhs = 0.0;  // equal for single-valued bounds
    bool satisfied = true;
    double margin = 0.0;  // rhs - lhs
    std::map<std::string, double> aux;  // named derived quantities
};

// Evaluate one closed-form bound. Known ids:
//   thm10_lower      rate 1 - h(p) - 1/L - eps achievable on average radius
//   thm11_upper      weight lambda* = p + p^3(1-2p)^2/(12L) and rate cap
//                    h(lambda*) - h(p) - p^4(1-2p)^2/(48 L^2)
//   thm15_zero_rate  at lambda = p + p^L/2, size cap 2L^2/p
//   thm15_rate       rate cap 1 - h(p) - (1-2p) p^L / 4
//   thm16_zero_rate  at lambda = p + p^L/(2L), size cap 2L^2/lambda
//   thm18_params     bias construction parameters: b, eps, lambda cap, rate
//   lemma19_interval two-sided bound on the weight-restricted rate
// Unknown ids and parameter-region violations raise DomainError naming the
// violated precondition.
BoundReport rate_bound(const std::string& bound_id, const BoundParams& params);

// One point of an inequality sweep. Grid coordinates are multiples of the
// sweep step; value(coord) = coord * step.
struct SweepPoint {
    int64_t p_mult = 0, lambda_mult = 0, z_mult = 0, eps_mult = 0;
    double lhs = 0.0, rhs = 0.0, margin = 0.0;
    bool satisfied = true;
    const char* skipped = nullptr;  // reason, when hypotheses exclude the point
};

struct SweepOptions {
    Rational step{1, 1000};
    Rational p_lo{1, 20};
    Rational p_hi{9, 20};
    Rational lambda_hi{1, 2};
    double tolerance = 1e-12;
    uint32_t workers = 0;  // 0 = automatic; forced to 1 when a sink is given
};

struct SweepStats {
    uint64_t points = 0;
    uint64_t violations = 0;
    uint64_t skipped = 0;
    double min_margin = 0.0;
    SweepPoint tightest;  // point achieving min_margin
};

using SweepSink = std::function<void(const SweepPoint&)>;

// Sweep one analytic inequality over its admissible grid. Known ids:
//   fact23     h(lambda) - h(p) >= (1-2p)(lambda-p)/2
//   fact24     z log(1/z) + (log e)(z - z^2) <= h(z) <= z log(1/z) + (log e) z
//   lemma25    A1 <= (1-2p)(h(lambda)-h(p))/(lambda-p) + 5(lambda-p)/p
//   lemma26    A1 b + A2 b^2 <= h(lambda)-h(p) - (p/2) e (lambda-p)
//                              + 3 (lambda-p)^2 / (p^2 (1-2p)^2)
// where A1 = (1-p) log((1-p)/lambda) + p log(p/(1-lambda)), A2 = 2/p^2,
// and b = (lambda-p)/(1-2p+2pe). Near-tie points are re-decided in fixed
// point so rounding never reports a false violation.
SweepStats sweep_inequality(const std::string& fact_id, const SweepOptions& opt,
                            const SweepSink* sink = nullptr);

// Exact expectation E[2^-X] for X hypergeometric(n, (1-p)n, pn), and its
// per-coordinate exponent. Requires pn integral.
struct DecayRow {
    uint32_t n = 0;
    Rational expectation;
    double exponent = 0.0;   // (1/n) log2 of the expectation
    double threshold = 0.0;  // -p(1-p)/8
    bool below_threshold = false;
};

Rational overlap_decay_expectation(uint32_t n, const Rational& p);
// Ladder of exponents across n; reports the first n whose exponent falls
// below the threshold (0 when none does).
struct DecayLadder {
    std::vector<DecayRow> rows;
    bool monotone_decreasing = true;
    uint32_t first_n_below = 0;
};
DecayLadder overlap_decay_ladder(const Rational& p, const std::vector<uint32_t>& n_ladder);

// Var / E^2 capped at 1; the probability that a nonnegative variable with
// this mean and variance vanishes. Mean must be positive.
Rational chebyshev_failure_bound(const Rational& mean, const Rational& variance);

}  // namespace listlab
