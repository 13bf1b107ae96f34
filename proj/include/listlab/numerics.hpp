#pragma once

#include <cstdint>
#include <vector>

#include "listlab/rational.hpp"

namespace listlab {

// C(n, k); 0 when k < 0 or k > n. Thread-safe memo behind the call.
BigInt binomial(long long n, long long k);

// Generalized binomial C(z, k) = z(z-1)...(z-k+1)/k! for rational z, k >= 0.
Rational binomial_rational(const Rational& z, uint32_t k);

struct HyperParams {
    long long n = 0, m = 0, s = 0;
};

// Pr[T = t] for T hypergeometric(n, m, s): C(m,t) C(n-m,s-t) / C(n,s).
// Total function: 0 when n < max(m, s), t > min(m, s), t < 0, or s-t > n-m.
Rational hyper_pmf(const HyperParams& p, long long t);

// Upper tail: sum of hyper_pmf(p, t) over t >= tau (exact).
Rational hyper_tail(const HyperParams& p, long long tau);

// Exact |B_q(center, r)| / q^n = sum_{i<=r} C(n,i)(q-1)^i / q^n.
Rational ball_fraction(uint32_t q, uint32_t n, uint32_t r);
BigInt ball_size(uint32_t q, uint32_t n, uint32_t r);

// Upper-tail mass of the marked-sample count for a list-membership rule:
// sum_{w=min_weight}^{beta_n} pmf(lambda_n, lambda_n - twice_delta_n/2, beta_n; w).
// twice_delta_n must be even (equal-weight binary words have even distance).
Rational list_inclusion_mass(long long lambda_n, long long twice_delta_n, long long beta_n,
                             long long min_weight);

// Entropy in base q: -z log_q z - (1-z) log_q(1-z) + z log_q(q-1).
// The 0 log 0 terms vanish by continuity. Domain error outside [0, 1].
double entropy(double z, uint32_t q = 2);

// Exact check of C(n, k) <= 2^(h(k/n) n). With z = k/n the right side is
// n^n / (k^k (n-k)^(n-k)), so the inequality is pure integer arithmetic.
bool entropy_upper_bound_holds(uint32_t n, uint32_t k);

// h(k/n) - (1/n) log2 C(n, k): the nonnegative defect of the bound above.
double entropy_bound_gap(uint32_t n, uint32_t k);

// Exact check of |B_q(0, e)| / q^n <= q^((h_q(e/n) - 1) n), again integral:
// |B| e^e (n-e)^(n-e) <= (q-1)^e n^n.
bool ball_upper_bound_holds(uint32_t q, uint32_t n, uint32_t e);

// (h_q(e/n) - 1) - (1/n) log_q(|B|/q^n), the nonnegative defect.
double ball_bound_gap(uint32_t q, uint32_t n, uint32_t e);

// ---- high-precision comparison support ----------------------------------
//
// Inequality sweeps evaluate in double first; when two sides land within
// 1e-9 of each other the comparison is redone in fixed point with >= 64
// fractional bits so rounding can never report a false violation.

// floor(log2(x) * 2^frac_bits) up to +-1 ulp at the stated precision; x > 0
BigInt fixed_log2(const Rational& x, uint32_t frac_bits);

// floor(ln(2) * 2^frac_bits)
BigInt fixed_ln2(uint32_t frac_bits);

// Value of the form  sum_i c_i * log2(r_i)  +  c_e * log2(e)  +  c_0
// with rational c_i, r_i > 0. Covers every closed form swept in this
// project (entropies and their polynomial envelopes).
class LogLinear {
  public:
    LogLinear() = default;
    explicit LogLinear(const Rational& constant) : constant_(constant) {}

    LogLinear& add_log(const Rational& coeff, const Rational& arg);  // arg > 0
    LogLinear& add_log2e(const Rational& coeff);
    LogLinear& add_const(const Rational& c);
    LogLinear& add_scaled(const Rational& coeff, const LogLinear& other);

    // c * h_2(z) as a log-linear form (z rational in [0,1])
    static LogLinear entropy2(const Rational& z);

    double to_double() const;
    // mantissa of the value at 2^-frac_bits resolution (error < #terms ulp)
    BigInt to_fixed(uint32_t frac_bits) const;

    // sign of (a - b) decided in double when safely away from zero, in
    // fixed point otherwise; |a-b| below 2^-(frac_bits-16) counts as zero
    static int compare(const LogLinear& a, const LogLinear& b, uint32_t frac_bits = 96);

  private:
    std::vector<std::pair<Rational, Rational>> logs_;  // (coeff, arg)
    Rational e_coeff_;
    Rational constant_;
};

}  // namespace listlab
