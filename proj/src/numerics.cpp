#include "listlab/numerics.hpp"

#include <cmath>
#include <mutex>

#include "listlab/error.hpp"

namespace listlab {

namespace {
// Pascal rows, grown on demand under a lock; reads copy the value out so
// concurrent callers see identical results with or without the memo.
std::mutex g_binom_mutex;
std::vector<std::vector<BigInt>> g_binom_rows;
}  // namespace

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    if (k == 0 || k == n) return BigInt(1);
    std::lock_guard<std::mutex> lock(g_binom_mutex);
    while ((long long)g_binom_rows.size() <= n) {
        size_t r = g_binom_rows.size();
        std::vector<BigInt> row(r + 1, BigInt(1));
        for (size_t j = 1; j < r; ++j) row[j] = g_binom_rows[r - 1][j - 1] + g_binom_rows[r - 1][j];
        g_binom_rows.push_back(std::move(row));
    }
    return g_binom_rows[size_t(n)][size_t(k)];
}

Rational binomial_rational(const Rational& z, uint32_t k) {
    Rational num(1);
    for (uint32_t j = 0; j < k; ++j) num *= z - Rational((long long)j);
    BigInt fact(1);
    for (uint32_t j = 2; j <= k; ++j) fact *= BigInt((long long)j);
    return num / Rational(fact);
}

Rational hyper_pmf(const HyperParams& p, long long t) {
    if (p.n < p.m || p.n < p.s) return Rational(0);
    if (t < 0 || t > p.m || t > p.s || p.s - t > p.n - p.m) return Rational(0);
    return Rational(binomial(p.m, t) * binomial(p.n - p.m, p.s - t), binomial(p.n, p.s));
}

Rational hyper_tail(const HyperParams& p, long long tau) {
    if (p.n < p.m || p.n < p.s) return Rational(0);
    long long hi = std::min(p.m, p.s);
    long long lo = std::max(tau, std::max<long long>(0, p.s - (p.n - p.m)));
    BigInt num(0);
    for (long long t = lo; t <= hi; ++t) num += binomial(p.m, t) * binomial(p.n - p.m, p.s - t);
    return Rational(num, binomial(p.n, p.s));
}

BigInt ball_size(uint32_t q, uint32_t n, uint32_t r) {
    if (r > n) throw DomainError("ball radius exceeds length");
    BigInt total(0), qm1_pow(1);
    for (uint32_t i = 0; i <= r; ++i) {
        total += binomial(n, i) * qm1_pow;
        qm1_pow *= BigInt((long long)(q - 1));
    }
    return total;
}

Rational ball_fraction(uint32_t q, uint32_t n, uint32_t r) {
    return Rational(ball_size(q, n, r), BigInt::pow(BigInt((long long)q), n));
}

Rational list_inclusion_mass(long long lambda_n, long long twice_delta_n, long long beta_n,
                             long long min_weight) {
    if (twice_delta_n % 2 != 0) throw DomainError("distance between equal-weight words must be even");
    HyperParams p{lambda_n, lambda_n - twice_delta_n / 2, beta_n};
    // upper summation limit beta_n is implicit: the pmf vanishes above min(m, s)
    return hyper_tail(p, std::max<long long>(min_weight, 0));
}

double entropy(double z, uint32_t q) {
    if (q < 2) throw DomainError("entropy base must be >= 2");
    if (z < 0.0 || z > 1.0) throw DomainError("entropy argument outside [0, 1]");
    double lq = std::log2(double(q));
    double h = 0.0;
    if (z > 0.0) h -= z * std::log2(z) / lq;
    if (z < 1.0) h -= (1.0 - z) * std::log2(1.0 - z) / lq;
    if (q > 2) h += z * std::log2(double(q - 1)) / lq;
    return h;
}

namespace {
// k^k with 0^0 = 1
BigInt self_power(uint32_t k) { return k == 0 ? BigInt(1) : BigInt::pow(BigInt(k), k); }
}  // namespace

bool entropy_upper_bound_holds(uint32_t n, uint32_t k) {
    if (k > n) throw DomainError("k exceeds n");
    BigInt lhs = binomial(n, k) * self_power(k) * self_power(n - k);
    return lhs <= self_power(n);
}

double entropy_bound_gap(uint32_t n, uint32_t k) {
    return entropy(double(k) / double(n)) - binomial(n, k).log2_abs() / double(n);
}

bool ball_upper_bound_holds(uint32_t q, uint32_t n, uint32_t e) {
    if (e > n) throw DomainError("radius exceeds length");
    BigInt lhs = ball_size(q, n, e) * self_power(e) * self_power(n - e);
    return lhs <= BigInt::pow(BigInt((long long)(q - 1)), e) * self_power(n);
}

double ball_bound_gap(uint32_t q, uint32_t n, uint32_t e) {
    double lq = std::log2(double(q));
    double hq = entropy(double(e) / double(n), q);
    double log_mu = (ball_size(q, n, e).log2_abs() - double(n) * lq) / lq;
    return (hq - 1.0) - log_mu / double(n);
}

// log2 by repeated squaring of the normalized mantissa. Work precision is
// wide enough that truncation noise stays far below the requested bits.
BigInt fixed_log2(const Rational& x, uint32_t frac_bits) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive value");
    const uint32_t steps = frac_bits + 8;
    const uint32_t W = 2 * (frac_bits + 8) + 32;

    // integer exponent e with 1 <= x / 2^e < 2
    long long e = (long long)x.num().bit_length() - (long long)x.den().bit_length();
    // m = floor(x * 2^(W - e)), then adjust so 2^W <= m < 2^(W+1)
    BigInt m;
    {
        long long sh = (long long)W - e;
        BigInt num = sh >= 0 ? (x.num() << size_t(sh)) : (x.num() >> size_t(-sh));
        m = num / x.den();
    }
    BigInt one = BigInt(1) << W;
    while (m < one) {
        m = m << 1;
        --e;
    }
    while (m >= (one << 1)) {
        m = m >> 1;
        ++e;
    }

    BigInt frac(0);
    for (uint32_t i = 0; i < steps; ++i) {
        m = (m * m) >> W;
        frac = frac << 1;
        if (m >= (one << 1)) {
            m = m >> 1;
            frac += BigInt(1);
        }
    }
    // value = e + frac / 2^steps, rendered at frac_bits
    BigInt result = (BigInt(e) << steps) + frac;
    return result >> (steps - frac_bits);
}

BigInt fixed_ln2(uint32_t frac_bits) {
    // ln 2 = 2 atanh(1/3); partial sums converge by a factor 9 per term
    uint32_t terms = frac_bits / 3 + 8;
    Rational sum(0);
    Rational term(2, 3);
    Rational ninth(1, 9);
    for (uint32_t k = 0; k < terms; ++k) {
        sum += term / Rational((long long)(2 * k + 1));
        term *= ninth;
    }
    return (Rational(BigInt(1) << frac_bits) * sum).floor();
}

LogLinear& LogLinear::add_log(const Rational& coeff, const Rational& arg) {
    if (arg.sign() <= 0) throw DomainError("log-linear term with non-positive argument");
    if (!coeff.is_zero() && arg != Rational(1)) logs_.emplace_back(coeff, arg);
    return *this;
}

LogLinear& LogLinear::add_log2e(const Rational& coeff) {
    e_coeff_ += coeff;
    return *this;
}

LogLinear& LogLinear::add_const(const Rational& c) {
    constant_ += c;
    return *this;
}

LogLinear& LogLinear::add_scaled(const Rational& coeff, const LogLinear& other) {
    if (coeff.is_zero()) return *this;
    for (const auto& [c, r] : other.logs_) logs_.emplace_back(coeff * c, r);
    e_coeff_ += coeff * other.e_coeff_;
    constant_ += coeff * other.constant_;
    return *this;
}

LogLinear LogLinear::entropy2(const Rational& z) {
    if (z.sign() < 0 || z > Rational(1)) throw DomainError("entropy argument outside [0, 1]");
    LogLinear h;
    if (z.sign() > 0) h.add_log(-z, z);
    Rational zc = Rational(1) - z;
    if (zc.sign() > 0) h.add_log(-zc, zc);
    return h;
}

double LogLinear::to_double() const {
    double v = constant_.to_double();
    for (const auto& [c, r] : logs_) v += c.to_double() * (r.num().log2_abs() - r.den().log2_abs());
    v += e_coeff_.to_double() * 1.4426950408889634;  // log2(e)
    return v;
}

BigInt LogLinear::to_fixed(uint32_t frac_bits) const {
    const BigInt scale = BigInt(1) << frac_bits;
    BigInt acc = (constant_ * Rational(scale)).floor();
    for (const auto& [c, r] : logs_) {
        BigInt lg = fixed_log2(r, frac_bits);
        acc += (c * Rational(lg)).floor();
    }
    if (!e_coeff_.is_zero()) {
        // log2(e) = 1 / ln 2
        BigInt log2e = (scale * scale) / fixed_ln2(frac_bits);
        acc += (e_coeff_ * Rational(log2e)).floor();
    }
    return acc;
}

int LogLinear::compare(const LogLinear& a, const LogLinear& b, uint32_t frac_bits) {
    double da = a.to_double(), db = b.to_double();
    if (std::abs(da - db) >= 1e-9) return da < db ? -1 : 1;
    BigInt fa = a.to_fixed(frac_bits), fb = b.to_fixed(frac_bits);
    BigInt diff = fa - fb;
    // mantissa slack of 2^16 ulp = value 2^-(frac_bits-16), far above the
    // accumulated per-term floor error and far below any true margin
    BigInt eps = BigInt(1) << 16;
    if (diff > eps) return 1;
    if (diff < -eps) return -1;
    return 0;
}

}  // namespace listlab
