#include "listlab/rational.hpp"

#include <cmath>
#include <utility>

#include "listlab/error.hpp"

namespace listlab {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.find('/', slash + 1) != std::string::npos || s.find('.') != std::string::npos)
            throw DomainError("malformed rational: " + s);
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('.', dot + 1) != std::string::npos)
            throw DomainError("malformed rational: " + s);
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) throw DomainError("malformed rational: " + s);
        std::string intpart = s.substr(0, dot);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (intpart.empty() || intpart == "-" || intpart == "+") intpart += "0";
        BigInt scale = BigInt::pow(BigInt(10), frac.size());
        Rational r(BigInt::from_string(intpart).abs() * scale + BigInt::from_string(frac), scale);
        return neg ? -r : r;
    }
    return Rational(BigInt::from_string(s));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& r) {
    num_ = num_ * r.den_ + r.num_ * den_;
    den_ *= r.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& r) { return *this += -r; }

Rational& Rational::operator*=(const Rational& r) {
    num_ *= r.num_;
    den_ *= r.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& r) {
    if (r.is_zero()) throw DomainError("rational division by zero");
    num_ *= r.den_;
    den_ *= r.num_;
    reduce();
    return *this;
}

int Rational::compare(const Rational& a, const Rational& b) {
    // denominators positive, so cross-multiplication preserves order
    return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
}

Rational Rational::pow(long long exp) const {
    if (exp >= 0)
        return Rational(BigInt::pow(num_, uint64_t(exp)), BigInt::pow(den_, uint64_t(exp)));
    if (is_zero()) throw DomainError("zero to a negative power");
    return Rational(BigInt::pow(den_, uint64_t(-exp)), BigInt::pow(num_, uint64_t(-exp)));
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.is_negative() && !r.is_zero()) q -= BigInt(1);
    return q;
}

BigInt Rational::ceil() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (!num_.is_negative() && !r.is_zero()) q += BigInt(1);
    return q;
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    // scale so the quotient carries ~80 significant bits, then ldexp back
    long long shift = (long long)den_.bit_length() + 80 - (long long)num_.bit_length();
    BigInt scaled = shift >= 0 ? (num_ << size_t(shift)) : (num_ >> size_t(-shift));
    BigInt q = scaled.abs() / den_;
    double v = std::ldexp(q.to_double(), int(-shift));
    return num_.is_negative() ? -v : v;
}

std::string Rational::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

}  // namespace listlab
