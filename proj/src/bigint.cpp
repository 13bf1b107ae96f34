#include "listlab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "listlab/error.hpp"

namespace listlab {

BigInt::BigInt(long long v) {
    neg_ = v < 0;
    unsigned long long m = neg_ ? ~(unsigned long long)v + 1ULL : (unsigned long long)v;
    while (m) {
        limbs_.push_back(uint32_t(m));
        m >>= 32;
    }
}

BigInt::BigInt(unsigned long long v) {
    while (v) {
        limbs_.push_back(uint32_t(v));
        v >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i >= s.size()) throw DomainError("empty integer literal");
    BigInt r;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw DomainError("bad digit in integer literal: " + s);
        r *= BigInt(10);
        r += BigInt(int(s[i] - '0'));
    }
    if (neg && !r.is_zero()) r.neg_ = true;
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

int BigInt::compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        r[i] = uint32_t(s);
        carry = s >> 32;
    }
    r[hi.size()] = uint32_t(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = int64_t(a[i]) - (i < b.size() ? int64_t(b[i]) : 0) - borrow;
        borrow = s < 0;
        if (s < 0) s += (int64_t(1) << 32);
        r[i] = uint32_t(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t s = ai * b[j] + r[i + j] + carry;
            r[i + j] = uint32_t(s);
            carry = s >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t s = uint64_t(r[k]) + carry;
            r[k++] = uint32_t(s);
            carry = s >> 32;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Knuth algorithm D on normalized limbs.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (b.empty()) throw DomainError("division by zero");
    if (compare_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = uint32_t(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(uint32_t(rem));
        return;
    }

    int shift = __builtin_clz(b.back());
    size_t n = b.size(), m = a.size() - n;
    // normalized divisor and dividend (dividend gains one limb)
    std::vector<uint32_t> v(n), u(a.size() + 1, 0);
    for (size_t i = n; i-- > 0;)
        v[i] = (b[i] << shift) | (shift && i ? uint32_t(uint64_t(b[i - 1]) >> (32 - shift)) : 0);
    for (size_t i = a.size(); i-- > 0;)
        u[i] = (a[i] << shift) | (shift && i ? uint32_t(uint64_t(a[i - 1]) >> (32 - shift)) : 0);
    if (shift) u[a.size()] = uint32_t(uint64_t(a.back()) >> (32 - shift));

    q.assign(m + 1, 0);
    const uint64_t base = uint64_t(1) << 32;
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t top = (uint64_t(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = top / v[n - 1];
        uint64_t rhat = top % v[n - 1];
        while (qhat >= base ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= base) break;
        }
        // u[j..j+n] -= qhat * v
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = int64_t(u[i + j]) - int64_t(uint32_t(p)) - borrow;
            borrow = t < 0;
            if (t < 0) t += int64_t(base);
            u[i + j] = uint32_t(t);
        }
        int64_t t = int64_t(u[j + n]) - int64_t(carry) - borrow;
        if (t < 0) {
            // qhat was one too large; add back
            t += int64_t(base);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = uint64_t(u[i + j]) + v[i] + c2;
                u[i + j] = uint32_t(s);
                c2 = s >> 32;
            }
            t += int64_t(c2);
            t &= int64_t(base) - 1;
        }
        u[j + n] = uint32_t(t);
        q[j] = uint32_t(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    // denormalize remainder
    r.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        r[i] = (u[i] >> shift) | (shift && i + 1 < u.size() ? uint32_t(uint64_t(u[i + 1]) << (32 - shift)) : 0);
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (neg_ == rhs.neg_) {
        limbs_ = add_mag(limbs_, rhs.limbs_);
    } else {
        int c = compare_mag(limbs_, rhs.limbs_);
        if (c == 0) {
            limbs_.clear();
            neg_ = false;
        } else if (c > 0) {
            limbs_ = sub_mag(limbs_, rhs.limbs_);
        } else {
            limbs_ = sub_mag(rhs.limbs_, limbs_);
            neg_ = rhs.neg_;
        }
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
    neg_ = neg_ != rhs.neg_;
    limbs_ = mul_mag(limbs_, rhs.limbs_);
    trim();
    return *this;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    q.neg_ = a.neg_ != b.neg_;
    q.trim();
    r.limbs_ = std::move(rm);
    r.neg_ = a.neg_;
    r.trim();
}

BigInt& BigInt::operator/=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(q);
}

BigInt& BigInt::operator%=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(r);
}

BigInt BigInt::operator<<(size_t bits) const {
    if (is_zero() || bits == 0) {
        BigInt r = *this;
        return r;
    }
    size_t limb_shift = bits / 32, bit_shift = bits % 32;
    BigInt r;
    r.neg_ = neg_;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t v = uint64_t(limbs_[i]) << bit_shift;
        r.limbs_[i + limb_shift] |= uint32_t(v);
        r.limbs_[i + limb_shift + 1] |= uint32_t(v >> 32);
    }
    r.trim();
    return r;
}

BigInt BigInt::operator>>(size_t bits) const {
    size_t limb_shift = bits / 32, bit_shift = bits % 32;
    if (limb_shift >= limbs_.size()) return BigInt();
    BigInt r;
    r.neg_ = neg_;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        uint64_t v = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            v |= uint64_t(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
        r.limbs_[i] = uint32_t(v);
    }
    r.trim();
    return r;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c = compare_mag(a.limbs_, b.limbs_);
    return a.neg_ ? -c : c;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, uint64_t exp) {
    BigInt r(1), b = base;
    while (exp) {
        if (exp & 1) r *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return r;
}

size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - __builtin_clz(limbs_.back()));
}

bool BigInt::bit(size_t i) const {
    size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1;
}

double BigInt::to_double() const {
    if (is_zero()) return 0.0;
    size_t bl = bit_length();
    // take top <=64 bits, then scale
    double m = 0.0;
    size_t start = bl > 64 ? bl - 64 : 0;
    for (size_t i = bl; i-- > start;) m = m * 2.0 + (bit(i) ? 1.0 : 0.0);
    double v = std::ldexp(m, int(start));
    return neg_ ? -v : v;
}

double BigInt::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    size_t bl = bit_length();
    double m = 0.0;
    size_t start = bl > 64 ? bl - 64 : 0;
    for (size_t i = bl; i-- > start;) m = m * 2.0 + (bit(i) ? 1.0 : 0.0);
    return std::log2(m) + double(start);
}

bool BigInt::fits_int64() const {
    size_t bl = bit_length();
    if (bl < 64) return true;
    // -2^63 exactly
    return bl == 64 && neg_ && (*this == BigInt(std::numeric_limits<long long>::min()));
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw DomainError("BigInt does not fit in int64: " + to_string());
    unsigned long long m = 0;
    for (size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    return neg_ ? -(long long)m : (long long)m;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
        uint64_t rem = 0;
        for (size_t i = mag.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | mag[i];
            mag[i] = uint32_t(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(char('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (neg_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

}  // namespace listlab
