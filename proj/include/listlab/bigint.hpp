#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

namespace listlab {

// Signed arbitrary-precision integer, sign-magnitude over base-2^32 limbs.
// Schoolbook multiplication and Knuth long division; operand sizes in this
// project stay in the hundreds of bits, so asymptotics do not matter.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(unsigned long long v);
    template <std::signed_integral T>
        requires(!std::same_as<T, long long>)
    BigInt(T v) : BigInt((long long)v) {}
    template <std::unsigned_integral T>
        requires(!std::same_as<T, unsigned long long>)
    BigInt(T v) : BigInt((unsigned long long)v) {}

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator/=(const BigInt& rhs);  // truncated toward zero
    BigInt& operator%=(const BigInt& rhs);  // sign follows dividend

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
    friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

    // quotient truncated toward zero, remainder with dividend's sign
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    BigInt operator<<(size_t bits) const;
    BigInt operator>>(size_t bits) const;  // arithmetic only for non-negatives

    // -1, 0, +1
    static int compare(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, uint64_t exp);

    size_t bit_length() const;  // of the magnitude; 0 for zero
    bool bit(size_t i) const;

    double to_double() const;
    // log2 of the magnitude, computed from the top bits; -inf for zero
    double log2_abs() const;
    long long to_int64() const;  // throws DomainError if out of range
    bool fits_int64() const;
    std::string to_string() const;

  private:
    void trim();
    static int compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);

    bool neg_ = false;
    std::vector<uint32_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace listlab
