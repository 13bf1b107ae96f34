#pragma once

#include "listlab/error.hpp"
#include "listlab/rational.hpp"

namespace listlab {

// Closed-form parameters of the adversarial-center constructions, kept as
// exact rationals so the identities they satisfy can be checked exactly.

// alpha = (lambda - p) / (1 - 2p); satisfies lambda - alpha(1 - 2p) = p
inline Rational attack_alpha(const Rational& p, const Rational& lambda) {
    if (!(Rational(0) < p && p < Rational(1, 2)))
        throw DomainError("p must lie in (0, 1/2)");
    if (!(p < lambda && lambda <= Rational(1, 2)))
        throw DomainError("lambda must lie in (p, 1/2]");
    return (lambda - p) / (Rational(1) - Rational(2) * p);
}

// alpha2 = (lambda - p) / (1/2 - p); satisfies lambda - alpha2/2 = p(1 - alpha2)
inline Rational attack_alpha2(const Rational& p, const Rational& lambda) {
    if (!(Rational(0) < p && p < Rational(1, 2)))
        throw DomainError("p must lie in (0, 1/2)");
    if (!(p < lambda && lambda <= Rational(1, 2)))
        throw DomainError("lambda must lie in (p, 1/2]");
    return (lambda - p) / (Rational(1, 2) - p);
}

// beta = (lambda - p) / (1 - 2p + 2p/L)
inline Rational attack_beta(const Rational& p, const Rational& lambda, long long L) {
    if (L < 1) throw DomainError("list size must be >= 1");
    if (!(Rational(0) < p && p < Rational(1, 2)))
        throw DomainError("p must lie in (0, 1/2)");
    if (!(p < lambda)) throw DomainError("lambda must exceed p");
    Rational den = Rational(1) - Rational(2) * p + Rational(2) * p / Rational(L);
    return (lambda - p) / den;
}

// b = (1/2)(1/2 - p)^2, the exponent scale of the biased-code construction
inline Rational bias_exponent_scale(const Rational& p) {
    Rational half(1, 2);
    return half * (half - p) * (half - p);
}

inline bool alpha_identity_holds(const Rational& p, const Rational& lambda) {
    Rational a = attack_alpha(p, lambda);
    return lambda - a * (Rational(1) - Rational(2) * p) == p;
}

inline bool alpha2_identity_holds(const Rational& p, const Rational& lambda) {
    Rational a2 = attack_alpha2(p, lambda);
    return lambda - a2 / Rational(2) == p * (Rational(1) - a2);
}

}  // namespace listlab
