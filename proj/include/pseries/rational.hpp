#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace pseries {

// Exact rational coefficients. GMP keeps results of arithmetic canonical
// (reduced, positive denominator); only raw (num, den) construction needs an
// explicit canonicalize, which rational() below performs.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned n) {
    Rational r = 1;
    Rational b = base;
    while (n > 0) {
        if (n & 1u) r *= b;
        b *= b;
        n >>= 1u;
    }
    return r;
}

}  // namespace pseries
