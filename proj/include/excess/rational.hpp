#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace excess {

// Arbitrary-precision integer and exact rational. mpq_class keeps the
// canonical form (gcd(|num|, den) = 1, den >= 1) through every operation,
// so no rounding can ever occur.
using Int = mpz_class;
using Rational = mpq_class;

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// (2k-1)!! = (2k)!/(2^k k!), with (-1)!! defined as 1.
inline Int double_factorial_odd(long k) {
    if (k < 0) {
        if (k == -1) return Int(1);
        throw std::invalid_argument("double_factorial_odd: k < -1");
    }
    Int r(1);
    for (long j = 3; j <= 2 * k - 1; j += 2) r *= j;
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Decimal string; rationals render as "p/q", integers as "p".
inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

/// True iff v is an integer (denominator 1).
inline bool is_integer(const Rational& v) { return v.get_den() == 1; }

}  // namespace excess
