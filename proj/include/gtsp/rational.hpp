#pragma once

#include <gmpxx.h>

#include <string>

namespace gtsp {

/// Exact rational. GMP keeps it canonical (reduced, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Rational sandwich around sqrt(2): kLow <= sqrt(2) <= kHigh.
inline Rational sqrt2_low() { return Rational(14142135, 10000000); }
inline Rational sqrt2_high() { return Rational(14142136, 10000000); }

inline Rational floor_q(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

inline Rational ceil_q(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

/// Decimal rendering with a fixed number of fractional digits (truncated).
std::string to_decimal(const Rational& q, int digits);

}  // namespace gtsp
