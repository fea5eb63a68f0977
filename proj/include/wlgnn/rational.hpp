#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wlgnn {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator by GMP.
using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "num/den" or "num"; throws ParameterError on malformed text or a zero
// denominator.
Rational parse_rational(std::string_view text);

// Formats as "num/den" (denominator always present).
std::string format_rational(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_ratio(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational relu(const Rational& x) { return sgn(x) > 0 ? x : Rational(0); }

// Smallest integer >= q.
BigInt ceil_of(const Rational& q);

// Number of bits needed for |z| (0 for z == 0).
std::size_t bit_length(const BigInt& z);

}  // namespace wlgnn
