#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qpencil {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error(InvalidInput).
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer abs(const Integer& value);
Rational abs(const Rational& value);
int sign(const Integer& value);
int sign(const Rational& value);

/// True iff value >= 0 is a perfect square; root written to `root` when non-null.
bool is_perfect_square(const Integer& value, Integer* root = nullptr);
/// True iff value is the square of a rational. Root is non-negative.
bool is_rational_square(const Rational& value, Rational* root = nullptr);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Least common multiple of denominators.
Integer common_denominator(const std::vector<Rational>& values);

/// Scales a rational vector to a primitive integer vector (same projective point).
/// The first nonzero entry is made positive. All-zero input yields all zeros.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& values);

}  // namespace qpencil
