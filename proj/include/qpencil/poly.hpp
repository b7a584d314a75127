#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpencil/rational.hpp"

namespace qpencil {

/// Univariate polynomial over Q, coefficients stored lowest degree first.
/// The representation is always trimmed: the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient vector).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<long> coeffs);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t degree);
  static UniPoly variable() { return monomial(Rational(1), 1); }
  static UniPoly from_integers(const std::vector<Integer>& coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^k (zero beyond the degree).
  Rational coeff(std::size_t k) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly scaled(const Rational& c) const;

  /// Content-free integer form with positive leading coefficient, and the
  /// rational unit `u` with *this == u * result.
  std::pair<Rational, UniPoly> primitive_part() const;
  /// Same as primitive_part().second, as integers.
  std::vector<Integer> integer_primitive() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws ZeroPolynomial on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// Returns (g, s, t) with s*a + t*b = g = monic gcd.
struct ExtendedGcd {
  UniPoly g, s, t;
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);
UniPoly pow(const UniPoly& base, unsigned exponent);

/// Ordering used for deterministic factor lists: degree, then coefficients
/// lexicographically from the constant term upward.
bool canonical_less(const UniPoly& a, const UniPoly& b);

}  // namespace qpencil
