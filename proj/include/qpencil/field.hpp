#pragma once

#include "qpencil/matrix.hpp"
#include "qpencil/poly.hpp"

namespace qpencil {

/// The rationals, in the same interface as QuotientField.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_rational(const Rational& r) const { return r; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const;
};

/// Q[t]/(m(t)) for an irreducible m. Elements are UniPoly of degree < deg m.
class QuotientField {
 public:
  using Elem = UniPoly;

  /// Validates irreducibility of `modulus` by factorization; throws NotIrreducible.
  explicit QuotientField(const UniPoly& modulus);

  /// The modulus as a monic rational polynomial.
  const UniPoly& modulus() const noexcept { return modulus_; }
  int degree() const noexcept { return modulus_.degree(); }

  Elem zero() const { return {}; }
  Elem one() const { return UniPoly::constant(1); }
  /// The class of t.
  Elem generator() const { return reduce(UniPoly::variable()); }
  Elem from_rational(const Rational& r) const { return UniPoly::constant(r); }
  Elem reduce(const UniPoly& a) const;
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
  Elem neg(const Elem& a) const { return -a; }
  /// Throws NonInvertible for zero.
  Elem inv(const Elem& a) const;

  friend bool operator==(const QuotientField& a, const QuotientField& b) {
    return a.modulus_ == b.modulus_;
  }

 private:
  UniPoly modulus_;
};

/// Inverse of e in Q[t]/(m).
UniPoly quot_inverse(const UniPoly& e, const QuotientField& field);

}  // namespace qpencil
