#include "qpencil/field.hpp"

#include "qpencil/error.hpp"
#include "qpencil/factor.hpp"
#include "qpencil/linalg.hpp"

namespace qpencil {

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (a == 0) throw Error(Errc::NonInvertible, "inverse of zero");
  return 1 / a;
}

QuotientField::QuotientField(const UniPoly& modulus) {
  if (modulus.degree() < 1) {
    throw Error(Errc::NotIrreducible, "quotient field modulus must have degree >= 1");
  }
  if (!factor_poly(modulus).is_irreducible()) {
    throw Error(Errc::NotIrreducible, modulus.to_string("t") + " is reducible over Q");
  }
  modulus_ = modulus.monic();
}

UniPoly QuotientField::reduce(const UniPoly& a) const {
  if (a.degree() < modulus_.degree()) return a;
  return divmod(a, modulus_).second;
}

UniPoly QuotientField::inv(const Elem& a) const { return quot_inverse(a, *this); }

UniPoly quot_inverse(const UniPoly& e, const QuotientField& field) {
  const UniPoly r = field.reduce(e);
  if (r.is_zero()) throw Error(Errc::NonInvertible, "inverse of zero in Q[t]/(m)");
  const auto eg = extended_gcd(r, field.modulus());
  // m irreducible, so gcd is 1.
  return field.reduce(eg.s);
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square");
  QMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) return Rational(0);
    if (piv != c) {
      a.swap_rows(piv, c);
      det = -det;
    }
    det *= a(c, c);
    const Rational inv = 1 / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square");
  const std::size_t n = m.rows();
  const auto ech = row_reduce(RationalField{}, hstack(m, identity_matrix(n)));
  if (ech.rank() < n || ech.pivot_cols[n - 1] != n - 1) {
    throw Error(Errc::SingularMatrix, "matrix is not invertible");
  }
  return ech.reduced.column_block(n, n);
}

bool solve_linear(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>* x) {
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto ech = row_reduce(RationalField{}, aug);
  std::vector<Rational> sol(m.cols());
  for (std::size_t i = 0; i < ech.rank(); ++i) {
    if (ech.pivot_cols[i] == m.cols()) return false;
    sol[ech.pivot_cols[i]] = ech.reduced(i, m.cols());
  }
  if (x) *x = std::move(sol);
  return true;
}

}  // namespace qpencil
