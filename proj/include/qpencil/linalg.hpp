#pragma once

#include <cstddef>
#include <vector>

#include "qpencil/field.hpp"
#include "qpencil/matrix.hpp"

namespace qpencil {

enum class PivotOrder {
  Natural,   ///< columns left to right, first nonzero row
  Reversed,  ///< columns right to left, last nonzero row
};

template <class Field>
struct Echelon {
  Matrix<typename Field::Elem> reduced;  ///< fully reduced row echelon form
  std::vector<std::size_t> pivot_cols;   ///< pivot column of row i, i < rank
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination with exact arithmetic over `field`.
template <class Field>
Echelon<Field> row_reduce(const Field& field, Matrix<typename Field::Elem> m,
                          PivotOrder order = PivotOrder::Natural) {
  Echelon<Field> out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t step = 0; step < cols && r < rows; ++step) {
    const std::size_t c = order == PivotOrder::Natural ? step : cols - 1 - step;
    std::size_t piv = rows;
    if (order == PivotOrder::Natural) {
      for (std::size_t i = r; i < rows; ++i) {
        if (!field.is_zero(m(i, c))) {
          piv = i;
          break;
        }
      }
    } else {
      for (std::size_t i = rows; i-- > r;) {
        if (!field.is_zero(m(i, c))) {
          piv = i;
          break;
        }
      }
    }
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    const auto inv = field.inv(m(r, c));
    for (std::size_t j = 0; j < cols; ++j) m(r, j) = field.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) {
        if (field.is_zero(m(r, j))) continue;
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(r, j)));
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Field>
std::size_t matrix_rank(const Field& field, const Matrix<typename Field::Elem>& m,
                        PivotOrder order = PivotOrder::Natural) {
  return row_reduce(field, m, order).rank();
}

inline std::size_t matrix_rank(const QMatrix& m, PivotOrder order = PivotOrder::Natural) {
  return matrix_rank(RationalField{}, m, order);
}

/// Basis of {x : m x = 0} as the columns of the returned matrix (cols - rank columns).
template <class Field>
Matrix<typename Field::Elem> kernel_basis(const Field& field,
                                          const Matrix<typename Field::Elem>& m) {
  const auto ech = row_reduce(field, m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  Matrix<typename Field::Elem> basis(cols, cols - ech.rank(), field.zero());
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = field.one();
    for (std::size_t i = 0; i < ech.rank(); ++i) {
      basis(ech.pivot_cols[i], k) = field.neg(ech.reduced(i, free));
    }
    ++k;
  }
  return basis;
}

inline QMatrix kernel_basis(const QMatrix& m) { return kernel_basis(RationalField{}, m); }

/// Determinant over Q by elimination.
Rational determinant(const QMatrix& m);
/// Inverse over Q; throws SingularMatrix.
QMatrix inverse(const QMatrix& m);
/// Solves m x = b for one x (any solution); returns false if inconsistent.
bool solve_linear(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>* x);

/// Matrix product over a generic field.
template <class Field>
Matrix<typename Field::Elem> multiply(const Field& field, const Matrix<typename Field::Elem>& a,
                                      const Matrix<typename Field::Elem>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product");
  Matrix<typename Field::Elem> c(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = field.add(c(i, j), field.mul(a(i, k), b(k, j)));
    }
  return c;
}

/// Lifts a rational matrix into a field.
template <class Field>
Matrix<typename Field::Elem> lift_matrix(const Field& field, const QMatrix& m) {
  Matrix<typename Field::Elem> out(m.rows(), m.cols(), field.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = field.from_rational(m(i, j));
  return out;
}

}  // namespace qpencil
