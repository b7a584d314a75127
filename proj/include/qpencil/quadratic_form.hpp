#pragma once

#include <string>
#include <vector>

#include "qpencil/field.hpp"
#include "qpencil/matrix.hpp"

namespace qpencil {

/// Quadratic form F(x) = x^T A x with A symmetric over Q. Off-diagonal entries
/// of A are half the cross coefficients.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  /// Throws DimensionMismatch for non-square or InvalidArgument for asymmetric input.
  explicit QuadraticForm(QMatrix gram);

  static QuadraticForm zero(std::size_t dim);
  static QuadraticForm diagonal(const std::vector<Rational>& entries);
  /// coeffs(i, j) for i <= j is the coefficient of x_i x_j; entries below the
  /// diagonal are ignored.
  static QuadraticForm from_coefficients(const QMatrix& coeffs);

  std::size_t dim() const noexcept { return gram_.rows(); }
  const QMatrix& gram() const noexcept { return gram_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }
  bool is_zero() const;

  Rational evaluate(const std::vector<Rational>& x) const;
  Rational evaluate(const std::vector<Integer>& x) const;
  /// Polar form x^T A y.
  Rational bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  /// 2 A x.
  std::vector<Rational> gradient(const std::vector<Rational>& x) const;
  /// Coefficient of x_i x_j in the polynomial (i <= j).
  Rational coefficient(std::size_t i, std::size_t j) const;

  QuadraticForm scaled(const Rational& c) const;
  friend QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b);
  friend QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b);
  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.gram_ == b.gram_;
  }

  std::string to_string() const;

 private:
  QMatrix gram_;
};

/// Linear subspace of Q^ambient given by an explicit basis (matrix columns).
class LinearSubspace {
 public:
  LinearSubspace() = default;
  /// Throws InvalidArgument if the columns are dependent.
  LinearSubspace(std::size_t ambient_dim, QMatrix basis);

  static LinearSubspace zero(std::size_t ambient_dim);
  static LinearSubspace coordinate_span(std::size_t ambient_dim,
                                        const std::vector<std::size_t>& indices);
  /// {x : normal . x = 0}.
  static LinearSubspace hyperplane(const std::vector<Rational>& normal);
  static LinearSubspace from_vectors(const std::vector<std::vector<Rational>>& vectors);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const QMatrix& basis() const noexcept { return basis_; }
  bool contains(const std::vector<Rational>& v) const;

 private:
  std::size_t ambient_ = 0;
  QMatrix basis_;
};

/// Point of P^n(Q) as a primitive integer vector with first nonzero entry positive.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(const std::vector<Integer>& coords);
  explicit ProjectivePoint(const std::vector<Rational>& coords);
  ProjectivePoint(std::initializer_list<long> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<Integer>& coords() const noexcept { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  std::vector<Rational> to_rationals() const;
  /// max |x_i|
  Integer height() const;

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ < b.coords_;
  }

  std::string to_string() const;

 private:
  std::vector<Integer> coords_;
};

std::size_t form_rank(const QuadraticForm& f);
/// Rank of the Gram matrix over the quotient field (entries lifted into it).
std::size_t form_rank(const QuadraticForm& f, const QuotientField& field);
/// Gram matrix restricted to the subspace: B^T A B. Throws DimensionMismatch.
QuadraticForm restrict_form(const QuadraticForm& f, const LinearSubspace& s);
/// Same, for an arbitrary (not necessarily independent) column matrix.
QuadraticForm restrict_form(const QuadraticForm& f, const QMatrix& columns);
/// M^T A M. Throws SingularMatrix for non-invertible M.
QuadraticForm change_coordinates(const QuadraticForm& f, const QMatrix& m);
LinearSubspace radical_subspace(const QuadraticForm& f);
/// Kernel basis (as columns) of a Gram matrix with entries in the quotient field.
Matrix<UniPoly> radical_subspace(const Matrix<UniPoly>& gram, const QuotientField& field);

struct ValueAndGradient {
  Rational value;
  std::vector<Rational> gradient;
};
ValueAndGradient evaluate_and_gradient(const QuadraticForm& f, const ProjectivePoint& p);

/// Gram matrix of F + lambda G with lambda an element of the field.
Matrix<UniPoly> member_matrix(const QuotientField& field, const QuadraticForm& f,
                              const QuadraticForm& g, const UniPoly& lambda);

/// Congruence diagonalization: basis^T A basis = diag(entries), basis invertible.
struct Diagonalization {
  std::vector<Rational> entries;
  QMatrix basis;
};
Diagonalization diagonalize(const QuadraticForm& f);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  bool definite() const { return zero == 0 && (positive == 0 || negative == 0); }
};
Signature signature(const QuadraticForm& f);

}  // namespace qpencil
