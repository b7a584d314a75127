#include "qpencil/quadratic_form.hpp"

#include <sstream>

#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"

namespace qpencil {

QuadraticForm::QuadraticForm(QMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0) {
    throw Error(Errc::DimensionMismatch, "Gram matrix must be square and non-empty");
  }
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (gram_(i, j) != gram_(j, i)) {
        throw Error(Errc::InvalidArgument, "Gram matrix is not symmetric at (" + std::to_string(i) +
                                               "," + std::to_string(j) + ")");
      }
}

QuadraticForm QuadraticForm::zero(std::size_t dim) { return QuadraticForm(QMatrix(dim, dim)); }

QuadraticForm QuadraticForm::diagonal(const std::vector<Rational>& entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return QuadraticForm(std::move(m));
}

QuadraticForm QuadraticForm::from_coefficients(const QMatrix& coeffs) {
  const std::size_t n = coeffs.rows();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = coeffs(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = coeffs(i, j) / 2;
      m(j, i) = m(i, j);
    }
  }
  return QuadraticForm(std::move(m));
}

bool QuadraticForm::is_zero() const {
  for (const auto& x : gram_.data())
    if (x != 0) return false;
  return true;
}

Rational QuadraticForm::evaluate(const std::vector<Rational>& x) const { return bilinear(x, x); }

Rational QuadraticForm::evaluate(const std::vector<Integer>& x) const {
  return evaluate(std::vector<Rational>(x.begin(), x.end()));
}

Rational QuadraticForm::bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(Errc::DimensionMismatch, "evaluate");
  Rational acc = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < dim(); ++j) row += gram_(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

std::vector<Rational> QuadraticForm::gradient(const std::vector<Rational>& x) const {
  if (x.size() != dim()) throw Error(Errc::DimensionMismatch, "gradient");
  std::vector<Rational> g = gram_ * x;
  for (auto& v : g) v *= 2;
  return g;
}

Rational QuadraticForm::coefficient(std::size_t i, std::size_t j) const {
  return i == j ? gram_(i, i) : gram_(i, j) * 2;
}

QuadraticForm QuadraticForm::scaled(const Rational& c) const {
  QMatrix m = gram_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
  return QuadraticForm(std::move(m));
}

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "form sum");
  QMatrix m = a.gram_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += b.gram_(i, j);
  return QuadraticForm(std::move(m));
}

QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b) {
  return a + b.scaled(Rational(-1));
}

std::string QuadraticForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      const Rational c = coefficient(i, j);
      if (c == 0) continue;
      os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      const Rational mag = qpencil::abs(c);
      if (mag != 1) os << qpencil::to_string(mag) << "*";
      if (i == j) {
        os << "x" << i << "^2";
      } else {
        os << "x" << i << "*x" << j;
      }
    }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

LinearSubspace::LinearSubspace(std::size_t ambient_dim, QMatrix basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.cols() > 0 && basis_.rows() != ambient_) {
    throw Error(Errc::DimensionMismatch, "basis vectors must live in the ambient space");
  }
  if (basis_.cols() == 0) basis_ = QMatrix(ambient_, 0);
  if (matrix_rank(basis_) != basis_.cols()) {
    throw Error(Errc::InvalidArgument, "subspace basis is linearly dependent");
  }
}

LinearSubspace LinearSubspace::zero(std::size_t ambient_dim) {
  return LinearSubspace(ambient_dim, QMatrix(ambient_dim, 0));
}

LinearSubspace LinearSubspace::coordinate_span(std::size_t ambient_dim,
                                               const std::vector<std::size_t>& indices) {
  QMatrix b(ambient_dim, indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) b(indices[k], k) = 1;
  return LinearSubspace(ambient_dim, std::move(b));
}

LinearSubspace LinearSubspace::hyperplane(const std::vector<Rational>& normal) {
  QMatrix row(1, normal.size());
  for (std::size_t j = 0; j < normal.size(); ++j) row(0, j) = normal[j];
  return LinearSubspace(normal.size(), kernel_basis(row));
}

LinearSubspace LinearSubspace::from_vectors(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) throw Error(Errc::InvalidArgument, "empty vector list");
  return LinearSubspace(vectors.front().size(),
                        QMatrix::from_columns(vectors, vectors.front().size()));
}

bool LinearSubspace::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) return false;
  QMatrix m = basis_;
  QMatrix col(ambient_, 1);
  for (std::size_t i = 0; i < ambient_; ++i) col(i, 0) = v[i];
  return matrix_rank(hstack(m, col)) == dim();
}

// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(const std::vector<Integer>& coords)
    : ProjectivePoint(std::vector<Rational>(coords.begin(), coords.end())) {}

ProjectivePoint::ProjectivePoint(const std::vector<Rational>& coords) {
  coords_ = primitive_integer_vector(coords);
  bool any = false;
  for (const auto& c : coords_) any = any || c != 0;
  if (!any) throw Error(Errc::InvalidArgument, "projective point with all coordinates zero");
}

ProjectivePoint::ProjectivePoint(std::initializer_list<long> coords)
    : ProjectivePoint(std::vector<Rational>(coords.begin(), coords.end())) {}

std::vector<Rational> ProjectivePoint::to_rationals() const {
  return std::vector<Rational>(coords_.begin(), coords_.end());
}

Integer ProjectivePoint::height() const {
  Integer h = 0;
  for (const auto& c : coords_) {
    Integer a = qpencil::abs(c);
    if (a > h) h = a;
  }
  return h;
}

std::string ProjectivePoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

std::size_t form_rank(const QuadraticForm& f) { return matrix_rank(f.gram()); }

std::size_t form_rank(const QuadraticForm& f, const QuotientField& field) {
  return matrix_rank(field, lift_matrix(field, f.gram()));
}

QuadraticForm restrict_form(const QuadraticForm& f, const QMatrix& columns) {
  if (columns.rows() != f.dim()) throw Error(Errc::DimensionMismatch, "restriction basis");
  return QuadraticForm(columns.transpose() * f.gram() * columns);
}

QuadraticForm restrict_form(const QuadraticForm& f, const LinearSubspace& s) {
  if (s.ambient_dim() != f.dim()) {
    throw Error(Errc::DimensionMismatch, "subspace ambient dimension differs from form dimension");
  }
  if (s.dim() == 0) throw Error(Errc::DimensionMismatch, "restriction to the zero subspace");
  return restrict_form(f, s.basis());
}

QuadraticForm change_coordinates(const QuadraticForm& f, const QMatrix& m) {
  if (m.rows() != f.dim() || m.cols() != f.dim()) {
    throw Error(Errc::DimensionMismatch, "coordinate change size");
  }
  if (matrix_rank(m) != f.dim()) throw Error(Errc::SingularMatrix, "coordinate change is singular");
  return restrict_form(f, m);
}

LinearSubspace radical_subspace(const QuadraticForm& f) {
  return LinearSubspace(f.dim(), kernel_basis(f.gram()));
}

Matrix<UniPoly> radical_subspace(const Matrix<UniPoly>& gram, const QuotientField& field) {
  return kernel_basis(field, gram);
}

ValueAndGradient evaluate_and_gradient(const QuadraticForm& f, const ProjectivePoint& p) {
  if (p.size() != f.dim()) throw Error(Errc::DimensionMismatch, "point dimension");
  const auto x = p.to_rationals();
  return {f.evaluate(x), f.gradient(x)};
}

Matrix<UniPoly> member_matrix(const QuotientField& field, const QuadraticForm& f,
                              const QuadraticForm& g, const UniPoly& lambda) {
  if (f.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "pencil member");
  const std::size_t n = f.dim();
  Matrix<UniPoly> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = field.add(field.from_rational(f(i, j)), field.mul(lambda, field.from_rational(g(i, j))));
    }
  return m;
}

Diagonalization diagonalize(const QuadraticForm& f) {
  const std::size_t n = f.dim();
  QMatrix a = f.gram();
  QMatrix basis = identity_matrix(n);
  // Congruence operations on columns of basis; a tracks basis^T A basis.
  auto add_column = [&](std::size_t dst, std::size_t src, const Rational& c) {
    for (std::size_t r = 0; r < n; ++r) basis(r, dst) += c * basis(r, src);
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += c * a(r, src);
    for (std::size_t r = 0; r < n; ++r) a(dst, r) += c * a(src, r);
  };
  auto swap_columns = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(basis(r, i), basis(r, j));
    a.swap_rows(i, j);
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (a(i, j) != 0) {
            add_column(i, j, Rational(1));
            piv = i;
            found = true;
          }
      if (!found) break;
    }
    swap_columns(k, piv);
    const Rational inv = 1 / a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      add_column(j, k, -a(k, j) * inv);
    }
  }
  Diagonalization d;
  d.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.entries[i] = a(i, i);
  d.basis = std::move(basis);
  return d;
}

Signature signature(const QuadraticForm& f) {
  Signature s;
  for (const auto& e : diagonalize(f).entries) {
    if (e > 0) {
      ++s.positive;
    } else if (e < 0) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

}  // namespace qpencil
