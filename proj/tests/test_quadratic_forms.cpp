#include <random>

#include "doctest.h"
#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"
#include "qpencil/quadratic_form.hpp"
#include "test_util.hpp"

using namespace qpencil;
using namespace qpencil::testing;

TEST_CASE("form_rank examples") {
  CHECK(form_rank(QuadraticForm(diag({1, 1, 1, 0, 0, 0}))) == 3);
  CHECK(form_rank(QuadraticForm::zero(5)) == 0);
  CHECK(form_rank(QuadraticForm(QMatrix::from_rows({{0, 1}, {1, 0}}))) == 2);
}

TEST_CASE("QuadraticForm validation") {
  CHECK_THROWS_AS(QuadraticForm(QMatrix(2, 3)), Error);
  CHECK_THROWS_AS(QuadraticForm(QMatrix::from_rows({{0, 1}, {2, 0}})), Error);
  // x0^2 + x1 x2: off-diagonal entry is half the cross coefficient.
  QMatrix c(3, 3);
  c(0, 0) = 1;
  c(1, 2) = 1;
  const auto f = QuadraticForm::from_coefficients(c);
  CHECK(f(1, 2) == Rational(1, 2));
  CHECK(f.coefficient(1, 2) == 1);
  CHECK(f.evaluate(std::vector<Integer>{1, 2, 3}) == 7);
}

TEST_CASE("restrict_form examples") {
  const QuadraticForm sum5(identity_matrix(5));
  const auto r = restrict_form(sum5, LinearSubspace::coordinate_span(5, {0, 1, 2, 3}));
  CHECK(r == QuadraticForm(identity_matrix(4)));
  CHECK(form_rank(r) == 4);

  QMatrix c(4, 4);
  c(0, 3) = 1;
  const auto x0x3 = QuadraticForm::from_coefficients(c);
  CHECK(restrict_form(x0x3, LinearSubspace::coordinate_span(4, {0, 1, 2})).is_zero());

  const QuadraticForm d(diag({0, 1, -1}));
  const auto s = LinearSubspace::from_vectors({{1, 0, 0}, {0, 1, 1}});
  CHECK(restrict_form(d, s).is_zero());

  CHECK_THROWS_AS(restrict_form(d, LinearSubspace::coordinate_span(4, {0})), Error);
}

TEST_CASE("change_coordinates examples") {
  const QuadraticForm f(diag({1, -1}));
  CHECK(change_coordinates(f, identity_matrix(2)) == f);
  const QMatrix swap = QMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(change_coordinates(f, swap) == QuadraticForm(diag({-1, 1})));
  CHECK_THROWS_AS(change_coordinates(f, QMatrix(2, 2)), Error);
  std::mt19937_64 rng(8);
  CHECK(form_rank(change_coordinates(QuadraticForm(diag({1, 2, 3})), random_unimodular(rng, 3))) == 3);
}

TEST_CASE("radical_subspace examples") {
  const auto r = radical_subspace(QuadraticForm(diag({1, 1, 0, 0})));
  CHECK(r.dim() == 2);
  CHECK(r.contains({0, 0, 1, 0}));
  CHECK(r.contains({0, 0, 0, 1}));
  CHECK(radical_subspace(QuadraticForm(diag({1, 2, 3}))).dim() == 0);

  const QuotientField gaussian(UniPoly{1, 0, 1});
  const UniPoly t = gaussian.generator();
  Matrix<UniPoly> g(2, 2);
  g(0, 0) = gaussian.one();
  g(0, 1) = t;
  g(1, 0) = t;
  g(1, 1) = gaussian.neg(gaussian.one());
  const auto k = radical_subspace(g, gaussian);
  REQUIRE(k.cols() == 1);
  // The kernel is spanned by (-t, 1) up to a scalar in the field.
  const UniPoly ratio = gaussian.mul(k(0, 0), gaussian.inv(k(1, 0)));
  CHECK(ratio == gaussian.neg(t));
}

TEST_CASE("evaluate_and_gradient examples") {
  QMatrix c(3, 3);
  c(0, 0) = 1;
  c(1, 2) = 1;
  const auto f = QuadraticForm::from_coefficients(c);
  auto vg = evaluate_and_gradient(f, ProjectivePoint{1, 0, 0});
  CHECK(vg.value == 1);
  CHECK(vg.gradient == std::vector<Rational>{2, 0, 0});

  vg = evaluate_and_gradient(QuadraticForm(diag({1, -1})), ProjectivePoint{1, 1});
  CHECK(vg.value == 0);
  CHECK(vg.gradient == std::vector<Rational>{2, -2});
}

TEST_CASE("ProjectivePoint canonical form") {
  const ProjectivePoint p(std::vector<Rational>{Rational(-1, 2), 1, Rational(3, 4)});
  CHECK(p.coords() == std::vector<Integer>{2, -4, -3});
  CHECK(p.height() == 4);
  CHECK(ProjectivePoint{-2, 4, 6} == ProjectivePoint{1, -2, -3});
  CHECK_THROWS_AS(ProjectivePoint({0, 0}), Error);
}

TEST_CASE("property: restriction composes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 7));
    const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n)));
    const auto j = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(k)));
    const QuadraticForm f(random_symmetric(rng, n, 6));
    const QMatrix s = random_int_matrix(rng, n, k, 4);
    const QMatrix t = random_int_matrix(rng, k, j, 4);
    CHECK(restrict_form(restrict_form(f, s), t) == restrict_form(f, s * t));
  }
}

TEST_CASE("property: rank is invariant under coordinate change") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 7));
    const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n)));
    // Planted rank <= k.
    const QMatrix b = random_int_matrix(rng, n, k, 3);
    const QuadraticForm f(b * QuadraticForm(random_symmetric(rng, k, 4)).gram() * b.transpose());
    QMatrix m = random_int_matrix(rng, n, n, 5);
    if (determinant(m) == 0) m = random_unimodular(rng, n);
    CHECK(form_rank(change_coordinates(f, m)) == form_rank(f));
  }
}

TEST_CASE("property: radical vectors are singular points") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 7));
    const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1));
    const QMatrix b = random_int_matrix(rng, n, k, 3);
    const QuadraticForm f(b * QuadraticForm(random_symmetric(rng, k, 4)).gram() * b.transpose());
    const auto rad = radical_subspace(f);
    CHECK(rad.dim() == n - form_rank(f));
    CHECK(restrict_form(f, rad).is_zero());
    for (std::size_t c = 0; c < rad.dim(); ++c) {
      const auto vg = evaluate_and_gradient(f, ProjectivePoint(rad.basis().column(c)));
      CHECK(vg.value == 0);
      for (const auto& g : vg.gradient) CHECK(g == 0);
    }
  }
}

TEST_CASE("diagonalize and signature") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 6));
    const QuadraticForm f(random_symmetric(rng, n, 5));
    const auto d = diagonalize(f);
    CHECK(determinant(d.basis) != 0);
    const auto g = change_coordinates(f, d.basis);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(g(i, j) == (i == j ? d.entries[i] : Rational(0)));
    const auto sig = signature(f);
    CHECK(sig.positive + sig.negative + sig.zero == n);
    CHECK(sig.positive + sig.negative == form_rank(f));
  }
  CHECK(signature(QuadraticForm(QMatrix::from_rows({{0, 1}, {1, 0}}))).positive == 1);
  CHECK(signature(QuadraticForm(diag({1, 2, 3}))).definite());
}
