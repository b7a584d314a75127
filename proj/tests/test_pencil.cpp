#include <random>

#include "doctest.h"
#include "qpencil/error.hpp"
#include "qpencil/pencil.hpp"
#include "test_util.hpp"

using namespace qpencil;
using namespace qpencil::testing;

namespace {

// Oracle: det(F + kG) at dim+1 integer points, then Lagrange interpolation.
UniPoly interpolated_determinant(const QuadraticForm& f, const QuadraticForm& g) {
  const std::size_t n = f.dim();
  UniPoly result;
  for (std::size_t i = 0; i <= n; ++i) {
    const Rational xi = static_cast<long>(i);
    UniPoly basis = UniPoly::constant(determinant((f + g.scaled(xi)).gram()));
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      const Rational xj = static_cast<long>(j);
      basis *= UniPoly(std::vector<Rational>{-xj / (xi - xj), 1 / (xi - xj)});
    }
    result += basis;
  }
  return result;
}

QMatrix blocks(const std::vector<QMatrix>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rows();
  QMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) m(off + i, off + j) = p(i, j);
    off += p.rows();
  }
  return m;
}

// The n = 6 example: three hyperbolic blocks plus one rational coordinate.
Pencil block_example() {
  const QMatrix a = QMatrix::from_rows({{1, 0}, {0, -1}});
  const QMatrix b = QMatrix::from_rows({{0, 1}, {1, 0}});
  return Pencil(QuadraticForm(blocks({a, a, a, QMatrix::from_rows({{1}})})),
                QuadraticForm(blocks({b, b, b, QMatrix::from_rows({{0}})})));
}

}  // namespace

TEST_CASE("Pencil validation") {
  CHECK_THROWS_AS(Pencil(QuadraticForm(diag({1, 1})), QuadraticForm(diag({2, 2}))), Error);
  CHECK_THROWS_AS(Pencil(QuadraticForm(diag({1, 1})), QuadraticForm::zero(2)), Error);
  CHECK_THROWS_AS(Pencil(QuadraticForm(diag({1, 1})), QuadraticForm(diag({1, 1, 1}))), Error);
}

TEST_CASE("discriminant examples") {
  SUBCASE("diagonal with a double root") {
    const auto d = discriminant(Pencil(QuadraticForm(diag({1, 1, 1, 1, 1})), QuadraticForm(diag({0, 0, 0, 1, 1}))));
    CHECK(d.P == UniPoly{1, 2, 1});
    CHECK(d.mu_multiplicity == 3);
    REQUIRE(d.records.size() == 2);
    CHECK(d.records[0].factor == UniPoly{1, 1});
    CHECK(d.records[0].rational_root() == -1);
    CHECK(d.records[0].rank == 3);
    CHECK(d.records[0].multiplicity == 2);
    CHECK(d.at_infinity().rank == 2);
    CHECK(d.at_infinity().radical.cols() == 3);
    CHECK(multiplicity_bound_check(d));
  }
  SUBCASE("block example over Q(i)") {
    const auto d = discriminant(block_example());
    CHECK(d.P == -pow(UniPoly{1, 0, 1}, 3));
    REQUIRE(d.records.size() == 2);
    CHECK(d.records[0].factor == UniPoly{1, 0, 1});
    CHECK(d.records[0].multiplicity == 3);
    CHECK(d.records[0].rank == 4);
    CHECK(d.records[0].radical.cols() == 3);
    CHECK(d.mu_multiplicity == 1);
    CHECK(multiplicity_bound_check(d));
  }
  SUBCASE("five simple rational roots") {
    const auto d = discriminant(Pencil(QuadraticForm(identity_matrix(5)), QuadraticForm(diag({1, 2, 3, 4, 5}))));
    CHECK(d.P.degree() == 5);
    REQUIRE(d.records.size() == 6);
    for (int i = 0; i < 5; ++i) {
      CHECK(d.records[i].factor.degree() == 1);
      CHECK(d.records[i].rank == 4);
    }
    CHECK(d.mu_multiplicity == 0);
    CHECK(d.at_infinity().rank == 5);
  }
  SUBCASE("identically zero") {
    const auto d = discriminant(Pencil(QuadraticForm(diag({1, 0, 0})), QuadraticForm(diag({0, 1, 0}))));
    CHECK(d.identically_zero);
    CHECK_THROWS_AS(require_nonzero(d), Error);
    CHECK_THROWS_AS(multiplicity_bound_check(d), Error);
  }
}

TEST_CASE("multiplicity bound example") {
  const auto d = discriminant(Pencil(QuadraticForm(diag({1, 1, 1, 1, 0})), QuadraticForm(diag({0, 0, 0, 0, 1}))));
  CHECK(d.P == UniPoly{0, 1});
  CHECK(d.records[0].rank == 4);
  CHECK(d.records[0].multiplicity == 1);
  CHECK(d.mu_multiplicity == 4);
  CHECK(d.at_infinity().rank == 1);
  CHECK(multiplicity_bound_check(d));
}

TEST_CASE("determinant agrees with interpolation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dim = static_cast<std::size_t>(uniform(rng, 2, 8));
    const QuadraticForm f(random_symmetric(rng, dim, 5)), g(random_symmetric(rng, dim, 5));
    if (f == g || g.is_zero()) continue;
    CHECK(pencil_determinant(Pencil(f, g)) == interpolated_determinant(f, g));
  }
}

TEST_CASE("property: multiplicity bound and degree count on random pencils") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const auto dim = static_cast<std::size_t>(uniform(rng, 5, 9));
    const auto [f, g] = random_full_rank_pencil(rng, dim, 5);
    const auto d = discriminant(Pencil(f, g));
    REQUIRE_FALSE(d.identically_zero);
    CHECK(multiplicity_bound_check(d));
    CHECK(total_discriminant_degree(d) == static_cast<int>(dim));
  }
}

TEST_CASE("property: discriminant under coordinate change") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dim = static_cast<std::size_t>(uniform(rng, 3, 7));
    const auto [f, g] = random_full_rank_pencil(rng, dim, 4);
    QMatrix m = random_int_matrix(rng, dim, dim, 3);
    if (determinant(m) == 0) m = random_unimodular(rng, dim);
    const auto a = discriminant(Pencil(f, g));
    const auto b = discriminant(Pencil(change_coordinates(f, m), change_coordinates(g, m)));
    const Rational det = determinant(m);
    CHECK(b.P == a.P.scaled(det * det));
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].factor == b.records[i].factor);
      CHECK(a.records[i].multiplicity == b.records[i].multiplicity);
      CHECK(a.records[i].rank == b.records[i].rank);
    }
  }
}

TEST_CASE("low_rank_census examples") {
  const QuadraticForm id7(identity_matrix(7));
  auto c = low_rank_census(discriminant(Pencil(id7, QuadraticForm(diag({1, 2, 3, 4, 5, 6, 7})))));
  CHECK(c.s == 0);
  CHECK(c.inequality_ok);

  c = low_rank_census(discriminant(Pencil(id7, QuadraticForm(diag({1, 1, 1, 0, 0, 0, 0})))));
  CHECK(c.s == 1);
  REQUIRE(c.members.size() == 1);
  CHECK(c.members[0].kind == CensusMember::Kind::RationalRoot);
  CHECK(c.members[0].lambda == -1);
  CHECK(c.members[0].rank == 4);
  CHECK(c.g_rank == 3);

  c = low_rank_census(discriminant(block_example()));
  CHECK(c.s == 2);
  REQUIRE(c.members.size() == 1);
  CHECK(c.members[0].kind == CensusMember::Kind::ConjugatePair);
  CHECK(c.members[0].factor == UniPoly{1, 0, 1});
  CHECK(c.inequality_ok);

  CHECK_THROWS_AS(low_rank_census(discriminant(Pencil(QuadraticForm(diag({1, 0})), QuadraticForm(diag({0, 1}))))),
                  Error);
}

TEST_CASE("property: census inequality for n >= 6") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const auto dim = static_cast<std::size_t>(uniform(rng, 7, 8));
    const auto [f, g] = random_full_rank_pencil(rng, dim, 5);
    const auto c = low_rank_census(discriminant(Pencil(f, g)));
    CHECK(c.inequality_ok);
    CHECK(c.s <= 2);
  }
}

TEST_CASE("rank_four_pair_check") {
  SUBCASE("five rational rank-4 members") {
    const auto r = rank_four_pair_check(
        discriminant(Pencil(QuadraticForm(diag({1, 2, 3, 4, 5})), QuadraticForm(identity_matrix(5)))));
    CHECK(r.holds);
    CHECK(r.witness == RankFourPairReport::Witness::RationalPair);
    REQUIRE(r.rational_pair.size() == 2);
    CHECK_FALSE(r.rational_pair[0] == r.rational_pair[1]);
  }
  SUBCASE("conjugate pair over Q(sqrt 2)") {
    // det [[1, l], [l, 2]] = 2 - l^2; the members at +-sqrt 2 have rank 4.
    const QuadraticForm f(blocks({QMatrix::from_rows({{1, 0}, {0, 2}}), identity_matrix(3)}));
    const QuadraticForm g(blocks({QMatrix::from_rows({{0, 1}, {1, 0}}), QMatrix(3, 3)}));
    const auto r = rank_four_pair_check(discriminant(Pencil(f, g)));
    CHECK(r.holds);
    CHECK(r.witness == RankFourPairReport::Witness::QuadraticFactor);
    CHECK(r.quadratic_factor == UniPoly{-2, 0, 1});
  }
  SUBCASE("irreducible quintic") {
    std::mt19937_64 rng(25);
    int seen = 0;
    while (seen < 20) {
      const QuadraticForm f(random_symmetric(rng, 5, 4)), g(random_symmetric(rng, 5, 4));
      if (form_rank(g) < 3) continue;
      const auto d = discriminant(Pencil(f, g));
      if (d.identically_zero || d.P.degree() != 5 || !d.factorization.is_irreducible()) continue;
      ++seen;
      CHECK_FALSE(rank_four_pair_check(d).holds);
    }
  }
  SUBCASE("quartic factor is flagged but does not trigger") {
    // Companion-style construction: F + lambda G singular only at roots of a quartic.
    std::mt19937_64 rng(26);
    bool found = false;
    for (int trial = 0; trial < 4000 && !found; ++trial) {
      const QuadraticForm f(random_symmetric(rng, 5, 3));
      const QuadraticForm g(random_low_rank_symmetric(rng, 5, 4, 2));
      if (g.is_zero() || f == g) continue;
      const auto d = discriminant(Pencil(f, g));
      if (d.identically_zero || d.factorization.factors.size() != 1 || d.P.degree() != 4) continue;
      const auto r = rank_four_pair_check(d);
      found = true;
      CHECK_FALSE(r.holds);
      CHECK(r.notes.size() == 1);
    }
    CHECK(found);
  }
  CHECK_THROWS_AS(rank_four_pair_check(discriminant(block_example())), Error);
}

TEST_CASE("smoothness_test") {
  const auto s = smoothness_test(Pencil(QuadraticForm(identity_matrix(6)), QuadraticForm(diag({1, 2, 3, 4, 5, 6}))));
  CHECK(s.smooth);
  CHECK(s.sample_prime == 11);
  CHECK(s.sampled_points > 0);
  CHECK(s.singular_samples == 0);
  CHECK_FALSE(smoothness_test(Pencil(QuadraticForm(identity_matrix(5)), QuadraticForm(diag({0, 0, 0, 1, 1})))).smooth);
  CHECK_FALSE(smoothness_test(block_example()).smooth);
}
