#include <random>
#include <set>

#include "doctest.h"
#include "qpencil/descent.hpp"
#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"
#include "test_util.hpp"

using namespace qpencil;
using namespace qpencil::testing;

namespace {

QuadraticForm coeffs(std::size_t n, std::initializer_list<std::tuple<int, int, long>> terms) {
  QMatrix c(n, n);
  for (const auto& [i, j, v] : terms) c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += v;
  return QuadraticForm::from_coefficients(c);
}

LinearSubspace std_plane(std::size_t dim) { return LinearSubspace::coordinate_span(dim, {0, 1, 2}); }

HyperplaneCandidate hyper(std::initializer_list<long> a) {
  HyperplaneCandidate h;
  for (long x : a) {
    h.alphas.emplace_back(x);
    if (abs(h.alphas.back()) > h.height) h.height = abs(h.alphas.back());
  }
  return h;
}

std::vector<std::vector<long>> as_long(const std::vector<HyperplaneCandidate>& hs) {
  std::vector<std::vector<long>> r;
  for (const auto& h : hs) {
    std::vector<long> v;
    for (const auto& a : h.alphas) v.push_back(a.get_si());
    r.push_back(v);
  }
  return r;
}

// Brute-force count of primitive vectors with first nonzero entry positive.
std::size_t count_canonical(std::size_t len, long bound) {
  std::size_t total = 0;
  std::vector<long> v(len, -bound);
  for (;;) {
    long g = 0;
    std::size_t first = len;
    for (std::size_t i = 0; i < len; ++i) {
      g = std::gcd(g, std::abs(v[i]));
      if (first == len && v[i] != 0) first = i;
    }
    if (g == 1 && v[first] > 0) ++total;
    std::size_t i = 0;
    while (i < len && v[i] == bound) v[i++] = -bound;
    if (i == len) break;
    ++v[i];
  }
  return total;
}

bool is_zero_vector(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool on_variety(const QuadraticForm& f, const QuadraticForm& g, const ProjectivePoint& p) {
  return f.evaluate(p.coords()) == 0 && g.evaluate(p.coords()) == 0;
}

}  // namespace

TEST_CASE("hyperplane enumeration") {
  const auto h1 = enumerate_hyperplanes(5, 1);
  REQUIRE(h1.size() == 13);
  const std::vector<std::vector<long>> head{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, -1, 0}, {1, 0, 1}};
  const auto l1 = as_long(h1);
  CHECK(std::vector<std::vector<long>>(l1.begin(), l1.begin() + 6) == head);
  CHECK(l1.back() == std::vector<long>{1, -1, -1});
  CHECK(enumerate_hyperplanes(6, 1).size() == 40);
  CHECK(enumerate_hyperplanes(5, 0).empty());
  HyperplaneStream empty(7, 0);
  CHECK_FALSE(empty.next().has_value());

  for (std::size_t n : {4, 5, 6}) {
    for (unsigned b = 1; b <= 3; ++b) {
      const auto hs = enumerate_hyperplanes(n, b);
      std::set<std::vector<long>> seen;
      long last_height = 0;
      bool ordered = true, canonical = true;
      for (const auto& v : as_long(hs)) {
        seen.insert(v);
        long g = 0, ht = 0;
        for (long x : v) {
          g = std::gcd(g, std::abs(x));
          ht = std::max(ht, std::abs(x));
        }
        const long lead = *std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
        canonical = canonical && g == 1 && lead > 0;
        ordered = ordered && ht >= last_height;
        last_height = ht;
      }
      CHECK(seen.size() == hs.size());
      CHECK(hs.size() == count_canonical(n - 2, b));
      CHECK(ordered);
      CHECK(canonical);
    }
  }
}

TEST_CASE("hyperplane basis spans the hyperplane") {
  for (const auto& h : enumerate_hyperplanes(6, 3)) {
    const QMatrix e = hyperplane_basis(6, h);
    REQUIRE(e.cols() == 6);
    CHECK(matrix_rank(e) == 6);
    const auto nrm = h.normal();
    for (std::size_t c = 0; c < e.cols(); ++c) {
      Rational dot = 0;
      for (std::size_t r = 0; r < 7; ++r) {
        dot += nrm[r] * e(r, c);
        CHECK(e(r, c).get_den() == 1);
      }
      CHECK(dot == 0);
    }
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t r = 0; r < 7; ++r) CHECK(e(r, c) == (r == c ? 1 : 0));
  }
}

TEST_CASE("v0 membership clauses") {
  const QuadraticForm f(identity_matrix(6));
  const QuadraticForm g = coeffs(6, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {3, 3, 2}});
  const auto d = discriminant(Pencil(f, g));
  auto c = v0_membership(f, g, d, hyper({1, 0, 0}));
  CHECK(c.rank_F == 5);
  CHECK(c.accepted);
  CHECK(c.failed_clause == 0);

  // F + G has radical e4 (x4^2 cancels, no x4 cross terms).
  const QuadraticForm g2 = coeffs(6, {{4, 4, -1}, {0, 3, 1}, {1, 5, 1}, {2, 3, 1}, {3, 5, 1}});
  const auto d2 = discriminant(Pencil(f, g2));
  const auto rec = std::find_if(d2.records.begin(), d2.records.end(), [](const RankRecord& r) {
    return !r.at_infinity && r.field.modulus().degree() == 1 && r.radical.cols() == 1;
  });
  REQUIRE(rec != d2.records.end());
  c = v0_membership(f, g2, d2, hyper({0, 1, 0}));
  CHECK_FALSE(c.accepted);
  CHECK(c.failed_clause == 'b');
  CHECK(c.rank_F == 5);

  // G = x3 (x0 + x4): G restricted to x3 = 0 vanishes.
  const QuadraticForm g3 = coeffs(6, {{0, 3, 1}, {3, 4, 1}});
  c = v0_membership(f, g3, discriminant(Pencil(f, g3)), hyper({1, 0, 0}));
  CHECK(c.failed_clause == 'c');
  CHECK(c.rank_G < 3);

  // Tangent hyperplane: F = x0^2 + x1^2 + x2^2 + x3 x4 + x5^2 restricted to x3 = 0 has rank 4.
  const QuadraticForm f4 = coeffs(6, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 4, 1}, {5, 5, 1}});
  c = v0_membership(f4, g, discriminant(Pencil(f4, g)), hyper({1, 0, 0}));
  CHECK(c.failed_clause == 'a');
  CHECK(c.rank_F == 4);
}

TEST_CASE("transversality") {
  // P = e5: grad F = e3, grad G = e4 (up to 2).
  const QuadraticForm f = coeffs(6, {{0, 0, 1}, {1, 1, 1}, {2, 2, -1}, {3, 5, 1}, {4, 4, 1}});
  const QuadraticForm g = coeffs(6, {{0, 3, 1}, {4, 5, 1}, {1, 4, 1}});
  const ProjectivePoint p{0, 0, 0, 0, 0, 1};
  CHECK(transversality_check(f, g, hyper({0, 0, 1}), p));
  CHECK_FALSE(transversality_check(f, g, hyper({1, 1, 0}), p));
  CHECK_FALSE(transversality_check(f, g, hyper({1, 0, 0}), p));

  // Proportional gradients: false for every H.
  const QuadraticForm gs = coeffs(6, {{0, 3, 1}, {3, 5, 1}});
  for (const auto& h : enumerate_hyperplanes(5, 2)) CHECK_FALSE(transversality_check(f, gs, h, p));

  try {
    transversality_check(f, g, hyper({1, 0, 0}), ProjectivePoint{1, 0, 0, 0, 0, 0});
    FAIL("expected PointNotOnVariety");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PointNotOnVariety);
  }

  // Planted points are smooth, so some candidate is transversal.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PlantedOptions o;
    o.seed = seed;
    const auto inst = generate_planted_instance(o);
    const ProjectivePoint p0(inst.point);
    bool any = false;
    for (const auto& h : enumerate_hyperplanes(5, 1)) any = any || transversality_check(inst.F, inst.G, h, p0);
    CHECK(any);
  }
}

TEST_CASE("restricted discriminant") {
  const QuadraticForm f(diag({1, 2, 3, 4, 5, 6}));
  const QuadraticForm g(diag({0, 0, 0, 1, 1, 1}));
  const auto r = restricted_discriminant(f, g, hyper({1, 0, 0}));
  CHECK(r.F == QuadraticForm(diag({1, 2, 3, 5, 6})));
  CHECK(r.data.P == UniPoly{6} * UniPoly{5, 1} * UniPoly{6, 1});
  CHECK_FALSE(r.irreducible_quintic);

  // Generated P^5 instances: some hyperplane of small height gives an irreducible restriction.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    PlantedOptions o;
    o.seed = seed;
    o.route = Route::P5HyperplaneDescent;
    const auto inst = generate_planted_instance(o);
    const auto sys = normalize_pencil(inst.F, inst.G, verify_conic_plane(inst.F, inst.G, inst.plane));
    const auto d = discriminant(sys.pencil());
    HyperplaneStream s(5, 50);
    bool found = false;
    for (int k = 0; k < 200 && !found; ++k) {
      const auto h = s.next();
      REQUIRE(h);
      if (!v0_membership(sys.F, sys.G, d, *h).accepted) continue;
      const auto rd = restricted_discriminant(sys.F, sys.G, *h);
      CHECK(rd.data.P.degree() <= 4);
      found = rd.irreducible_quintic;
    }
    CHECK(found);
  }
}

TEST_CASE("restriction keeps the descent hypotheses") {
  for (std::size_t n : {6, 7}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      PlantedOptions o;
      o.n = n;
      o.seed = seed;
      o.route = Route::PnHyperplaneDescent;
      const auto inst = generate_planted_instance(o);
      const auto sys = normalize_pencil(inst.F, inst.G, verify_conic_plane(inst.F, inst.G, inst.plane));
      const auto d = discriminant(sys.pencil());
      int accepted = 0;
      for (const auto& h : enumerate_hyperplanes(n, 1)) {
        if (!v0_membership(sys.F, sys.G, d, h).accepted) continue;
        ++accepted;
        const QMatrix e = hyperplane_basis(n, h);
        const QuadraticForm fr = restrict_form(sys.F, e), gr = restrict_form(sys.G, e);
        CHECK(form_rank(fr) == n);
        CHECK(form_rank(gr) >= 3);
        CHECK(is_non_conical(fr, gr));
        const auto dr = discriminant(Pencil(fr, gr));
        CHECK_FALSE(dr.identically_zero);
        if (n - 1 >= 6) CHECK(low_rank_census(dr).inequality_ok);
      }
      CHECK(accepted > 0);
    }
  }
}

TEST_CASE("residual conic fibers") {
  const QuadraticForm f = coeffs(5, {{0, 0, 1}, {1, 1, 1}, {2, 2, -1}, {3, 3, 1}});
  const QuadraticForm g = coeffs(5, {{0, 3, 1}});
  const FiberConic fc = residual_conic_fiber(f, g, 0, 1);
  CHECK(fc.residual == QuadraticForm(diag({1, -1, 1})));
  try {
    residual_conic_fiber(f, g, 1, 0);
    FAIL("expected DegenerateFiber");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateFiber);
  }
  CHECK_THROWS_AS(residual_conic_fiber(QuadraticForm(identity_matrix(6)), QuadraticForm(QMatrix(6, 6)), 0, 1),
                  Error);
}

TEST_CASE("property: fiber zeros land on the variety") {
  std::mt19937_64 rng(43);
  int pairs = 0, solved = 0;
  for (std::uint64_t seed = 1; pairs < 100; ++seed) {
    PlantedOptions o;
    o.n = 4;
    o.seed = seed;
    o.route = Route::P4BaseCase;
    const auto inst = generate_planted_instance(o);
    const auto sys = normalize_pencil(inst.F, inst.G, verify_conic_plane(inst.F, inst.G, inst.plane));
    for (int k = 0; k < 5; ++k, ++pairs) {
      Integer t0 = uniform(rng, -6, 6), t1 = uniform(rng, -6, 6);
      if (t0 == 0 && t1 == 0) t1 = 1;
      FiberConic fc;
      try {
        fc = residual_conic_fiber(sys, t0, t1);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateFiber);
        continue;
      }
      CHECK(fc.residual == restrict_form(sys.F, fc.embedding));
      CHECK(restrict_form(sys.G, fc.embedding).is_zero());
      for (std::size_t c = 0; c < 3; ++c) CHECK(t0 * fc.embedding(3, c) + t1 * fc.embedding(4, c) == 0);
      if (form_rank(fc.residual) < 3) continue;
      const TernaryForm tf = TernaryForm::from_form(fc.residual);
      if (!conic_local_report(tf).globally_solvable) continue;
      ++solved;
      // Every rational zero is p or Q(r) p - 2 B(p, r) r; sample a few.
      const ProjectivePoint p = conic_rational_point(tf);
      const auto pr = p.to_rationals();
      for (int s = 0; s < 4; ++s) {
        std::vector<Rational> r{Rational(uniform(rng, -4, 4)), Rational(uniform(rng, -4, 4)),
                                Rational(uniform(rng, -4, 4))};
        Rational bpr = 0;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) bpr += pr[i] * fc.residual(i, j) * r[j];
        const Rational qr = fc.residual.evaluate(r);
        std::vector<Rational> z(3);
        for (std::size_t i = 0; i < 3; ++i) z[i] = qr * pr[i] - 2 * bpr * r[i];
        if (is_zero_vector(z)) continue;
        CHECK(fc.residual.evaluate(z) == 0);
        const ProjectivePoint y(fc.embedding * z);
        CHECK(on_variety(sys.F, sys.G, y));
      }
    }
  }
  CHECK(solved > 10);
}

TEST_CASE("Weil restriction split inverts the construction") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const WeilInstance w = generate_weil_instance(seed);
    const auto census = low_rank_census(discriminant(Pencil(w.F, w.G)));
    const WeilSplitData split = weil_restriction_split(w.F, w.G, census);
    CHECK(split.field.modulus() == w.modulus);
    CHECK(split.T == w.T);
    const auto [f, g] = weil_reconstruct(split);
    CHECK(f == w.F);
    CHECK(g == w.G);

    const ProjectivePoint p = weil_point_transfer(split, w.kpoint);
    CHECK(on_variety(w.F, w.G, p));

    // The transferred vector is fixed by conjugation, entry by entry.
    const QuotientField& k = split.field;
    std::vector<UniPoly> u(7);
    for (std::size_t i = 0; i < 3; ++i) {
      u[i] = conjugate(k, w.kpoint[i]);
      u[3 + i] = w.kpoint[i];
    }
    u[6] = k.one();
    for (std::size_t r = 0; r < 7; ++r) {
      UniPoly acc = k.zero();
      for (std::size_t c = 0; c < 7; ++c) acc = k.add(acc, k.mul(split.basis(r, c), u[c]));
      CHECK(conjugate(k, acc) == acc);
    }

    std::vector<UniPoly> at_infinity = w.kpoint;
    at_infinity[3] = k.zero();
    try {
      weil_point_transfer(split, at_infinity);
      FAIL("expected PointAtInfinity");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PointAtInfinity);
    }
    std::vector<UniPoly> off = w.kpoint;
    off[0] = k.add(off[0], k.one());
    CHECK_THROWS_AS(weil_point_transfer(split, off), Error);

    const auto kp = weil_kpoint_search(split, 3);
    REQUIRE(kp);
    CHECK(on_variety(w.F, w.G, weil_point_transfer(split, *kp)));
  }
}

TEST_CASE("Weil split rejects other cases") {
  const QuadraticForm f(diag({1, 1, 1, 1, 2, 3, 5}));
  const QuadraticForm g = coeffs(7, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {6, 6, 1}});
  try {
    weil_restriction_split(f, g, low_rank_census(discriminant(Pencil(f, g))));
    FAIL("expected NotConjugateCase");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotConjugateCase);
  }
}

TEST_CASE("quadratic field helpers") {
  const QuotientField k(UniPoly{-5, 0, 1});
  const UniPoly a = UniPoly{3, 2};
  CHECK(conjugate(k, a) == UniPoly{3, -2});
  const auto sq = quadratic_sqrt(k, k.mul(a, a));
  REQUIRE(sq);
  CHECK(k.mul(*sq, *sq) == k.mul(a, a));
  CHECK_FALSE(quadratic_sqrt(k, UniPoly{0, 1}).has_value());
  CHECK_FALSE(quadratic_sqrt(k, UniPoly{2}).has_value());
  const auto s5 = quadratic_sqrt(k, UniPoly{5});
  REQUIRE(s5);
  CHECK(k.mul(*s5, *s5) == UniPoly{5});
}

TEST_CASE("planted generator") {
  PlantedOptions o;
  o.seed = 7;
  const auto a = generate_planted_instance(o);
  const auto b = generate_planted_instance(o);
  CHECK(a.F == b.F);
  CHECK(a.G == b.G);
  CHECK(a.point == b.point);
  const ProjectivePoint p(a.point);
  CHECK(on_variety(a.F, a.G, p));
  CHECK(restrict_form(a.F, a.plane) == QuadraticForm(diag({1, 1, -3})));
  CHECK(restrict_form(a.G, a.plane).is_zero());
  CHECK_FALSE(a.plane.contains(p.to_rationals()));
  o.seed = 8;
  CHECK_FALSE(generate_planted_instance(o).F == a.F);

  PlantedOptions o4;
  o4.n = 4;
  o4.route = Route::P4BaseCase;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    o4.seed = seed;
    const auto inst = generate_planted_instance(o4);
    const auto rep = hypothesis_report(normalize_pencil(inst.F, inst.G, verify_conic_plane(inst.F, inst.G, inst.plane)));
    CHECK(rep.route == Route::P4BaseCase);
    CHECK(rep.hypothesis_failures.empty());
    CHECK(discriminant(Pencil(inst.F, inst.G)).factorization.is_irreducible());
  }

  PlantedOptions bad;
  bad.point = {1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(generate_planted_instance(bad), Error);
  PlantedOptions never;
  never.route = Route::S2ConjugateWeil;
  never.max_retries = 5;
  try {
    generate_planted_instance(never);
    FAIL("expected RetriesExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RetriesExhausted);
  }
}

TEST_CASE("find_rational_point on planted instances") {
  for (std::size_t n : {4, 5, 6, 7}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      PlantedOptions o;
      o.n = n;
      o.seed = seed;
      const auto inst = generate_planted_instance(o);
      const auto r = find_rational_point(inst.F, inst.G, inst.plane);
      REQUIRE(r.outcome == SearchOutcome::PointFound);
      REQUIRE(r.point);
      CHECK(on_variety(inst.F, inst.G, *r.point));
      CHECK_FALSE(inst.plane.contains(r.point->to_rationals()));
      REQUIRE(r.trace);
      CHECK(r.trace->method == (n == 4 ? "conic-bundle" : "hyperplane-descent"));
      CHECK(r.trace->steps.size() == n - 4);
      for (const auto& st : r.trace->steps) {
        CHECK(st.certificate.accepted);
        if (st.quintic_required) CHECK(st.irreducible_quintic);
      }
      CHECK(r.trace->check_F == 0);
      CHECK(r.trace->check_G == 0);
      const auto rr = replay_trace(inst.F, inst.G, inst.plane, *r.trace);
      CHECK(rr.ok);
      CHECK(rr.mismatches.empty());

      DescentTrace tampered = *r.trace;
      tampered.point = ProjectivePoint(std::vector<Integer>(n + 1, Integer(1)));
      CHECK_FALSE(replay_trace(inst.F, inst.G, inst.plane, tampered).ok);
      if (!tampered.steps.empty()) {
        tampered = *r.trace;
        tampered.steps[0].certificate.rank_G += 1;
        CHECK_FALSE(replay_trace(inst.F, inst.G, inst.plane, tampered).ok);
      }
    }
  }
}

TEST_CASE("find_rational_point on the Weil route") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const WeilInstance w = generate_weil_instance(seed);
    const auto r = find_rational_point(w.F, w.G, w.plane);
    REQUIRE(r.outcome == SearchOutcome::PointFound);
    CHECK(r.hypotheses.route == Route::S2ConjugateWeil);
    CHECK(r.trace->method == "weil");
    CHECK(on_variety(w.F, w.G, *r.point));
    CHECK(replay_trace(w.F, w.G, w.plane, *r.trace).ok);
  }
}

TEST_CASE("find_rational_point: conic point") {
  PlantedOptions o;
  o.conic = diag({1, 1, -2});
  const auto inst = generate_planted_instance(o);
  const auto r = find_rational_point(inst.F, inst.G, inst.plane);
  REQUIRE(r.outcome == SearchOutcome::PointFound);
  CHECK(r.trace->method == "conic");
  CHECK(*r.point == ProjectivePoint{1, 1, 1, 0, 0, 0});
  CHECK(replay_trace(inst.F, inst.G, inst.plane, *r.trace).ok);
}

TEST_CASE("find_rational_point: local obstructions") {
  SUBCASE("definite member") {
    const QuadraticForm f(identity_matrix(7));
    const QuadraticForm g = coeffs(7, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {6, 6, 1}, {3, 6, 2}});
    const auto r = find_rational_point(f, g, std_plane(7));
    CHECK(r.outcome == SearchOutcome::LocalObstruction);
    REQUIRE(r.local.obstruction);
    CHECK(r.local.obstruction->kind == ObstructionCertificate::Kind::DefiniteRealMember);
    CHECK(replay_obstruction(f, g, *r.local.obstruction));
    CHECK_FALSE(r.point);
  }
  SUBCASE("no 3-adic points") {
    const QuadraticForm f(diag({1, 1, -3, 3, 3}));
    QMatrix gg(5, 5);
    gg(3, 3) = 1;
    gg(4, 4) = 1;
    gg(2, 3) = gg(3, 2) = Rational(3, 2);
    const QuadraticForm g(gg);
    const auto r = find_rational_point(f, g, std_plane(5));
    CHECK(r.outcome == SearchOutcome::LocalObstruction);
    REQUIRE(r.local.obstruction);
    CHECK(r.local.obstruction->kind == ObstructionCertificate::Kind::PadicEmpty);
    CHECK(r.local.obstruction->padic.prime == 3);
    CHECK(replay_obstruction(f, g, *r.local.obstruction));
    // (1 : 0 : 1 : 0 : 0) lies on the perturbed variety.
    CHECK_FALSE(replay_obstruction(QuadraticForm(diag({1, 1, -1, 3, 3})), g, *r.local.obstruction));
  }
}

TEST_CASE("find_rational_point: bounds exhausted") {
  PlantedOptions o;
  o.seed = 3;
  const auto inst = generate_planted_instance(o);
  SearchConfig cfg;
  cfg.height_bound = 0;
  const auto r = find_rational_point(inst.F, inst.G, inst.plane, cfg);
  CHECK(r.outcome == SearchOutcome::BoundsExhausted);
  CHECK_FALSE(r.point);
  CHECK_FALSE(r.local.obstruction);
}

TEST_CASE("find_rational_point: vanishing discriminant") {
  // F, G vanish on span(e3, ..., e6), so every member is singular; kernels lie there.
  const QuadraticForm f = coeffs(7, {{0, 0, 1}, {1, 1, 1}, {2, 2, -3}, {0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {0, 6, 1}});
  const QuadraticForm g = coeffs(7, {{0, 4, 1}, {1, 5, 1}, {2, 6, 1}, {2, 3, 2}});
  const auto r = find_rational_point(f, g, std_plane(7));
  REQUIRE(r.outcome == SearchOutcome::PointFound);
  CHECK(r.hypotheses.route == Route::SingularKPoint);
  CHECK(r.trace->method == "singular-point");
  CHECK(on_variety(f, g, *r.point));
  CHECK(replay_trace(f, g, std_plane(7), *r.trace).ok);
}
