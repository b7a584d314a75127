#include "qpencil/normalization.hpp"

#include <array>

#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"

namespace qpencil {

namespace {

// c with b = c a entrywise, if it exists (a nonzero).
std::optional<Rational> proportionality(const QuadraticForm& a, const QuadraticForm& b) {
  std::optional<Rational> c;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a(i, j) != 0 && !c) c = b(i, j) / a(i, j);
    }
  if (!c) return std::nullopt;
  if (b == a.scaled(*c)) return c;
  return std::nullopt;
}

// Plane basis followed by the standard vectors that keep the columns independent.
QMatrix complete_basis(const LinearSubspace& plane) {
  const std::size_t dim = plane.ambient_dim();
  std::vector<std::vector<Rational>> cols;
  for (std::size_t c = 0; c < plane.dim(); ++c) cols.push_back(plane.basis().column(c));
  for (std::size_t e = 0; e < dim && cols.size() < dim; ++e) {
    std::vector<Rational> v(dim, 0);
    v[e] = 1;
    cols.push_back(v);
    if (matrix_rank(QMatrix::from_columns(cols, dim)) < cols.size()) cols.pop_back();
  }
  return QMatrix::from_columns(cols, dim);
}

QuadraticForm plane_part(const QuadraticForm& f) {
  return restrict_form(f, LinearSubspace::coordinate_span(f.dim(), {0, 1, 2}));
}

}  // namespace

ConicConfiguration verify_conic_plane(const QuadraticForm& f0, const QuadraticForm& g0,
                                      const LinearSubspace& plane) {
  if (f0.dim() != g0.dim() || plane.ambient_dim() != f0.dim()) {
    throw Error(Errc::DimensionMismatch, "plane and forms live in different spaces");
  }
  if (plane.dim() != 3) throw Error(Errc::InvalidArgument, "plane must have projective dimension 2");
  const QuadraticForm rf = restrict_form(f0, plane);
  const QuadraticForm rg = restrict_form(g0, plane);
  if (rf.is_zero() && rg.is_zero()) throw Error(Errc::PlaneContained, "both forms vanish on the plane");
  ConicConfiguration cfg{plane, rf.is_zero() ? rg : rf, 0, 0};
  if (rf.is_zero()) {
    cfg.a = 0;
    cfg.b = 1;
  } else {
    cfg.a = 1;
    const auto c = proportionality(rf, rg);
    if (!c) throw Error(Errc::NotAConic, "restrictions to the plane are not proportional");
    cfg.b = *c;
  }
  if (form_rank(cfg.conic_form) < 3) {
    throw Error(Errc::NotSmoothConic, "restriction to the plane has rank " +
                                          std::to_string(form_rank(cfg.conic_form)));
  }
  return cfg;
}

QuadraticForm NormalizedSystem::conic() const { return plane_part(F); }

std::vector<Rational> NormalizedSystem::to_original_coords(const std::vector<Rational>& y) const {
  return to_original * y;
}

NormalizedSystem normalize_pencil_unchecked(const QuadraticForm& f0, const QuadraticForm& g0,
                                            const ConicConfiguration& cfg) {
  NormalizedSystem sys;
  sys.to_original = complete_basis(cfg.plane);
  sys.coordinate_change = inverse(sys.to_original);
  const QuadraticForm f = change_coordinates(f0, sys.to_original);
  const QuadraticForm g = change_coordinates(g0, sys.to_original);
  // G = a G0 - b F0 vanishes on the plane; the base B restricts to a nonzero multiple of q.
  sys.G = g.scaled(cfg.a) - f.scaled(cfg.b);
  const bool base_is_f = cfg.a != 0;
  const QuadraticForm& base = base_is_f ? f : g;
  // P(lambda) has at most dim roots, so dim + 1 trials always suffice unless P = 0.
  sys.degenerate = true;
  for (long k = 0; k <= static_cast<long>(f.dim()); ++k) {
    const Rational lambda = (k % 2 == 1) ? Rational((k + 1) / 2) : Rational(-(k / 2));
    if (determinant((base + sys.G.scaled(lambda)).gram()) != 0) {
      sys.shift = lambda;
      sys.degenerate = false;
      break;
    }
  }
  if (sys.degenerate) sys.shift = 0;
  sys.F = base + sys.G.scaled(sys.shift);
  const Rational& l = sys.shift;
  if (base_is_f) {
    sys.pencil_change = QMatrix::from_rows({{1 - l * cfg.b, l * cfg.a}, {-cfg.b, cfg.a}});
  } else {
    sys.pencil_change = QMatrix::from_rows({{-l * cfg.b, Rational(1)}, {-cfg.b, Rational(0)}});
  }
  return sys;
}

NormalizedSystem normalize_pencil(const QuadraticForm& f0, const QuadraticForm& g0,
                                  const ConicConfiguration& cfg) {
  NormalizedSystem sys = normalize_pencil_unchecked(f0, g0, cfg);
  if (sys.degenerate) throw Error(Errc::DiscriminantZero, "every member of the pencil is singular");
  return sys;
}

namespace {

constexpr std::array<std::pair<Route, const char*>, 9> kRouteNames{{
    {Route::P4BaseCase, "p4-base-case"},
    {Route::P5HyperplaneDescent, "p5-hyperplane-descent"},
    {Route::PnHyperplaneDescent, "pn-hyperplane-descent"},
    {Route::LowRankGElementary, "low-rank-g-elementary"},
    {Route::Rank4GSingularLine, "rank4-g-singular-line"},
    {Route::S2Rational, "s2-rational"},
    {Route::S2ConjugateWeil, "s2-conjugate-weil"},
    {Route::SingularKPoint, "singular-k-point"},
    {Route::DiscriminantZero, "discriminant-zero"},
}};

}  // namespace

std::string route_name(Route r) {
  for (const auto& [route, name] : kRouteNames)
    if (route == r) return name;
  return "unknown";
}

Route parse_route(const std::string& name) {
  for (const auto& [route, n] : kRouteNames)
    if (name == n) return route;
  throw Error(Errc::InvalidInput, "unknown route '" + name + "'");
}

bool is_non_conical(const QuadraticForm& f, const QuadraticForm& g) {
  const std::size_t n = f.dim();
  QMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = f(i, j);
      stacked(n + i, j) = g(i, j);
    }
  return matrix_rank(stacked) == n;
}

namespace {

// Which case occurs for {F = 0} on the singular line of a rank-4 G.
std::string singular_line_subcase(const NormalizedSystem& sys) {
  const auto line = radical_subspace(sys.G);
  const QuadraticForm b = restrict_form(sys.F, line);
  if (b.is_zero()) return "line-on-quadric";
  // Binary form a s^2 + 2 h s t + c t^2 has a rational zero iff h^2 - ac is a square.
  const Rational disc = b(0, 1) * b(0, 1) - b(0, 0) * b(1, 1);
  return is_rational_square(disc) ? "rational-point" : "conjugate-pair";
}

}  // namespace

HypothesisReport hypothesis_report(const NormalizedSystem& sys, const DiscriminantData& d) {
  HypothesisReport r;
  r.n = sys.n();
  r.non_conical = is_non_conical(sys.F, sys.G);
  if (!r.non_conical) throw Error(Errc::Conical, "F and G have a common radical vector");
  r.rank_F = form_rank(sys.F);
  r.rank_G = form_rank(sys.G);
  const std::size_t n = r.n;
  if (d.identically_zero) {
    r.min_member_rank = std::min(r.rank_F, r.rank_G);
    r.route = n >= 6 ? Route::SingularKPoint : Route::DiscriminantZero;
    r.hypothesis_failures.push_back("det(F + lambda G) vanishes identically");
    return r;
  }
  r.min_member_rank = d.min_member_rank();
  std::size_t affine_min = n + 1;
  for (const auto& rec : d.records)
    if (!rec.at_infinity) affine_min = std::min(affine_min, rec.rank);

  if (n == 4) {
    r.route = Route::P4BaseCase;
    if (r.rank_F != 5) r.hypothesis_failures.push_back("rank F != 5");
    if (r.rank_G < 3) r.hypothesis_failures.push_back("rank G < 3");
    // G vanishes on the plane, so det G = 0 and D(mu, lambda) = mu * (quartic in P).
    if (!d.factorization.is_irreducible()) r.hypothesis_failures.push_back("discriminant polynomial is reducible");
    r.rank_four_pair = rank_four_pair_check(d);
    if (r.rank_four_pair->holds) r.hypothesis_failures.push_back("rank-4 pair present");
    return r;
  }
  if (n == 5) {
    if (affine_min < 5) r.hypothesis_failures.push_back("some member F + lambda G has rank < 5");
    if (r.rank_G <= 3) {
      r.route = Route::LowRankGElementary;
    } else if (r.rank_G == 4) {
      r.route = Route::Rank4GSingularLine;
      r.singular_line_subcase = singular_line_subcase(sys);
    } else {
      r.route = Route::P5HyperplaneDescent;
    }
    return r;
  }
  if (n < 4) throw Error(Errc::WrongDimension, "ambient dimension must be at least 4");

  r.census = low_rank_census(d);
  const auto& c = *r.census;
  if (!c.inequality_ok) throw Error(Errc::Internal, "census inequality violated");
  if (c.s == 0) {
    r.route = r.rank_G + 2 <= n ? Route::LowRankGElementary : Route::PnHyperplaneDescent;
  } else if (c.s == 1) {
    r.route = Route::LowRankGElementary;
  } else {
    // s = 2: one record with a quadratic factor, or two rational records.
    const bool conjugate = c.members.size() == 1 && c.members[0].kind == CensusMember::Kind::ConjugatePair;
    if (conjugate) {
      r.route = Route::S2ConjugateWeil;
      r.hyperplane_drop = n == 7;
    } else {
      r.route = Route::S2Rational;
    }
  }
  return r;
}

HypothesisReport hypothesis_report(const NormalizedSystem& sys) {
  if (sys.degenerate) {
    DiscriminantData d;
    d.dim = sys.F.dim();
    d.identically_zero = true;
    return hypothesis_report(sys, d);
  }
  return hypothesis_report(sys, discriminant(sys.pencil()));
}

}  // namespace qpencil
