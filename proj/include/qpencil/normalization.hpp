#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpencil/pencil.hpp"
#include "qpencil/quadratic_form.hpp"

namespace qpencil {

/// A plane Pi with X ∩ Pi a smooth conic {q = 0}.
struct ConicConfiguration {
  LinearSubspace plane;
  /// q in the coordinates of the plane basis.
  QuadraticForm conic_form;
  /// F0|Pi = a q and G0|Pi = b q.
  Rational a, b;
};

/// Throws PlaneContained, NotSmoothConic or NotAConic.
ConicConfiguration verify_conic_plane(const QuadraticForm& f0, const QuadraticForm& g0,
                                      const LinearSubspace& plane);

/// Pencil in normal form: Pi = {x3 = ... = xn = 0}, F|Pi of rank 3, G|Pi = 0,
/// and F of maximal rank in the pencil.
struct NormalizedSystem {
  QuadraticForm F, G;
  /// x_original = to_original * x_normalized.
  QMatrix to_original;
  /// x_normalized = coordinate_change * x_original.
  QMatrix coordinate_change;
  /// Rows express F and G in terms of (F0, G0) pulled back by to_original.
  QMatrix pencil_change;
  /// F = B + shift * G where B is the base form of the pencil.
  Rational shift;
  /// det(F + lambda G) vanishes identically; F is then not of full rank.
  bool degenerate = false;

  std::size_t n() const { return F.dim() - 1; }
  Pencil pencil() const { return Pencil(F, G); }
  /// F restricted to the standard plane.
  QuadraticForm conic() const;
  std::vector<Rational> to_original_coords(const std::vector<Rational>& y) const;
};

/// Throws DiscriminantZero if every member of the pencil is singular.
NormalizedSystem normalize_pencil(const QuadraticForm& f0, const QuadraticForm& g0,
                                  const ConicConfiguration& cfg);
/// As normalize_pencil, but reports a vanishing discriminant through `degenerate`.
NormalizedSystem normalize_pencil_unchecked(const QuadraticForm& f0, const QuadraticForm& g0,
                                            const ConicConfiguration& cfg);

enum class Route {
  P4BaseCase,            ///< conic bundle over P^1 in P^4
  P5HyperplaneDescent,   ///< P^5 with rk G >= 5: irreducible hyperplane sections
  PnHyperplaneDescent,   ///< n >= 6, no low-rank member
  LowRankGElementary,    ///< elementary case: low-rank G, or one low-rank rational member
  Rank4GSingularLine,    ///< P^5 with rk G = 4: G is a cone over a line
  S2Rational,            ///< two rational rank-4 members
  S2ConjugateWeil,       ///< two conjugate rank-4 members: Weil restriction
  SingularKPoint,        ///< det vanishes identically, n >= 6
  DiscriminantZero,      ///< det vanishes identically, n < 6
};

std::string route_name(Route r);
/// Throws InvalidInput for unknown names.
Route parse_route(const std::string& name);

struct HypothesisReport {
  std::size_t n = 0;
  bool non_conical = true;
  std::size_t rank_F = 0, rank_G = 0, min_member_rank = 0;
  Route route = Route::DiscriminantZero;
  std::vector<std::string> hypothesis_failures;
  std::optional<CensusReport> census;
  std::optional<RankFourPairReport> rank_four_pair;
  /// For Rank4GSingularLine: "rational-point", "conjugate-pair" or "line-on-quadric".
  std::string singular_line_subcase;
  /// For S2ConjugateWeil with n = 7: descend to a hyperplane section first.
  bool hyperplane_drop = false;
};

/// Throws Conical if F and G share a radical vector.
HypothesisReport hypothesis_report(const NormalizedSystem& sys, const DiscriminantData& d);
HypothesisReport hypothesis_report(const NormalizedSystem& sys);

/// True iff ker F ∩ ker G = 0.
bool is_non_conical(const QuadraticForm& f, const QuadraticForm& g);

}  // namespace qpencil
