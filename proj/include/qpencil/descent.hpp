#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpencil/local.hpp"
#include "qpencil/normalization.hpp"
#include "qpencil/pencil.hpp"

namespace qpencil {

/// Primitive, sign-canonical integer vectors (first nonzero entry positive)
/// in increasing height. Within a height: fewer nonzero entries first, then
/// support positions lexicographically, then entries in the order 1, -1, 2, -2, ...
class ProjectiveEnumerator {
 public:
  ProjectiveEnumerator(std::size_t length, unsigned height_bound);
  std::optional<std::vector<Integer>> next();

 private:
  bool advance_values();
  bool advance_support();
  bool start_height();
  bool acceptable() const;

  std::size_t len_;
  long bound_;
  long h_ = 0;
  std::size_t k_ = 0;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> idx_;
  bool started_ = false;
  bool done_ = false;
};

/// Hyperplane sum_{i >= 3} alpha_i x_i = 0 containing the standard plane.
struct HyperplaneCandidate {
  std::vector<Integer> alphas;  ///< (alpha_3, ..., alpha_n)
  Integer height;
  /// Normal vector in all n+1 coordinates.
  std::vector<Rational> normal() const;
};

class HyperplaneStream {
 public:
  HyperplaneStream(std::size_t n, unsigned height_bound) : e_(n - 2, height_bound) {}
  std::optional<HyperplaneCandidate> next();

 private:
  ProjectiveEnumerator e_;
};

/// All candidates (for small bounds; the stream is lazy).
std::vector<HyperplaneCandidate> enumerate_hyperplanes(std::size_t n, unsigned height_bound);

/// Columns: e0, e1, e2 and an integral basis of {alpha . x = 0} in x3..xn.
QMatrix hyperplane_basis(std::size_t n, const HyperplaneCandidate& h);

struct V0Certificate {
  bool accepted = false;
  /// First failing clause: 'a' (rank F|H != n), 'b' (H contains the vertex
  /// of a corank-one member, over its field),
  /// 'c' (rank G|H < 3); 0 if accepted.
  char failed_clause = 0;
  std::size_t rank_F = 0, rank_G = 0;
  bool radicals_avoided = false;
};

/// Checks the three clauses in order and stops at the first failure.
V0Certificate v0_membership(const QuadraticForm& f, const QuadraticForm& g, const DiscriminantData& d,
                            const HyperplaneCandidate& h);

/// Rank of [grad F(P); grad G(P); H] is 3. Throws PointNotOnVariety unless F(P) = G(P) = 0.
bool transversality_check(const QuadraticForm& f, const QuadraticForm& g, const HyperplaneCandidate& h,
                          const ProjectivePoint& p);

struct RestrictedDiscriminant {
  QuadraticForm F, G;  ///< restrictions in the hyperplane_basis coordinates
  DiscriminantData data;
  /// dim(H) = 5 and P|H irreducible. G|H vanishes on the plane, so the binary
  /// quintic D|H is mu times the homogenized P|H, which has degree <= 4.
  bool irreducible_quintic = false;
};

RestrictedDiscriminant restricted_discriminant(const QuadraticForm& f, const QuadraticForm& g,
                                               const HyperplaneCandidate& h);

/// Residual conic of the bundle Y -> P^1 over t = (t0 : t1), for n = 4.
struct FiberConic {
  Integer t0, t1;
  QuadraticForm residual;
  /// 5 x 3, integral columns: zeros of `residual` map to points of Y.
  QMatrix embedding;
};

/// H_t = {t0 x3 + t1 x4 = 0} with (x3, x4) = w (t1, -t0). Throws DegenerateFiber if
/// G vanishes on H_t, InvalidArgument unless dim 5 and G vanishes on the standard plane.
FiberConic residual_conic_fiber(const QuadraticForm& f, const QuadraticForm& g, const Integer& t0,
                                const Integer& t1);
FiberConic residual_conic_fiber(const NormalizedSystem& sys, const Integer& t0, const Integer& t1);

/// Quadratic field data for the conjugate pair of rank-4 members F + theta G.
struct WeilSplitData {
  QuotientField field{UniPoly{0, 1}};
  /// Radical of F + theta G (7 x 3 over K) and its conjugate.
  Matrix<UniPoly> radical, conjugate_radical;
  /// Adapted coordinates x = basis * u with u = (radical, conjugate radical, x_r).
  Matrix<UniPoly> basis;
  std::size_t rational_index = 0;  ///< standard vector used as the last column
  /// F + theta G = T(u3, u4, u5, u6) in adapted coordinates.
  Matrix<UniPoly> T;
};

/// Galois conjugation in a quadratic field.
UniPoly conjugate(const QuotientField& k, const UniPoly& a);
/// Square root in a quadratic field, if it exists.
std::optional<UniPoly> quadratic_sqrt(const QuotientField& k, const UniPoly& a);

/// Throws NotConjugateCase, PlanesNotDisjoint or WrongDimension (dim != 7).
WeilSplitData weil_restriction_split(const QuadraticForm& f, const QuadraticForm& g, const CensusReport& c);
/// The rational point basis * (sigma(w), w, 1) for a K-point (w, s) on T = 0.
/// Throws PointAtInfinity if s = 0, InvalidArgument if T(w, s) != 0.
ProjectivePoint weil_point_transfer(const WeilSplitData& w, const std::vector<UniPoly>& kpoint);
/// Points (w0, w1, w2, 1) on T = 0 with w0, w1 of coefficient height <= bound;
/// w2 is solved exactly.
std::optional<std::vector<UniPoly>> weil_kpoint_search(const WeilSplitData& w, unsigned bound);
/// F and G rebuilt from T, its conjugate and the basis.
std::pair<QuadraticForm, QuadraticForm> weil_reconstruct(const WeilSplitData& w);

struct SearchConfig {
  unsigned height_bound = 50;
  std::uint64_t prime_budget = 2'000'000;
  /// Accepted hyperplanes tried per level before giving up on that level.
  unsigned max_hyperplanes = 6;
  /// Candidates examined per level (accepted or not).
  unsigned max_candidates = 4000;
  /// Fiber parameters tried per P^4 section.
  unsigned max_fibers = 400;
  /// Coefficient bound for the K-point search of the Weil route.
  unsigned weil_bound = 3;
  /// p-adic lifting depth for obstruction certificates.
  unsigned padic_levels = 4;
};

struct HyperplaneStep {
  std::size_t n = 0;  ///< projective dimension before restriction
  Route route = Route::PnHyperplaneDescent;
  HyperplaneCandidate hyperplane;
  V0Certificate certificate;
  bool quintic_required = false;
  bool irreducible_quintic = false;
  std::uint64_t candidates_examined = 0;
};

struct FiberStep {
  Integer t0, t1;
  QuadraticForm residual;
  std::vector<PlaceVerdict> verdicts;
  ProjectivePoint conic_point;  ///< in residual coordinates
  std::uint64_t fibers_examined = 0;
  std::uint64_t degenerate_fibers = 0;
};

struct WeilStep {
  UniPoly modulus;
  std::vector<UniPoly> kpoint;
};

struct DescentTrace {
  Route route = Route::DiscriminantZero;
  /// "conic", "conic-bundle" (n = 4), "hyperplane-descent", "weil", "singular-point".
  std::string method;
  std::vector<HyperplaneStep> steps;
  std::optional<FiberStep> fiber;
  std::optional<WeilStep> weil;
  std::optional<ProjectivePoint> conic_point;  ///< cheap win, plane coordinates
  std::optional<Rational> singular_lambda;     ///< member whose kernel gave the point
  ProjectivePoint point;                       ///< original coordinates
  Rational check_F, check_G;                   ///< F0(point), G0(point): both 0
};

/// Local evidence at one place.
struct PlaceEvidence {
  Place place = Place::real();
  /// "smooth-point-mod-p", "obstructed", "no-definite-member (heuristic)",
  /// "undecided", "expected (large prime)".
  std::string status;
  std::uint64_t points = 0, smooth_points = 0;
};

struct ObstructionCertificate {
  enum class Kind { DefiniteRealMember, PadicEmpty };
  Kind kind = Kind::DefiniteRealMember;
  RealCertificate real;     ///< relative to (F0, G0)
  PadicCertificate padic;   ///< on the integral models of F0, G0
  unsigned max_level = 0;
  std::uint64_t budget = 0;
};

struct LocalEvidence {
  std::vector<PlaceEvidence> places;
  std::optional<ObstructionCertificate> obstruction;
};

/// Real place via definite members; primes p with p^(n+1) <= budget via exact
/// mod-p counts, lifting when no smooth point exists.
LocalEvidence local_evidence(const QuadraticForm& f0, const QuadraticForm& g0, const SearchConfig& cfg);
bool replay_obstruction(const QuadraticForm& f0, const QuadraticForm& g0, const ObstructionCertificate& c);

enum class SearchOutcome { PointFound, LocalObstruction, BoundsExhausted };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::BoundsExhausted;
  std::optional<ProjectivePoint> point;
  std::optional<DescentTrace> trace;
  LocalEvidence local;
  HypothesisReport hypotheses;
  std::uint64_t hyperplanes_examined = 0;
  std::uint64_t fibers_examined = 0;
};

/// Full pipeline. Returned points satisfy F0 = G0 = 0 exactly (checked).
SearchResult find_rational_point(const QuadraticForm& f0, const QuadraticForm& g0, const LinearSubspace& plane,
                                 const SearchConfig& cfg = {});

struct ReplayReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// Recomputes every certificate in the trace from the instance alone.
ReplayReport replay_trace(const QuadraticForm& f0, const QuadraticForm& g0, const LinearSubspace& plane,
                          const DescentTrace& trace);

struct PlantedInstance {
  QuadraticForm F, G;
  LinearSubspace plane;
  std::vector<Integer> point;
  std::uint64_t attempts = 0;
};

struct PlantedOptions {
  std::size_t n = 5;
  /// Gram matrix of the conic on the standard plane.
  QMatrix conic = QMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -3}});
  /// Entries in {-1, 0, 1} are drawn if empty; must not lie in the plane.
  std::vector<Integer> point;
  long height = 9;
  std::uint64_t seed = 1;
  std::optional<Route> route;
  bool require_smooth = true;
  unsigned max_retries = 500;
};

/// Throws RetriesExhausted, InvalidArgument. Deterministic in the options.
PlantedInstance generate_planted_instance(const PlantedOptions& opt);

struct WeilInstance {
  QuadraticForm F, G;
  LinearSubspace plane;
  UniPoly modulus;
  /// T in the adapted coordinates of weil_restriction_split.
  Matrix<UniPoly> T;
  /// Planted K-point (w, 1) on T = 0.
  std::vector<UniPoly> kpoint;
  std::uint64_t attempts = 0;
};

/// P^6 instance with two conjugate rank-4 members, built from a chosen T.
WeilInstance generate_weil_instance(std::uint64_t seed, long height = 3);

}  // namespace qpencil
