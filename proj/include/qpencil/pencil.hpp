#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpencil/factor.hpp"
#include "qpencil/field.hpp"
#include "qpencil/quadratic_form.hpp"

namespace qpencil {

/// The pencil F + lambda G. The forms must have equal dimension and must not be
/// proportional (G = 0 counts as proportional).
class Pencil {
 public:
  Pencil(QuadraticForm f, QuadraticForm g);

  const QuadraticForm& F() const noexcept { return f_; }
  const QuadraticForm& G() const noexcept { return g_; }
  std::size_t dim() const noexcept { return f_.dim(); }
  /// Projective dimension of the ambient space.
  std::size_t n() const noexcept { return f_.dim() - 1; }
  QuadraticForm member(const Rational& lambda) const;

 private:
  QuadraticForm f_, g_;
};

/// Rank data for one point (mu : lambda) of the discriminant locus.
///
/// For finite members the record corresponds to an irreducible factor m of
/// P and the member is F + t G over Q[t]/(m). The member at (0 : 1) is G
/// itself; its record has `at_infinity` set and field Q[t]/(t).
struct RankRecord {
  bool at_infinity = false;
  UniPoly factor;
  int multiplicity = 0;
  std::size_t rank = 0;
  QuotientField field{UniPoly{0, 1}};
  /// Kernel basis (columns) of the member's Gram matrix over `field`.
  Matrix<UniPoly> radical;

  int degree() const { return at_infinity ? 1 : factor.degree(); }
  /// The root lambda, for degree one factors.
  Rational rational_root() const;
};

struct DiscriminantData {
  std::size_t dim = 0;
  UniPoly P;
  bool identically_zero = false;
  Factorization factorization;
  /// Multiplicity of the mu factor of D(mu, lambda) = mu^(n+1) P(lambda / mu).
  int mu_multiplicity = 0;
  /// One record per irreducible factor of P, in factorization order, followed
  /// by the record for G. Empty if P is identically zero.
  std::vector<RankRecord> records;

  std::size_t n() const { return dim - 1; }
  const RankRecord& at_infinity() const { return records.back(); }
  /// Minimum rank over all members (over the algebraic closure).
  std::size_t min_member_rank() const;
};

/// det(F + lambda G) by fraction-free elimination over Q[lambda].
UniPoly pencil_determinant(const Pencil& p);

/// Computes P, its factorization and the rank profile. A vanishing P is
/// reported through `identically_zero`; use require_nonzero to turn it into
/// an error.
DiscriminantData discriminant(const Pencil& p);
void require_nonzero(const DiscriminantData& d);

/// True iff every record has multiplicity >= (n+1) - rank.
bool multiplicity_bound_check(const DiscriminantData& d);

/// Sum of deg(m) * multiplicity over the records plus the mu multiplicity.
int total_discriminant_degree(const DiscriminantData& d);

struct CensusMember {
  enum class Kind { RationalRoot, ConjugatePair, HigherDegree };
  Kind kind = Kind::RationalRoot;
  UniPoly factor;
  Rational lambda;  ///< for RationalRoot
  std::size_t rank = 0;
  /// Number of geometric members: deg(m).
  int count = 1;
};

struct CensusReport {
  /// Number of lambda in the algebraic closure with rank(F + lambda G) <= 4.
  std::size_t s = 0;
  std::vector<CensusMember> members;
  bool inequality_ok = true;
  /// G itself is not of the form F + lambda G and is not counted in s; its
  /// rank is recorded so callers can see a low-rank member at infinity.
  std::size_t g_rank = 0;
  bool g_low_rank() const { return g_rank <= 4; }
};

/// Members F + lambda G of rank <= 4. Requires P != 0 and rank F = n+1 (PreconditionViolated).
CensusReport low_rank_census(const DiscriminantData& d);

struct RationalMember {
  bool at_infinity = false;
  Rational lambda;
  friend bool operator==(const RationalMember&, const RationalMember&) = default;
};

struct RankFourPairReport {
  enum class Witness { None, RationalPair, QuadraticFactor };
  bool holds = false;
  Witness witness = Witness::None;
  std::vector<RationalMember> rational_pair;
  UniPoly quadratic_factor;
  /// Informational flags, e.g. rank-4 members defined over larger fields.
  std::vector<std::string> notes;
};

/// Existence of two non-proportional rank-4 members, both rational or
/// conjugate over a quadratic field. Only defined in P^4 (WrongDimension).
RankFourPairReport rank_four_pair_check(const DiscriminantData& d);

struct SmoothnessReport {
  /// Verdict: D(mu, lambda) squarefree of degree n+1.
  bool smooth = false;
  /// Advisory Jacobian sample modulo a small prime.
  std::uint64_t sample_prime = 0;
  std::size_t sampled_points = 0;
  std::size_t singular_samples = 0;
};

SmoothnessReport smoothness_test(const Pencil& p, const DiscriminantData& d);
SmoothnessReport smoothness_test(const Pencil& p);

}  // namespace qpencil
