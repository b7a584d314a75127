#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpencil/quadratic_form.hpp"

namespace qpencil {

/// The real place or a finite prime.
class Place {
 public:
  static Place real() { return Place(); }
  /// Throws InvalidArgument unless p is prime.
  static Place prime(const Integer& p);

  bool is_real() const { return real_; }
  const Integer& p() const { return p_; }
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.real_ == b.real_ && a.p_ == b.p_; }
  /// The real place first, then primes in increasing order.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.real_ != b.real_) return a.real_;
    return a.p_ < b.p_;
  }

 private:
  Place() = default;
  bool real_ = true;
  Integer p_ = 0;
};

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// True iff x is a nonzero square in Q_v.
bool is_local_square(const Rational& x, const Place& v);

/// Diagonal Legendre form a X^2 + b Y^2 + c Z^2 with a, b, c nonzero,
/// squarefree and pairwise coprime, plus the transcript back to the form it
/// was reduced from: original(T z) = scale * (a z0^2 + b z1^2 + c z2^2).
struct TernaryForm {
  Integer a, b, c;
  QMatrix transcript;
  Rational scale;
  QuadraticForm original;

  /// Throws NotSmoothConic unless q has rank 3.
  static TernaryForm from_form(const QuadraticForm& q);
  static TernaryForm diagonal(const Integer& a, const Integer& b, const Integer& c);
  Rational evaluate_reduced(const std::vector<Integer>& z) const;
};

struct PlaceVerdict {
  Place place = Place::real();
  bool solvable = true;
};

struct LocalReport {
  /// Verdicts over the bad set {inf, 2} ∪ {p | abc}, in place order. Every
  /// other place is solvable by rule.
  std::vector<PlaceVerdict> verdicts;
  bool globally_solvable = true;
  std::vector<Place> failing_places() const;
};

LocalReport conic_local_report(const TernaryForm& t);

/// Exhaustive search box for the reduced equation (Holzer bounds
/// |X| <= sqrt|bc|, |Y| <= sqrt|ac|, |Z| <= sqrt|ab|).
struct HolzerBounds {
  Integer x, y, z;
};
HolzerBounds holzer_bounds(const TernaryForm& t);

/// How the conic point was found.
enum class ConicMethod { HolzerSearch, Descent };

struct ConicPoint {
  ProjectivePoint reduced;   ///< solution of a X^2 + b Y^2 + c Z^2 = 0
  ProjectivePoint original;  ///< the same point in the original form's coordinates
  ConicMethod method = ConicMethod::HolzerSearch;
};

/// Throws NotLocallySolvable (listing the failing places) if some place fails.
ConicPoint conic_rational_point_detailed(const TernaryForm& t);
/// Point on the original form.
ProjectivePoint conic_rational_point(const TernaryForm& t);

/// Search-space size above which conic_rational_point switches from the
/// exhaustive Holzer search to Legendre descent.
inline constexpr unsigned long kHolzerSearchLimit = 4'000'000;

/// Whether F has a nontrivial zero over Q_v. Degenerate forms are isotropic.
bool quadric_isotropy(const QuadraticForm& f, const Place& v);

struct ModpCount {
  std::uint64_t prime = 0;
  std::uint64_t points = 0;         ///< all points of {F = G = 0} over F_p
  std::uint64_t smooth_points = 0;  ///< points with Jacobian of rank 2
  /// Lexicographically least smooth point (first nonzero coordinate 1).
  std::optional<std::vector<std::uint64_t>> sample;
};

/// Exact enumeration of P^n(F_p) on the primitive integral models of F and G.
/// Throws BudgetExceeded if p^(n+1) > budget.
ModpCount modp_smooth_point_count(const QuadraticForm& f, const QuadraticForm& g, std::uint64_t p,
                                  std::uint64_t budget);

/// Primitive integral coefficient model: coeffs(i, j), i <= j, of the
/// polynomial c * F with c > 0 chosen so the coefficients are coprime integers.
std::vector<std::vector<Integer>> integral_model(const QuadraticForm& f);

/// Certificate that X(Q_p) is empty: no primitive solution of F = G = 0
/// modulo p^level. `surviving` lists the number of primitive residue classes
/// surviving at each level 1..level (the last entry is 0).
struct PadicCertificate {
  std::uint64_t prime = 0;
  unsigned level = 0;
  std::vector<std::uint64_t> surviving;
};

/// Lifts primitive solutions level by level up to max_level. Returns a
/// certificate if none survive; nullopt otherwise (including when the work
/// budget is exceeded).
std::optional<PadicCertificate> padic_emptiness(const QuadraticForm& f, const QuadraticForm& g,
                                                std::uint64_t p, unsigned max_level,
                                                std::uint64_t budget);

/// A member mu F + lambda G with a definite Gram matrix: X(R) is empty.
struct RealCertificate {
  bool at_infinity = false;  ///< the member is G
  Rational lambda;           ///< otherwise the member is F + lambda G
};

/// Exact search: one rational sample per interval between consecutive real
/// roots of det(F + lambda G), plus G itself.
std::optional<RealCertificate> definite_member(const QuadraticForm& f, const QuadraticForm& g);
bool verify_real_certificate(const QuadraticForm& f, const QuadraticForm& g, const RealCertificate& c);

/// Rational points separating the real roots of a nonzero polynomial: one
/// point below all roots, one between each consecutive pair, one above. None
/// of them is a root. Empty set of roots gives {0}.
std::vector<Rational> real_root_separators(const UniPoly& p);

}  // namespace qpencil
