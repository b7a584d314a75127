#include "qpencil/pencil.hpp"

#include <algorithm>
#include <random>

#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"
#include "qpencil/number_theory.hpp"

namespace qpencil {

Pencil::Pencil(QuadraticForm f, QuadraticForm g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.dim() != g_.dim()) throw Error(Errc::DimensionMismatch, "pencil forms differ in dimension");
  if (f_.dim() == 0) throw Error(Errc::InvalidArgument, "empty pencil");
  // Proportional iff the 2 x dim^2 matrix of Gram entries has rank < 2.
  QMatrix stacked(2, f_.dim() * f_.dim());
  for (std::size_t i = 0; i < f_.dim(); ++i)
    for (std::size_t j = 0; j < f_.dim(); ++j) {
      stacked(0, i * f_.dim() + j) = f_(i, j);
      stacked(1, i * f_.dim() + j) = g_(i, j);
    }
  if (matrix_rank(stacked) < 2) throw Error(Errc::InvalidArgument, "pencil forms are proportional");
}

QuadraticForm Pencil::member(const Rational& lambda) const { return f_ + g_.scaled(lambda); }

Rational RankRecord::rational_root() const {
  if (at_infinity || factor.degree() != 1) {
    throw Error(Errc::InvalidArgument, "record is not a rational root");
  }
  return -factor.coeff(0) / factor.coeff(1);
}

std::size_t DiscriminantData::min_member_rank() const {
  std::size_t r = dim;
  for (const auto& rec : records) r = std::min(r, rec.rank);
  return r;
}

UniPoly pencil_determinant(const Pencil& p) {
  const std::size_t n = p.dim();
  Matrix<UniPoly> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = UniPoly(std::vector<Rational>{p.F()(i, j), p.G()(i, j)});
  // Bareiss: every intermediate entry is a minor, so the divisions are exact.
  UniPoly prev = UniPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return {};
      m.swap_rows(k, piv);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const UniPoly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        auto [q, r] = divmod(num, prev);
        if (!r.is_zero()) throw Error(Errc::Internal, "inexact Bareiss division");
        m(i, j) = std::move(q);
      }
      m(i, k) = UniPoly();
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

namespace {

RankRecord make_record(const QuotientField& field, const Matrix<UniPoly>& gram) {
  RankRecord rec;
  rec.field = field;
  rec.radical = kernel_basis(field, gram);
  rec.rank = gram.cols() - rec.radical.cols();
  return rec;
}

}  // namespace

DiscriminantData discriminant(const Pencil& p) {
  DiscriminantData d;
  d.dim = p.dim();
  d.P = pencil_determinant(p);
  if (d.P.is_zero()) {
    d.identically_zero = true;
    return d;
  }
  d.factorization = factor_poly(d.P);
  d.mu_multiplicity = static_cast<int>(d.dim) - d.P.degree();
  for (const auto& fac : d.factorization.factors) {
    const QuotientField field(fac.poly);
    RankRecord rec = make_record(field, member_matrix(field, p.F(), p.G(), field.generator()));
    rec.factor = fac.poly;
    rec.multiplicity = fac.multiplicity;
    d.records.push_back(std::move(rec));
  }
  const QuotientField rational(UniPoly{0, 1});
  RankRecord inf = make_record(rational, lift_matrix(rational, p.G().gram()));
  inf.at_infinity = true;
  inf.multiplicity = d.mu_multiplicity;
  d.records.push_back(std::move(inf));
  return d;
}

void require_nonzero(const DiscriminantData& d) {
  if (d.identically_zero) {
    throw Error(Errc::IdenticallyZeroDiscriminant, "det(F + lambda G) vanishes identically");
  }
}

bool multiplicity_bound_check(const DiscriminantData& d) {
  require_nonzero(d);
  for (const auto& rec : d.records) {
    if (static_cast<std::size_t>(rec.multiplicity) + rec.rank < d.dim) return false;
  }
  return true;
}

int total_discriminant_degree(const DiscriminantData& d) {
  int total = d.mu_multiplicity;
  for (const auto& rec : d.records)
    if (!rec.at_infinity) total += rec.factor.degree() * rec.multiplicity;
  return total;
}

CensusReport low_rank_census(const DiscriminantData& d) {
  require_nonzero(d);
  if (d.P(0) == 0) throw Error(Errc::PreconditionViolated, "census requires rank F = n+1");
  CensusReport out;
  out.g_rank = d.at_infinity().rank;
  for (const auto& rec : d.records) {
    if (rec.rank > 4 || rec.at_infinity) continue;
    CensusMember m;
    m.rank = rec.rank;
    m.factor = rec.factor;
    if (rec.factor.degree() == 1) {
      m.kind = CensusMember::Kind::RationalRoot;
      m.lambda = rec.rational_root();
    } else {
      m.kind = rec.factor.degree() == 2 ? CensusMember::Kind::ConjugatePair
                                        : CensusMember::Kind::HigherDegree;
      m.count = rec.factor.degree();
    }
    out.s += static_cast<std::size_t>(m.count);
    out.members.push_back(std::move(m));
  }
  // s (1 - 4/(n+1)) <= 1, cleared of denominators.
  const long n = static_cast<long>(d.n());
  out.inequality_ok = static_cast<long>(out.s) * (n - 3) <= n + 1;
  return out;
}

RankFourPairReport rank_four_pair_check(const DiscriminantData& d) {
  if (d.dim != 5) throw Error(Errc::WrongDimension, "rank-4 pair check is defined in P^4 only");
  require_nonzero(d);
  RankFourPairReport out;
  for (const auto& rec : d.records) {
    if (rec.rank != 4) continue;
    if (rec.degree() == 1) {
      if (out.rational_pair.size() < 2) {
        out.rational_pair.push_back(
            rec.at_infinity ? RationalMember{true, 0} : RationalMember{false, rec.rational_root()});
      }
    } else if (rec.degree() == 2) {
      if (out.quadratic_factor.is_zero()) out.quadratic_factor = rec.factor;
    } else {
      out.notes.push_back("higher-degree rank-4 member over " + rec.factor.to_string("t") +
                          ", pair condition not triggered");
    }
  }
  if (out.rational_pair.size() == 2) {
    out.holds = true;
    out.witness = RankFourPairReport::Witness::RationalPair;
    out.quadratic_factor = UniPoly();
  } else if (!out.quadratic_factor.is_zero()) {
    out.holds = true;
    out.witness = RankFourPairReport::Witness::QuadraticFactor;
    out.rational_pair.clear();
  } else {
    out.rational_pair.clear();
  }
  return out;
}

SmoothnessReport smoothness_test(const Pencil& p, const DiscriminantData& d) {
  SmoothnessReport out;
  out.smooth = !d.identically_zero && d.mu_multiplicity <= 1 &&
               std::all_of(d.factorization.factors.begin(), d.factorization.factors.end(),
                           [](const Factor& f) { return f.multiplicity == 1; });

  // Advisory: Jacobian rank at random points of X mod p.
  for (modp::u64 q = 11; q < 200; q += 2) {
    if (!is_prime(Integer(static_cast<unsigned long>(q)))) continue;
    const auto f = modp::GramModP::make(p.F().gram(), q);
    const auto g = modp::GramModP::make(p.G().gram(), q);
    if (!f || !g) continue;
    out.sample_prime = q;
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<modp::u64> dist(0, q - 1);
    std::vector<modp::u64> x(p.dim());
    for (int trial = 0; trial < 40000 && out.sampled_points < 20; ++trial) {
      bool nonzero = false;
      for (auto& xi : x) {
        xi = dist(rng);
        nonzero = nonzero || xi != 0;
      }
      if (!nonzero || f->evaluate(x) != 0 || g->evaluate(x) != 0) continue;
      ++out.sampled_points;
      if (modp::rank({f->half_gradient(x), g->half_gradient(x)}, q) < 2) ++out.singular_samples;
    }
    break;
  }
  return out;
}

SmoothnessReport smoothness_test(const Pencil& p) { return smoothness_test(p, discriminant(p)); }

}  // namespace qpencil
