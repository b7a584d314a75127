#include "qpencil/descent.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"
#include "qpencil/number_theory.hpp"

namespace qpencil {

// ---------------------------------------------------------------------------
// Enumeration

ProjectiveEnumerator::ProjectiveEnumerator(std::size_t length, unsigned height_bound)
    : len_(length), bound_(static_cast<long>(height_bound)) {}

namespace {

long entry_value(std::size_t i) {
  const long mag = static_cast<long>(i / 2) + 1;
  return i % 2 == 0 ? mag : -mag;
}

}  // namespace

bool ProjectiveEnumerator::start_height() {
  k_ = 1;
  support_ = {0};
  idx_ = {0};
  return true;
}

bool ProjectiveEnumerator::advance_values() {
  const auto top = static_cast<std::size_t>(2 * h_);
  for (std::size_t pos = k_; pos-- > 0;) {
    idx_[pos] += pos == 0 ? 2 : 1;  // the leading entry stays positive
    if (idx_[pos] < top) return true;
    idx_[pos] = 0;
  }
  return false;
}

bool ProjectiveEnumerator::advance_support() {
  // Next k-subset of {0..len-1} in lexicographic order.
  for (std::size_t i = k_; i-- > 0;) {
    if (support_[i] < len_ - k_ + i) {
      ++support_[i];
      for (std::size_t j = i + 1; j < k_; ++j) support_[j] = support_[j - 1] + 1;
      std::fill(idx_.begin(), idx_.end(), 0);
      return true;
    }
  }
  return false;
}

bool ProjectiveEnumerator::acceptable() const {
  long g = 0, mx = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    const long v = std::labs(entry_value(idx_[i]));
    mx = std::max(mx, v);
    g = std::gcd(g, v);
  }
  return mx == h_ && g == 1;
}

std::optional<std::vector<Integer>> ProjectiveEnumerator::next() {
  if (done_) return std::nullopt;
  auto step = [&]() -> bool {
    if (advance_values()) return true;
    if (advance_support()) return true;
    if (++k_ <= len_) {
      support_.resize(k_);
      for (std::size_t j = 0; j < k_; ++j) support_[j] = j;
      idx_.assign(k_, 0);
      return true;
    }
    if (++h_ > bound_) return false;
    return start_height();
  };
  if (!started_) {
    started_ = true;
    if (bound_ < 1 || len_ == 0) {
      done_ = true;
      return std::nullopt;
    }
    h_ = 1;
    start_height();
  } else if (!step()) {
    done_ = true;
    return std::nullopt;
  }
  while (!acceptable()) {
    if (!step()) {
      done_ = true;
      return std::nullopt;
    }
  }
  std::vector<Integer> out(len_, 0);
  for (std::size_t i = 0; i < k_; ++i) out[support_[i]] = entry_value(idx_[i]);
  return out;
}

std::vector<Rational> HyperplaneCandidate::normal() const {
  std::vector<Rational> v(alphas.size() + 3, 0);
  for (std::size_t i = 0; i < alphas.size(); ++i) v[3 + i] = alphas[i];
  return v;
}

std::optional<HyperplaneCandidate> HyperplaneStream::next() {
  auto v = e_.next();
  if (!v) return std::nullopt;
  HyperplaneCandidate h;
  h.height = 0;
  for (const auto& a : *v) h.height = std::max(h.height, Integer(abs(a)));
  h.alphas = std::move(*v);
  return h;
}

std::vector<HyperplaneCandidate> enumerate_hyperplanes(std::size_t n, unsigned height_bound) {
  if (n < 3) throw Error(Errc::WrongDimension, "hyperplanes through the plane need n >= 3");
  std::vector<HyperplaneCandidate> out;
  HyperplaneStream s(n, height_bound);
  while (auto h = s.next()) out.push_back(std::move(*h));
  return out;
}

QMatrix hyperplane_basis(std::size_t n, const HyperplaneCandidate& h) {
  if (h.alphas.size() + 2 != n) throw Error(Errc::DimensionMismatch, "hyperplane has the wrong length");
  std::size_t k = h.alphas.size();
  for (std::size_t i = 0; i < h.alphas.size(); ++i) {
    if (h.alphas[i] == 0) continue;
    if (k == h.alphas.size() || abs(h.alphas[i]) < abs(h.alphas[k])) k = i;
  }
  if (k == h.alphas.size()) throw Error(Errc::InvalidArgument, "zero hyperplane");
  std::vector<std::vector<Rational>> cols;
  for (std::size_t e = 0; e < 3; ++e) {
    std::vector<Rational> v(n + 1, 0);
    v[e] = 1;
    cols.push_back(v);
  }
  for (std::size_t j = 0; j < h.alphas.size(); ++j) {
    if (j == k) continue;
    const Integer g = gcd(h.alphas[k], h.alphas[j]);
    std::vector<Rational> v(n + 1, 0);
    v[3 + j] = Rational(h.alphas[k] / g);
    v[3 + k] = Rational(-h.alphas[j] / g);
    cols.push_back(v);
  }
  return QMatrix::from_columns(cols, n + 1);
}

// ---------------------------------------------------------------------------
// Hyperplane certificates

V0Certificate v0_membership(const QuadraticForm& f, const QuadraticForm& g, const DiscriminantData& d,
                            const HyperplaneCandidate& h) {
  const std::size_t n = f.dim() - 1;
  const QMatrix e = hyperplane_basis(n, h);
  V0Certificate c;
  c.rank_F = form_rank(restrict_form(f, e));
  if (c.rank_F != n) {
    c.failed_clause = 'a';
    return c;
  }
  // Corank-one members: their radicals are the finitely many vertex points.
  for (const auto& rec : d.records) {
    if (rec.radical.cols() != 1) continue;
    const QuotientField& k = rec.field;
    for (std::size_t col = 0; col < rec.radical.cols(); ++col) {
      UniPoly s = k.zero();
      for (std::size_t i = 0; i < h.alphas.size(); ++i) {
        s = k.add(s, k.mul(k.from_rational(Rational(h.alphas[i])), rec.radical(3 + i, col)));
      }
      if (k.is_zero(s)) {
        c.failed_clause = 'b';
        return c;
      }
    }
  }
  c.radicals_avoided = true;
  c.rank_G = form_rank(restrict_form(g, e));
  if (c.rank_G < 3) {
    c.failed_clause = 'c';
    return c;
  }
  c.accepted = true;
  return c;
}

bool transversality_check(const QuadraticForm& f, const QuadraticForm& g, const HyperplaneCandidate& h,
                          const ProjectivePoint& p) {
  const auto x = p.to_rationals();
  if (f.evaluate(x) != 0 || g.evaluate(x) != 0) {
    throw Error(Errc::PointNotOnVariety, p.to_string() + " is not on F = G = 0");
  }
  const QMatrix m = QMatrix::from_rows({f.gradient(x), g.gradient(x), h.normal()});
  return matrix_rank(m) == 3;
}

RestrictedDiscriminant restricted_discriminant(const QuadraticForm& f, const QuadraticForm& g,
                                               const HyperplaneCandidate& h) {
  const QMatrix e = hyperplane_basis(f.dim() - 1, h);
  RestrictedDiscriminant r{restrict_form(f, e), restrict_form(g, e), {}, false};
  r.data = discriminant(Pencil(r.F, r.G));
  r.irreducible_quintic = r.F.dim() == 5 && !r.data.identically_zero && r.data.P.degree() >= 1 &&
                          r.data.factorization.is_irreducible();
  return r;
}

// ---------------------------------------------------------------------------
// Conic bundle fibers

FiberConic residual_conic_fiber(const QuadraticForm& f, const QuadraticForm& g, const Integer& t0,
                                const Integer& t1) {
  if (f.dim() != 5 || g.dim() != 5) throw Error(Errc::InvalidArgument, "fibers are defined in P^4");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (g(i, j) != 0) throw Error(Errc::InvalidArgument, "G does not vanish on the standard plane");
  if (t0 == 0 && t1 == 0) throw Error(Errc::InvalidArgument, "fiber parameter (0 : 0)");
  std::vector<Rational> h(5, 0);
  h[3] = t1;
  h[4] = -t0;
  // G on H_t is w * M_G with M_G = 2 sum_i G(e_i, h) y_i + G(h, h) w.
  std::vector<Rational> mg(4, 0);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Rational> e(5, 0);
    e[i] = 1;
    mg[i] = 2 * g.bilinear(e, h);
  }
  mg[3] = g.evaluate(h);
  if (std::all_of(mg.begin(), mg.end(), [](const Rational& x) { return x == 0; })) {
    throw Error(Errc::DegenerateFiber, "G vanishes on the hyperplane of (" + to_string(t0) + " : " +
                                           to_string(t1) + ")");
  }
  const QMatrix ker = kernel_basis(QMatrix::from_rows({mg}));
  std::vector<std::vector<Rational>> cols;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    const auto iv = primitive_integer_vector(ker.column(c));
    cols.emplace_back(iv.begin(), iv.end());
  }
  const QMatrix param = QMatrix::from_columns(
      {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, h}, 5);
  FiberConic out;
  out.t0 = t0;
  out.t1 = t1;
  out.embedding = param * QMatrix::from_columns(cols, 4);
  out.residual = restrict_form(f, out.embedding);
  return out;
}

FiberConic residual_conic_fiber(const NormalizedSystem& sys, const Integer& t0, const Integer& t1) {
  return residual_conic_fiber(sys.F, sys.G, t0, t1);
}

// ---------------------------------------------------------------------------
// Weil restriction

namespace {

using KMatrix = Matrix<UniPoly>;

void require_quadratic(const QuotientField& k) {
  if (k.degree() != 2) throw Error(Errc::InvalidArgument, "quadratic field expected");
}

KMatrix conjugate_matrix(const QuotientField& k, const KMatrix& m) {
  KMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = conjugate(k, m(i, j));
  return out;
}

KMatrix hstack_k(const KMatrix& a, const KMatrix& b) {
  KMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

KMatrix inverse_k(const QuotientField& k, const KMatrix& m) {
  const std::size_t n = m.rows();
  KMatrix aug(n, 2 * n, k.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = k.one();
  }
  const auto ech = row_reduce(k, aug);
  if (ech.rank() < n || ech.pivot_cols[n - 1] >= n) throw Error(Errc::SingularMatrix, "singular over K");
  KMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

std::optional<Rational> as_rational(const UniPoly& a) {
  if (a.is_zero()) return Rational(0);
  if (a.degree() == 0) return a.coeff(0);
  return std::nullopt;
}

QuadraticForm rational_form(const KMatrix& m, const char* what) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto r = as_rational(m(i, j));
      if (!r) throw Error(Errc::Internal, std::string(what) + " is not rational");
      q(i, j) = *r;
    }
  return QuadraticForm(q);
}

UniPoly eval_t(const QuotientField& k, const KMatrix& t, const std::vector<UniPoly>& v) {
  UniPoly s = k.zero();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s = k.add(s, k.mul(k.mul(v[i], t(i, j)), v[j]));
  return s;
}

}  // namespace

UniPoly conjugate(const QuotientField& k, const UniPoly& a) {
  require_quadratic(k);
  const UniPoly r = k.reduce(a);
  const Rational c1 = k.modulus().coeff(1);
  const Rational p = r.coeff(0), q = r.coeff(1);
  return UniPoly(std::vector<Rational>{p - q * c1, -q});
}

std::optional<UniPoly> quadratic_sqrt(const QuotientField& k, const UniPoly& z) {
  require_quadratic(k);
  const UniPoly zr = k.reduce(z);
  if (zr.is_zero()) return zr;
  // theta = (-c1 + r) / 2 with r^2 = D, so z = A + B r.
  const Rational c1 = k.modulus().coeff(1), c0 = k.modulus().coeff(0);
  const Rational D = c1 * c1 - 4 * c0;
  const Rational A = zr.coeff(0) - zr.coeff(1) * c1 / 2, B = zr.coeff(1) / 2;
  Rational x, y;
  bool found = false;
  if (B == 0) {
    Rational s;
    if (is_rational_square(A, &s)) {
      x = s;
      y = 0;
      found = true;
    } else if (is_rational_square(A / D, &s)) {
      x = 0;
      y = s;
      found = true;
    }
  } else {
    Rational N;
    if (is_rational_square(A * A - D * B * B, &N)) {
      const std::array<Rational, 2> cands{Rational((A + N) / 2), Rational((A - N) / 2)};
      for (const Rational& cand : cands) {
        Rational s;
        if (cand != 0 && is_rational_square(cand, &s)) {
          x = s;
          y = B / (2 * s);
          found = true;
          break;
        }
      }
    }
  }
  if (!found) return std::nullopt;
  const UniPoly root = k.reduce(UniPoly(std::vector<Rational>{x + y * c1, 2 * y}));
  if (k.mul(root, root) != zr) throw Error(Errc::Internal, "quadratic square root check failed");
  return root;
}

WeilSplitData weil_restriction_split(const QuadraticForm& f, const QuadraticForm& g, const CensusReport& c) {
  if (f.dim() != 7) throw Error(Errc::WrongDimension, "the Weil split is defined in P^6");
  if (c.members.size() != 1 || c.members[0].kind != CensusMember::Kind::ConjugatePair) {
    throw Error(Errc::NotConjugateCase, "census is not a single conjugate pair");
  }
  WeilSplitData w;
  w.field = QuotientField(c.members[0].factor);
  const QuotientField& k = w.field;
  const UniPoly theta = k.generator();
  const KMatrix member = member_matrix(k, f, g, theta);
  w.radical = radical_subspace(member, k);
  if (w.radical.cols() != 3) throw Error(Errc::NotConjugateCase, "conjugate members are not of rank 4");
  w.conjugate_radical = conjugate_matrix(k, w.radical);
  const KMatrix conj_member = member_matrix(k, f, g, conjugate(k, theta));
  const KMatrix check = multiply(k, conj_member, w.conjugate_radical);
  for (const auto& e : check.data())
    if (!e.is_zero()) throw Error(Errc::Internal, "conjugate radical is not in the conjugate kernel");
  KMatrix b = hstack_k(w.radical, w.conjugate_radical);
  if (matrix_rank(k, b) != 6) throw Error(Errc::PlanesNotDisjoint, "singular planes meet");
  for (std::size_t e = 0; e < 7; ++e) {
    KMatrix col(7, 1, k.zero());
    col(e, 0) = k.one();
    KMatrix trial = hstack_k(b, col);
    if (matrix_rank(k, trial) == 7) {
      w.basis = std::move(trial);
      w.rational_index = e;
      break;
    }
  }
  const KMatrix full = multiply(k, multiply(k, w.basis.transpose(), member), w.basis);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      if ((i < 3 || j < 3) && !full(i, j).is_zero()) throw Error(Errc::Internal, "adapted form has radical terms");
  w.T = full.submatrix({3, 4, 5, 6}, {3, 4, 5, 6});
  return w;
}

ProjectivePoint weil_point_transfer(const WeilSplitData& w, const std::vector<UniPoly>& kpoint) {
  const QuotientField& k = w.field;
  if (kpoint.size() != 4) throw Error(Errc::DimensionMismatch, "K-point needs 4 coordinates");
  if (k.is_zero(k.reduce(kpoint[3]))) throw Error(Errc::PointAtInfinity, "last coordinate is zero");
  const UniPoly s = k.inv(k.reduce(kpoint[3]));
  std::vector<UniPoly> v(4);
  for (std::size_t i = 0; i < 4; ++i) v[i] = k.mul(k.reduce(kpoint[i]), s);
  if (!k.is_zero(eval_t(k, w.T, v))) throw Error(Errc::InvalidArgument, "point is not on T = 0");
  std::vector<UniPoly> u(7);
  for (std::size_t i = 0; i < 3; ++i) {
    u[i] = conjugate(k, v[i]);
    u[3 + i] = v[i];
  }
  u[6] = k.one();
  std::vector<Rational> x(7);
  for (std::size_t r = 0; r < 7; ++r) {
    UniPoly acc = k.zero();
    for (std::size_t c = 0; c < 7; ++c) acc = k.add(acc, k.mul(w.basis(r, c), u[c]));
    const auto q = as_rational(acc);
    if (!q) throw Error(Errc::Internal, "transferred point is not rational");
    x[r] = *q;
  }
  return ProjectivePoint(x);
}

std::optional<std::vector<UniPoly>> weil_kpoint_search(const WeilSplitData& w, unsigned bound) {
  const QuotientField& k = w.field;
  const UniPoly theta = k.generator();
  const KMatrix& t = w.T;
  auto elem = [&](long a, long b) { return k.add(k.from_rational(a), k.mul(k.from_rational(b), theta)); };
  const UniPoly two = k.from_rational(2);
  for (long h = 0; h <= static_cast<long>(bound); ++h) {
    const long side = 2 * h + 1;
    long total = side * side * side * side;
    for (long code = 0; code < total; ++code) {
      long c = code;
      long a[4];
      long mx = 0;
      for (long& ai : a) {
        ai = c % side - h;
        c /= side;
        mx = std::max(mx, std::labs(ai));
      }
      if (mx != h) continue;
      const UniPoly w0 = elem(a[0], a[1]), w1 = elem(a[2], a[3]);
      const UniPoly alpha = t(2, 2);
      const UniPoly beta =
          k.mul(two, k.add(k.add(k.mul(t(2, 0), w0), k.mul(t(2, 1), w1)), t(2, 3)));
      const UniPoly gamma = eval_t(k, t, {w0, w1, k.zero(), k.one()});
      std::optional<UniPoly> w2;
      if (!k.is_zero(alpha)) {
        const UniPoly disc = k.sub(k.mul(beta, beta), k.mul(k.from_rational(4), k.mul(alpha, gamma)));
        if (const auto s = quadratic_sqrt(k, disc)) {
          w2 = k.mul(k.sub(*s, beta), k.inv(k.mul(two, alpha)));
        }
      } else if (!k.is_zero(beta)) {
        w2 = k.neg(k.mul(gamma, k.inv(beta)));
      } else if (k.is_zero(gamma)) {
        w2 = k.zero();
      }
      if (!w2) continue;
      std::vector<UniPoly> pt{w0, w1, *w2, k.one()};
      if (!k.is_zero(eval_t(k, t, pt))) throw Error(Errc::Internal, "K-point check failed");
      return pt;
    }
  }
  return std::nullopt;
}

std::pair<QuadraticForm, QuadraticForm> weil_reconstruct(const WeilSplitData& w) {
  const QuotientField& k = w.field;
  const UniPoly theta = k.generator(), stheta = conjugate(k, theta);
  KMatrix a(7, 7, k.zero()), sa(7, 7, k.zero());
  const std::size_t conj_pos[4] = {0, 1, 2, 6};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      a(3 + i, 3 + j) = w.T(i, j);
      sa(conj_pos[i], conj_pos[j]) = conjugate(k, w.T(i, j));
    }
  const UniPoly inv_diff = k.inv(k.sub(theta, stheta));
  KMatrix gu(7, 7), fu(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      gu(i, j) = k.mul(k.sub(a(i, j), sa(i, j)), inv_diff);
      fu(i, j) = k.sub(a(i, j), k.mul(theta, gu(i, j)));
    }
  const KMatrix binv = inverse_k(k, w.basis);
  const KMatrix binv_t = binv.transpose();
  return {rational_form(multiply(k, multiply(k, binv_t, fu), binv), "reconstructed F"),
          rational_form(multiply(k, multiply(k, binv_t, gu), binv), "reconstructed G")};
}

// ---------------------------------------------------------------------------
// Local evidence

LocalEvidence local_evidence(const QuadraticForm& f0, const QuadraticForm& g0, const SearchConfig& cfg) {
  LocalEvidence ev;
  PlaceEvidence real{Place::real(), "", 0, 0};
  if (const auto c = definite_member(f0, g0)) {
    real.status = "obstructed";
    ObstructionCertificate oc;
    oc.kind = ObstructionCertificate::Kind::DefiniteRealMember;
    oc.real = *c;
    ev.obstruction = oc;
  } else {
    real.status = "no-definite-member (heuristic)";
  }
  ev.places.push_back(real);
  const std::size_t dim = f0.dim();
  for (Integer p = 2;; p = next_prime(p)) {
    Integer total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= p;
    if (total > Integer(static_cast<unsigned long>(cfg.prime_budget))) break;
    const auto pu = static_cast<std::uint64_t>(p.get_ui());
    const ModpCount count = modp_smooth_point_count(f0, g0, pu, cfg.prime_budget);
    PlaceEvidence pe{Place::prime(p), "", count.points, count.smooth_points};
    if (count.smooth_points > 0) {
      pe.status = "smooth-point-mod-p";
    } else if (const auto cert = padic_emptiness(f0, g0, pu, cfg.padic_levels, cfg.prime_budget)) {
      pe.status = "obstructed";
      if (!ev.obstruction) {
        ObstructionCertificate oc;
        oc.kind = ObstructionCertificate::Kind::PadicEmpty;
        oc.padic = *cert;
        oc.max_level = cfg.padic_levels;
        oc.budget = cfg.prime_budget;
        ev.obstruction = oc;
      }
    } else {
      pe.status = "undecided";
    }
    ev.places.push_back(pe);
  }
  return ev;
}

bool replay_obstruction(const QuadraticForm& f0, const QuadraticForm& g0, const ObstructionCertificate& c) {
  if (c.kind == ObstructionCertificate::Kind::DefiniteRealMember) return verify_real_certificate(f0, g0, c.real);
  const auto again = padic_emptiness(f0, g0, c.padic.prime, c.max_level, c.budget);
  return again && again->level == c.padic.level && again->surviving == c.padic.surviving;
}

// ---------------------------------------------------------------------------
// Search

namespace {

NormalizedSystem as_system(const QuadraticForm& f, const QuadraticForm& g) {
  NormalizedSystem s;
  s.F = f;
  s.G = g;
  s.to_original = identity_matrix(f.dim());
  s.coordinate_change = s.to_original;
  s.pencil_change = identity_matrix(2);
  s.shift = 0;
  return s;
}

std::vector<Rational> map_integer(const QMatrix& m, const std::vector<Integer>& v) {
  std::vector<Rational> r(v.begin(), v.end());
  return m * r;
}

// Kernel vector of a member of maximal rank: a rational point when det vanishes identically.
std::optional<std::pair<Rational, ProjectivePoint>> singular_point(const QuadraticForm& f, const QuadraticForm& g) {
  std::size_t best = 0;
  std::vector<Rational> lambdas;
  for (long k = 0; k <= static_cast<long>(f.dim()); ++k)
    lambdas.push_back(k % 2 == 1 ? Rational((k + 1) / 2) : Rational(-(k / 2)));
  for (const auto& l : lambdas) best = std::max(best, form_rank(f + g.scaled(l)));
  for (const auto& l : lambdas) {
    const QuadraticForm m = f + g.scaled(l);
    if (form_rank(m) != best) continue;
    const QMatrix ker = kernel_basis(m.gram());
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      const ProjectivePoint p(ker.column(c));
      if (f.evaluate(p.coords()) == 0 && g.evaluate(p.coords()) == 0) return std::make_pair(l, p);
    }
  }
  return std::nullopt;
}

struct Searcher {
  explicit Searcher(const SearchConfig& c) : cfg(c) {}
  const SearchConfig& cfg;
  std::uint64_t hyperplanes = 0, fibers = 0;
  std::vector<HyperplaneStep> steps;
  std::optional<FiberStep> fiber;
  std::optional<WeilStep> weil;

  // Returns the point in the coordinates of the top-level system.
  std::optional<std::vector<Rational>> solve(const QuadraticForm& f, const QuadraticForm& g, const QMatrix& to_top) {
    const std::size_t n = f.dim() - 1;
    if (n == 4) return fibers_search(f, g, to_top);
    DiscriminantData d;
    HypothesisReport rep;
    try {
      d = discriminant(Pencil(f, g));
      if (d.identically_zero) return std::nullopt;
      rep = hypothesis_report(as_system(f, g), d);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (n == 6 && rep.route == Route::S2ConjugateWeil) {
      if (auto x = weil_search(f, g, *rep.census, to_top)) return x;
    }
    const bool quintic = n == 5 && rep.route == Route::P5HyperplaneDescent;
    HyperplaneStream stream(n, cfg.height_bound);
    unsigned tried = 0;
    std::uint64_t examined = 0;
    while (auto h = stream.next()) {
      if (examined >= cfg.max_candidates) break;
      ++hyperplanes;
      ++examined;
      const V0Certificate cert = v0_membership(f, g, d, *h);
      if (!cert.accepted) continue;
      HyperplaneStep step{n, rep.route, *h, cert, quintic, false, examined};
      const QMatrix e = hyperplane_basis(n, *h);
      QuadraticForm fr = restrict_form(f, e), gr = restrict_form(g, e);
      if (quintic) {
        try {
          step.irreducible_quintic = restricted_discriminant(f, g, *h).irreducible_quintic;
        } catch (const Error&) {
          continue;
        }
        if (!step.irreducible_quintic) continue;
      }
      steps.push_back(step);
      if (auto x = solve(fr, gr, to_top * e)) return x;
      steps.pop_back();
      if (++tried >= cfg.max_hyperplanes) break;
    }
    return std::nullopt;
  }

  std::optional<std::vector<Rational>> fibers_search(const QuadraticForm& f, const QuadraticForm& g,
                                                     const QMatrix& to_top) {
    ProjectiveEnumerator ts(2, cfg.height_bound);
    FiberStep st;
    unsigned tried = 0;
    while (auto t = ts.next()) {
      if (tried++ >= cfg.max_fibers) break;
      ++fibers;
      ++st.fibers_examined;
      FiberConic fc;
      try {
        fc = residual_conic_fiber(f, g, (*t)[0], (*t)[1]);
      } catch (const Error& e) {
        if (e.code() != Errc::DegenerateFiber) throw;
        ++st.degenerate_fibers;
        continue;
      }
      std::optional<ProjectivePoint> pt;
      std::vector<PlaceVerdict> verdicts;
      if (form_rank(fc.residual) < 3) {
        // A singular fiber conic has its rational vertex.
        pt = ProjectivePoint(kernel_basis(fc.residual.gram()).column(0));
      } else {
        const TernaryForm tf = TernaryForm::from_form(fc.residual);
        const LocalReport lr = conic_local_report(tf);
        verdicts = lr.verdicts;
        if (lr.globally_solvable) pt = conic_rational_point(tf);
      }
      if (!pt) continue;
      st.t0 = fc.t0;
      st.t1 = fc.t1;
      st.residual = fc.residual;
      st.verdicts = verdicts;
      st.conic_point = *pt;
      fiber = st;
      return to_top * map_integer(fc.embedding, pt->coords());
    }
    return std::nullopt;
  }

  std::optional<std::vector<Rational>> weil_search(const QuadraticForm& f, const QuadraticForm& g,
                                                   const CensusReport& census, const QMatrix& to_top) {
    try {
      const WeilSplitData w = weil_restriction_split(f, g, census);
      const auto kp = weil_kpoint_search(w, cfg.weil_bound);
      if (!kp) return std::nullopt;
      const ProjectivePoint p = weil_point_transfer(w, *kp);
      weil = WeilStep{w.field.modulus(), *kp};
      return to_top * p.to_rationals();
    } catch (const Error& e) {
      if (e.code() == Errc::Internal) throw;
      return std::nullopt;
    }
  }
};

ProjectivePoint finish_point(const QuadraticForm& f0, const QuadraticForm& g0, const std::vector<Rational>& x,
                             DescentTrace& trace) {
  const ProjectivePoint p(x);
  trace.point = p;
  trace.check_F = f0.evaluate(p.coords());
  trace.check_G = g0.evaluate(p.coords());
  if (trace.check_F != 0 || trace.check_G != 0) throw Error(Errc::Internal, "returned point is not on X");
  return p;
}

}  // namespace

SearchResult find_rational_point(const QuadraticForm& f0, const QuadraticForm& g0, const LinearSubspace& plane,
                                 const SearchConfig& cfg) {
  SearchResult res;
  const ConicConfiguration cc = verify_conic_plane(f0, g0, plane);
  const NormalizedSystem sys = normalize_pencil_unchecked(f0, g0, cc);
  res.hypotheses = hypothesis_report(sys);
  DescentTrace trace;
  trace.route = res.hypotheses.route;
  auto found = [&](const std::vector<Rational>& x) {
    res.point = finish_point(f0, g0, x, trace);
    res.outcome = SearchOutcome::PointFound;
    res.trace = trace;
    return res;
  };

  // Points of the conic lie on X.
  const TernaryForm conic = TernaryForm::from_form(cc.conic_form);
  if (conic_local_report(conic).globally_solvable) {
    const ProjectivePoint cp = conic_rational_point(conic);
    trace.method = "conic";
    trace.conic_point = cp;
    return found(plane.basis() * cp.to_rationals());
  }

  res.local = local_evidence(f0, g0, cfg);
  if (res.local.obstruction) {
    res.outcome = SearchOutcome::LocalObstruction;
    return res;
  }

  if (sys.degenerate) {
    if (const auto sp = singular_point(f0, g0)) {
      trace.method = "singular-point";
      trace.singular_lambda = sp->first;
      return found(sp->second.to_rationals());
    }
    return res;
  }

  Searcher s(cfg);
  const auto x = s.solve(sys.F, sys.G, identity_matrix(sys.F.dim()));
  res.hyperplanes_examined = s.hyperplanes;
  res.fibers_examined = s.fibers;
  if (!x) return res;
  trace.steps = s.steps;
  trace.fiber = s.fiber;
  trace.weil = s.weil;
  trace.method = s.weil ? "weil" : s.steps.empty() ? "conic-bundle" : "hyperplane-descent";
  return found(sys.to_original * *x);
}

// ---------------------------------------------------------------------------
// Replay

ReplayReport replay_trace(const QuadraticForm& f0, const QuadraticForm& g0, const LinearSubspace& plane,
                          const DescentTrace& trace) {
  ReplayReport rr;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      rr.ok = false;
      rr.mismatches.push_back(what);
    }
  };
  try {
    const ConicConfiguration cc = verify_conic_plane(f0, g0, plane);
    const NormalizedSystem sys = normalize_pencil_unchecked(f0, g0, cc);
    expect(hypothesis_report(sys).route == trace.route, "route");
    const auto x = trace.point.coords();
    expect(f0.evaluate(x) == trace.check_F && trace.check_F == 0, "F evaluation");
    expect(g0.evaluate(x) == trace.check_G && trace.check_G == 0, "G evaluation");

    if (trace.method == "conic") {
      expect(trace.conic_point.has_value(), "conic point recorded");
      if (trace.conic_point) {
        expect(cc.conic_form.evaluate(trace.conic_point->coords()) == 0, "conic point on C");
        expect(ProjectivePoint(plane.basis() * trace.conic_point->to_rationals()) == trace.point,
               "conic point embedding");
      }
    } else if (trace.method == "singular-point") {
      expect(trace.singular_lambda.has_value(), "singular member recorded");
      if (trace.singular_lambda) {
        const auto v = (f0 + g0.scaled(*trace.singular_lambda)).gram() * trace.point.to_rationals();
        expect(std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; }),
               "point in the kernel of the recorded member");
      }
    } else {
      QuadraticForm f = sys.F, g = sys.G;
      QMatrix to_top = identity_matrix(f.dim());
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        const std::string tag = "step " + std::to_string(i) + ": ";
        expect(f.dim() - 1 == st.n, tag + "dimension");
        const DiscriminantData d = discriminant(Pencil(f, g));
        expect(hypothesis_report(as_system(f, g), d).route == st.route, tag + "route");
        const V0Certificate c = v0_membership(f, g, d, st.hyperplane);
        expect(c.accepted == st.certificate.accepted && c.rank_F == st.certificate.rank_F &&
                   c.rank_G == st.certificate.rank_G && c.radicals_avoided == st.certificate.radicals_avoided,
               tag + "hyperplane certificate");
        if (st.quintic_required) {
          expect(restricted_discriminant(f, g, st.hyperplane).irreducible_quintic == st.irreducible_quintic,
                 tag + "irreducible quintic");
        }
        const QMatrix e = hyperplane_basis(st.n, st.hyperplane);
        f = restrict_form(f, e);
        g = restrict_form(g, e);
        to_top = to_top * e;
      }
      std::vector<Rational> y;
      if (trace.method == "weil") {
        expect(trace.weil.has_value(), "Weil data recorded");
        const DiscriminantData d = discriminant(Pencil(f, g));
        const auto w = weil_restriction_split(f, g, low_rank_census(d));
        expect(w.field.modulus() == trace.weil->modulus, "Weil field");
        y = to_top * weil_point_transfer(w, trace.weil->kpoint).to_rationals();
      } else {
        expect(trace.fiber.has_value(), "fiber recorded");
        const FiberStep& fs = *trace.fiber;
        const FiberConic fc = residual_conic_fiber(f, g, fs.t0, fs.t1);
        expect(fc.residual == fs.residual, "residual conic");
        expect(fc.residual.evaluate(fs.conic_point.coords()) == 0, "fiber point on residual conic");
        if (form_rank(fc.residual) == 3) {
          const LocalReport lr = conic_local_report(TernaryForm::from_form(fc.residual));
          bool same = lr.verdicts.size() == fs.verdicts.size();
          for (std::size_t i = 0; same && i < lr.verdicts.size(); ++i) {
            same = lr.verdicts[i].place == fs.verdicts[i].place && lr.verdicts[i].solvable == fs.verdicts[i].solvable;
          }
          expect(same, "fiber local verdicts");
        }
        y = to_top * map_integer(fc.embedding, fs.conic_point.coords());
      }
      expect(ProjectivePoint(sys.to_original * y) == trace.point, "point reconstruction");
    }
  } catch (const Error& e) {
    rr.ok = false;
    rr.mismatches.push_back(std::string("replay raised ") + e.what());
  }
  return rr;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

long rand_in(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Zeroes sum c_ij p_i p_j by moving coefficients outside the plane block,
// keeping them within [-h, h]. Only monomials with |p_i p_j| = 1 are used.
bool plant(QMatrix& c, const std::vector<Integer>& p, long h, std::mt19937_64& rng) {
  const std::size_t dim = p.size();
  Rational r = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) r += c(i, j) * p[i] * p[j];
  std::vector<std::pair<std::size_t, std::size_t>> mons;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      if (j >= 3 && abs(Integer(p[i] * p[j])) == 1) mons.emplace_back(i, j);
  std::shuffle(mons.begin(), mons.end(), rng);
  for (const auto& [i, j] : mons) {
    if (r == 0) break;
    const int m = sign(Integer(p[i] * p[j]));
    Rational target = c(i, j) - r * m;
    if (target > h) target = h;
    if (target < -h) target = -h;
    r += (target - c(i, j)) * m;
    c(i, j) = target;
  }
  return r == 0;
}

}  // namespace

PlantedInstance generate_planted_instance(const PlantedOptions& opt) {
  const std::size_t dim = opt.n + 1;
  if (opt.n < 4) throw Error(Errc::InvalidArgument, "n must be at least 4");
  if (opt.conic.rows() != 3 || opt.conic.cols() != 3 || form_rank(QuadraticForm(opt.conic)) != 3) {
    throw Error(Errc::InvalidArgument, "conic must be a rank-3 ternary form");
  }
  if (!opt.point.empty()) {
    if (opt.point.size() != dim) throw Error(Errc::InvalidArgument, "planted point has the wrong length");
    if (std::all_of(opt.point.begin() + 3, opt.point.end(), [](const Integer& x) { return x == 0; })) {
      throw Error(Errc::InvalidArgument, "planted point lies in the plane");
    }
  }
  std::mt19937_64 rng(opt.seed);
  const long h = opt.height;
  const LinearSubspace plane = LinearSubspace::coordinate_span(dim, {0, 1, 2});
  for (unsigned attempt = 1; attempt <= opt.max_retries; ++attempt) {
    std::vector<Integer> p = opt.point;
    if (p.empty()) {
      p.assign(dim, 0);
      for (auto& x : p) x = rand_in(rng, -1, 1);
      if (std::all_of(p.begin() + 3, p.end(), [](const Integer& x) { return x == 0; })) {
        p[3 + static_cast<std::size_t>(rand_in(rng, 0, static_cast<long>(opt.n) - 3))] = 1;
      }
    }
    QMatrix cf(dim, dim), cg(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) {
        if (j < 3) {
          cf(i, j) = i == j ? opt.conic(i, i) : 2 * opt.conic(i, j);
        } else {
          cf(i, j) = rand_in(rng, -h, h);
          cg(i, j) = rand_in(rng, -h, h);
        }
      }
    if (!plant(cf, p, h, rng) || !plant(cg, p, h, rng)) continue;
    const QuadraticForm f = QuadraticForm::from_coefficients(cf), g = QuadraticForm::from_coefficients(cg);
    try {
      const ConicConfiguration cc = verify_conic_plane(f, g, plane);
      const NormalizedSystem sys = normalize_pencil(f, g, cc);
      const DiscriminantData d = discriminant(sys.pencil());
      const HypothesisReport rep = hypothesis_report(sys, d);
      if (opt.route && (rep.route != *opt.route || !rep.hypothesis_failures.empty())) continue;
      if (opt.require_smooth && !smoothness_test(sys.pencil(), d).smooth) continue;
    } catch (const Error&) {
      continue;
    }
    if (f.evaluate(p) != 0 || g.evaluate(p) != 0) throw Error(Errc::Internal, "planting failed");
    return {f, g, plane, p, attempt};
  }
  throw Error(Errc::RetriesExhausted, "no instance met the requirements");
}

WeilInstance generate_weil_instance(std::uint64_t seed, long height) {
  std::mt19937_64 rng(seed);
  const long moduli[] = {1, -2, 2, -3, 3, -5, 5, -6, 6, 7};
  for (unsigned attempt = 1; attempt <= 200; ++attempt) {
    const long c0 = moduli[rand_in(rng, 0, 9)];
    const QuotientField k(UniPoly{c0, 0, 1});
    const UniPoly theta = k.generator();
    auto relem = [&](long bound) {
      return k.add(k.from_rational(rand_in(rng, -bound, bound)),
                   k.mul(k.from_rational(rand_in(rng, -bound, bound)), theta));
    };
    QMatrix s(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) s(i, j) = s(j, i) = rand_in(rng, -height, height);
    const QuadraticForm sq(s);
    if (form_rank(sq) != 3 || conic_local_report(TernaryForm::from_form(sq)).globally_solvable) continue;
    std::vector<UniPoly> b(3), w(3), v(3);
    for (auto& x : b) x = relem(height);
    for (auto& x : w) x = relem(1);
    const UniPoly delta = k.mul(k.from_rational(2), theta);
    for (std::size_t i = 0; i < 3; ++i) v[i] = k.mul(delta, w[i]);
    // d makes (v, 1) a zero of T_y = [[S, b], [b^T, d]].
    UniPoly d = k.zero();
    for (std::size_t i = 0; i < 3; ++i) {
      d = k.add(d, k.mul(k.from_rational(2), k.mul(b[i], v[i])));
      for (std::size_t j = 0; j < 3; ++j) d = k.add(d, k.mul(k.mul(v[i], k.from_rational(s(i, j))), v[j]));
    }
    d = k.neg(d);
    KMatrix ty(4, 4, k.zero());
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) ty(i, j) = k.from_rational(s(i, j));
      ty(i, 3) = ty(3, i) = b[i];
    }
    ty(3, 3) = d;
    // F + theta G = T_y(x0 + theta x3, x1 + theta x4, x2 + theta x5, x6).
    KMatrix c(4, 7, k.zero());
    for (std::size_t i = 0; i < 3; ++i) {
      c(i, i) = k.one();
      c(i, 3 + i) = theta;
    }
    c(3, 6) = k.one();
    const KMatrix a = multiply(k, multiply(k, c.transpose(), ty), c);
    const KMatrix sa = conjugate_matrix(k, a);
    const UniPoly inv_diff = k.inv(k.sub(theta, conjugate(k, theta)));
    KMatrix gk(7, 7), fk(7, 7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) {
        gk(i, j) = k.mul(k.sub(a(i, j), sa(i, j)), inv_diff);
        fk(i, j) = k.sub(a(i, j), k.mul(theta, gk(i, j)));
      }
    const QuadraticForm f = rational_form(fk, "F"), g = rational_form(gk, "G");
    const LinearSubspace plane = LinearSubspace::coordinate_span(7, {0, 1, 2});
    try {
      const NormalizedSystem sys = normalize_pencil(f, g, verify_conic_plane(f, g, plane));
      if (sys.shift != 0 || !(sys.to_original == identity_matrix(7))) continue;
      if (hypothesis_report(sys).route != Route::S2ConjugateWeil) continue;
    } catch (const Error&) {
      continue;
    }
    // Adapted coordinates scale the first three variables of T_y by delta.
    KMatrix dm(4, 4, k.zero());
    for (std::size_t i = 0; i < 3; ++i) dm(i, i) = delta;
    dm(3, 3) = k.one();
    WeilInstance out{f, g, plane, k.modulus(), multiply(k, multiply(k, dm, ty), dm), {w[0], w[1], w[2], k.one()},
                     attempt};
    return out;
  }
  throw Error(Errc::RetriesExhausted, "no Weil instance met the requirements");
}

}  // namespace qpencil
