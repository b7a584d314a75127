#include "qpencil/local.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "qpencil/error.hpp"
#include "qpencil/linalg.hpp"
#include "qpencil/number_theory.hpp"
#include "qpencil/pencil.hpp"

namespace qpencil {

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, qpencil::to_string(p) + " is not prime");
  Place v;
  v.real_ = false;
  v.p_ = p;
  return v;
}

std::string Place::to_string() const { return real_ ? "inf" : qpencil::to_string(p_); }

namespace {

// Integer in the same square class as a nonzero rational.
Integer square_class_integer(const Rational& x) { return x.get_num() * x.get_den(); }

// x = p^v u with p not dividing u.
std::pair<long, Integer> split_valuation(Integer x, const Integer& p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return {v, x};
}

int mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw Error(Errc::InvalidArgument, "Hilbert symbol of zero");
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.p();
  const auto [alpha, u] = split_valuation(square_class_integer(a), p);
  const auto [beta, w] = split_valuation(square_class_integer(b), p);
  if (p != 2) {
    int s = 1;
    // (-1)^(alpha beta (p-1)/2)
    if ((alpha * beta) % 2 != 0 && p % 4 == 3) s = -s;
    if (beta % 2 != 0) s *= legendre_symbol(u, p);
    if (alpha % 2 != 0) s *= legendre_symbol(w, p);
    return s;
  }
  const int u8 = mod8(u), w8 = mod8(w);
  auto eps = [](int r) { return ((r - 1) / 2) % 2; };
  auto omega = [](int r) { return ((r * r - 1) / 8) % 2; };
  const long e = eps(u8) * eps(w8) + (alpha % 2) * omega(w8) + (beta % 2) * omega(u8);
  return e % 2 == 0 ? 1 : -1;
}

bool is_local_square(const Rational& x, const Place& v) {
  if (x == 0) return false;
  if (v.is_real()) return x > 0;
  const auto [val, u] = split_valuation(square_class_integer(x), v.p());
  if (val % 2 != 0) return false;
  if (v.p() == 2) return mod8(u) == 1;
  return legendre_symbol(u, v.p()) == 1;
}

TernaryForm TernaryForm::from_form(const QuadraticForm& q) {
  if (q.dim() != 3 || form_rank(q) != 3) {
    throw Error(Errc::NotSmoothConic, "ternary form must have rank 3");
  }
  TernaryForm t;
  t.original = q;
  const auto d = diagonalize(q);
  t.transcript = d.basis;
  t.scale = 1;
  std::array<Rational, 3> e{d.entries[0], d.entries[1], d.entries[2]};
  // Invariant: q(T z) = scale * sum e_i z_i^2.
  auto rescale_column = [&](std::size_t i, const Rational& k) {
    for (std::size_t r = 0; r < 3; ++r) t.transcript(r, i) *= k;
    e[i] *= k * k;
  };
  auto make_squarefree = [&](std::size_t i) {
    // e = n/m = (n m) / m^2 and n m = s r^2, so e = s (r/m)^2.
    const Integer nm = e[i].get_num() * e[i].get_den();
    const auto [s, r] = squarefree_decompose(nm);
    rescale_column(i, make_rational(e[i].get_den(), r));
  };
  for (std::size_t i = 0; i < 3; ++i) make_squarefree(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < 3 && !changed; ++i) {
      const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
      const Integer g = gcd(e[i].get_num(), e[j].get_num());
      if (g == 1) continue;
      // scale (e_i z_i^2 + ...) = (scale / g)(g e_i z_i^2 + g e_j z_j^2 + g e_k z_k^2).
      t.scale /= g;
      for (auto& x : e) x *= g;
      rescale_column(i, make_rational(1, g));
      rescale_column(j, make_rational(1, g));
      make_squarefree(k);
      changed = true;
    }
  }
  t.a = e[0].get_num();
  t.b = e[1].get_num();
  t.c = e[2].get_num();
  return t;
}

TernaryForm TernaryForm::diagonal(const Integer& a, const Integer& b, const Integer& c) {
  return from_form(QuadraticForm::diagonal({Rational(a), Rational(b), Rational(c)}));
}

Rational TernaryForm::evaluate_reduced(const std::vector<Integer>& z) const {
  return Rational(a * z[0] * z[0] + b * z[1] * z[1] + c * z[2] * z[2]);
}

std::vector<Place> LocalReport::failing_places() const {
  std::vector<Place> out;
  for (const auto& v : verdicts)
    if (!v.solvable) out.push_back(v.place);
  return out;
}

LocalReport conic_local_report(const TernaryForm& t) {
  LocalReport r;
  std::vector<Place> places{Place::real(), Place::prime(2)};
  for (const auto& [p, e] : factor_integer(t.a * t.b * t.c)) {
    if (p != 2) places.push_back(Place::prime(p));
  }
  const Rational x = -t.a * t.c, y = -t.b * t.c;
  for (const auto& v : places) {
    const bool ok = hilbert_symbol(x, y, v) == 1;
    r.verdicts.push_back({v, ok});
    r.globally_solvable = r.globally_solvable && ok;
  }
  return r;
}

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string places_string(const std::vector<Place>& places) {
  std::string s;
  for (const auto& p : places) s += (s.empty() ? "" : ",") + p.to_string();
  return s;
}

std::optional<std::array<Integer, 3>> holzer_search(const TernaryForm& t) {
  const HolzerBounds hb = holzer_bounds(t);
  const std::array<Integer, 3> coef{t.a, t.b, t.c};
  const std::array<Integer, 3> bound{hb.x, hb.y, hb.z};
  // Loop over the two coordinates with the smallest bounds, solve for the third.
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return bound[i] < bound[j] || (bound[i] == bound[j] && i < j);
  });
  const std::size_t i = order[0], j = order[1], k = order[2];
  for (Integer u = 0; u <= bound[i]; ++u) {
    // v runs 0, 1, -1, 2, -2, ... so small positive solutions come first.
    for (Integer m = 0; m <= 2 * bound[j]; ++m) {
      const Integer v = m % 2 == 1 ? Integer((m + 1) / 2) : Integer(-(m / 2));
      if (u == 0 && v <= 0) continue;
      const Integer rhs = -(coef[i] * u * u + coef[j] * v * v);
      if (rhs % coef[k] != 0) continue;
      const Integer w2 = rhs / coef[k];
      Integer w;
      if (w2 < 0 || !is_perfect_square(w2, &w)) continue;
      std::array<Integer, 3> sol;
      sol[i] = u;
      sol[j] = v;
      sol[k] = w;
      return sol;
    }
  }
  return std::nullopt;
}

// X^2 = A Y^2 + B Z^2 with A, B squarefree; assumes solvability.
std::array<Integer, 3> ldescent(const Integer& A, const Integer& B) {
  if (abs(A) > abs(B)) {
    const auto s = ldescent(B, A);
    return {s[0], s[2], s[1]};
  }
  if (A == 1) return {Integer(1), Integer(1), Integer(0)};
  if (B == 1) return {Integer(1), Integer(0), Integer(1)};
  if (abs(B) == 1) throw Error(Errc::NotLocallySolvable, "x^2 = -y^2 - z^2");
  const Integer absB = abs(B);
  const auto r0 = sqrt_mod(A, factor_integer(absB));
  if (!r0) throw Error(Errc::NotLocallySolvable, "descent: A is not a square modulo B");
  Integer r = *r0 % absB;
  if (2 * r > absB) r -= absB;
  const Integer Q = (r * r - A) / B;
  if (Q == 0) return {r, Integer(1), Integer(0)};
  const auto [d, t] = squarefree_decompose(Q);
  const auto s = ldescent(A, d);
  return {r * s[0] + A * s[1], s[0] + r * s[1], t * d * s[2]};
}

ProjectivePoint pull_back(const TernaryForm& t, const std::array<Integer, 3>& z) {
  const std::vector<Rational> zr{Rational(z[0]), Rational(z[1]), Rational(z[2])};
  return ProjectivePoint(t.transcript * zr);
}

}  // namespace

HolzerBounds holzer_bounds(const TernaryForm& t) {
  return {isqrt(abs(Integer(t.b * t.c))), isqrt(abs(Integer(t.a * t.c))), isqrt(abs(Integer(t.a * t.b)))};
}

ConicPoint conic_rational_point_detailed(const TernaryForm& t) {
  const LocalReport rep = conic_local_report(t);
  if (!rep.globally_solvable) {
    throw Error(Errc::NotLocallySolvable, "conic fails at {" + places_string(rep.failing_places()) + "}");
  }
  const HolzerBounds hb = holzer_bounds(t);
  std::array<Integer, 3> b{hb.x, hb.y, hb.z};
  std::sort(b.begin(), b.end());
  ConicPoint out;
  std::array<Integer, 3> z;
  if ((b[0] + 1) * (2 * b[1] + 1) <= kHolzerSearchLimit) {
    const auto sol = holzer_search(t);
    if (!sol) throw Error(Errc::Internal, "no point within the Holzer bounds of a solvable conic");
    z = *sol;
    out.method = ConicMethod::HolzerSearch;
  } else {
    // a x^2 + b y^2 + c z^2 = 0  <=>  (ax)^2 = (-ab) y^2 + (-ac) z^2.
    const auto s = ldescent(Integer(-t.a * t.b), Integer(-t.a * t.c));
    z = {s[0], t.a * s[1], t.a * s[2]};
    out.method = ConicMethod::Descent;
  }
  out.reduced = ProjectivePoint(std::vector<Integer>(z.begin(), z.end()));
  if (t.evaluate_reduced(out.reduced.coords()) != 0) throw Error(Errc::Internal, "conic point check failed");
  out.original = pull_back(t, {out.reduced[0], out.reduced[1], out.reduced[2]});
  if (t.original.evaluate(out.original.coords()) != 0) {
    throw Error(Errc::Internal, "conic point does not lie on the original form");
  }
  return out;
}

ProjectivePoint conic_rational_point(const TernaryForm& t) { return conic_rational_point_detailed(t).original; }

bool quadric_isotropy(const QuadraticForm& f, const Place& v) {
  std::vector<Rational> e;
  for (const auto& x : diagonalize(f).entries)
    if (x != 0) e.push_back(x);
  if (e.size() < f.dim()) return true;  // a radical vector is a zero
  const std::size_t r = e.size();
  if (v.is_real()) {
    const bool pos = std::any_of(e.begin(), e.end(), [](const Rational& x) { return x > 0; });
    const bool neg = std::any_of(e.begin(), e.end(), [](const Rational& x) { return x < 0; });
    return pos && neg;
  }
  if (r == 1) return false;
  if (r >= 5) return true;
  Rational d = 1;
  for (const auto& x : e) d *= x;
  int hasse = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) hasse *= hilbert_symbol(e[i], e[j], v);
  if (r == 2) return is_local_square(-d, v);
  if (r == 3) return hilbert_symbol(-1, -d, v) == hasse;
  // r == 4
  return !is_local_square(d, v) || hasse == hilbert_symbol(-1, -1, v);
}

std::vector<std::vector<Integer>> integral_model(const QuadraticForm& f) {
  const std::size_t n = f.dim();
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) flat.push_back(f.coefficient(i, j));
  Integer den = common_denominator(flat);
  Integer content = 0;
  for (const auto& x : flat) content = gcd(content, Integer(x * den));
  if (content == 0) content = 1;
  std::vector<std::vector<Integer>> c(n, std::vector<Integer>(n, 0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) c[i][j] = Integer(flat[k++] * den) / content;
  return c;
}

namespace {

// Polynomial form mod m (m = p^k small) with integer coefficients.
struct PolyModM {
  std::size_t n = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> c;  // c[i*n+j] for i <= j

  PolyModM(const std::vector<std::vector<Integer>>& coeffs, std::int64_t mod) : n(coeffs.size()), m(mod) {
    c.assign(n * n, 0);
    const Integer M(static_cast<long>(mod));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Integer r = coeffs[i][j] % M;
        if (r < 0) r += M;
        c[i * n + j] = r.get_si();
      }
  }
  std::int64_t eval(const std::vector<std::int64_t>& x) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      std::int64_t row = 0;
      for (std::size_t j = i; j < n; ++j) row = (row + c[i * n + j] * x[j]) % m;
      s = (s + row * x[i]) % m;
    }
    return s;
  }
  std::vector<std::uint64_t> gradient(const std::vector<std::int64_t>& x) const {
    std::vector<std::uint64_t> g(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t coef = j == k ? 2 * c[k * n + k] : c[std::min(j, k) * n + std::max(j, k)];
        s = (s + coef * x[j]) % m;
      }
      g[k] = static_cast<std::uint64_t>(s);
    }
    return g;
  }
};

// Calls fn on every normalized representative of P^{n-1}(F_p), where n = dim:
// first nonzero coordinate 1. Stops early if fn returns false.
template <class Fn>
void for_each_projective_point(std::size_t dim, std::int64_t p, Fn fn) {
  std::vector<std::int64_t> x(dim, 0);
  for (std::size_t lead = dim; lead-- > 0;) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    // Odometer over coordinates lead+1 .. dim-1.
    for (;;) {
      if (!fn(x)) return;
      std::size_t k = dim;
      while (k-- > lead + 1) {
        if (++x[k] < p) break;
        x[k] = 0;
      }
      if (k == lead) break;
    }
  }
}

}  // namespace

ModpCount modp_smooth_point_count(const QuadraticForm& f, const QuadraticForm& g, std::uint64_t p,
                                  std::uint64_t budget) {
  if (!is_prime(Integer(static_cast<unsigned long>(p)))) throw Error(Errc::InvalidArgument, "modulus is not prime");
  if (f.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "forms differ in dimension");
  const std::size_t dim = f.dim();
  Integer total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= static_cast<unsigned long>(p);
  if (total > Integer(static_cast<unsigned long>(budget))) {
    throw Error(Errc::BudgetExceeded, "p^(n+1) = " + qpencil::to_string(total) + " exceeds the budget");
  }
  const auto mp = static_cast<std::int64_t>(p);
  const PolyModM F(integral_model(f), mp), G(integral_model(g), mp);
  ModpCount out;
  out.prime = p;
  // Enumeration goes from (0,..,0,1) upward, i.e. increasing lexicographic order
  // of the normalized vectors, so the first smooth point is the least.
  for_each_projective_point(dim, mp, [&](const std::vector<std::int64_t>& x) {
    if (F.eval(x) != 0 || G.eval(x) != 0) return true;
    ++out.points;
    if (modp::rank({F.gradient(x), G.gradient(x)}, p) == 2) {
      ++out.smooth_points;
      if (!out.sample) out.sample = std::vector<std::uint64_t>(x.begin(), x.end());
    }
    return true;
  });
  return out;
}

std::optional<PadicCertificate> padic_emptiness(const QuadraticForm& f, const QuadraticForm& g,
                                                std::uint64_t p, unsigned max_level, std::uint64_t budget) {
  const std::size_t dim = f.dim();
  const auto cf = integral_model(f), cg = integral_model(g);
  const auto mp = static_cast<std::int64_t>(p);
  PadicCertificate cert;
  cert.prime = p;
  std::uint64_t work = 0;
  // Level 1: normalized primitive vectors mod p.
  std::vector<std::vector<std::int64_t>> alive;
  std::vector<std::size_t> lead_of;
  {
    const PolyModM F(cf, mp), G(cg, mp);
    bool over = false;
    for_each_projective_point(dim, mp, [&](const std::vector<std::int64_t>& x) {
      if (++work > budget) {
        over = true;
        return false;
      }
      if (F.eval(x) == 0 && G.eval(x) == 0) alive.push_back(x);
      return true;
    });
    if (over) return std::nullopt;
  }
  cert.level = 1;
  cert.surviving.push_back(alive.size());
  std::int64_t pk = mp;
  while (!alive.empty()) {
    if (cert.level >= max_level) return std::nullopt;
    if (pk > (std::int64_t{1} << 40) / mp) return std::nullopt;
    const std::int64_t next = pk * mp;
    const PolyModM F(cf, next), G(cg, next);
    std::vector<std::vector<std::int64_t>> lifted;
    for (const auto& x : alive) {
      // The leading 1 stays fixed; every other coordinate gets + pk * t.
      std::size_t lead = 0;
      while (x[lead] % mp == 0) ++lead;
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < dim; ++i)
        if (i != lead) free.push_back(i);
      std::vector<std::int64_t> t(free.size(), 0);
      for (;;) {
        if (++work > budget) return std::nullopt;
        std::vector<std::int64_t> y = x;
        for (std::size_t k = 0; k < free.size(); ++k) y[free[k]] += pk * t[k];
        if (F.eval(y) == 0 && G.eval(y) == 0) lifted.push_back(std::move(y));
        std::size_t k = 0;
        while (k < t.size() && ++t[k] == mp) t[k++] = 0;
        if (k == t.size()) break;
      }
    }
    alive = std::move(lifted);
    pk = next;
    ++cert.level;
    cert.surviving.push_back(alive.size());
  }
  return cert;
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    const UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_changes(const std::vector<UniPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    const int s = sign(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<Rational> real_root_separators(const UniPoly& poly) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "root separation of zero");
  if (poly.degree() < 1) return {Rational(0)};
  const UniPoly sp = divmod(poly, gcd(poly, poly.derivative())).first;
  const auto chain = sturm_chain(sp);
  // Cauchy bound: every root has |x| < 1 + max |c_i / c_n|.
  Rational bound = 0;
  for (const auto& c : sp.coeffs()) bound = std::max(bound, abs(Rational(c / sp.leading())));
  bound += 2;
  // Isolating intervals (lo, hi) with non-root endpoints and one root each.
  std::vector<std::pair<Rational, Rational>> intervals;
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int count = sign_changes(chain, lo) - sign_changes(chain, hi);
    if (count == 0) continue;
    if (count == 1) {
      intervals.emplace_back(lo, hi);
      continue;
    }
    // Split at a non-root point strictly inside.
    Rational mid;
    bool found = false;
    for (long den = 2; !found; ++den)
      for (long num = 1; num < den && !found; ++num) {
        mid = lo + (hi - lo) * make_rational(num, den);
        found = sp(mid) != 0;
      }
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(intervals.begin(), intervals.end());
  std::vector<Rational> out{-bound};
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i) out.push_back(intervals[i].second);
  if (intervals.empty()) return {Rational(0)};
  out.push_back(bound);
  return out;
}

std::optional<RealCertificate> definite_member(const QuadraticForm& f, const QuadraticForm& g) {
  if (signature(g).definite()) return RealCertificate{true, 0};
  const UniPoly P = pencil_determinant(Pencil(f, g));
  if (P.is_zero()) return std::nullopt;  // every member is singular
  for (const auto& lambda : real_root_separators(P)) {
    if (signature(f + g.scaled(lambda)).definite()) return RealCertificate{false, lambda};
  }
  return std::nullopt;
}

bool verify_real_certificate(const QuadraticForm& f, const QuadraticForm& g, const RealCertificate& c) {
  if (c.at_infinity) return signature(g).definite();
  return signature(f + g.scaled(c.lambda)).definite();
}

}  // namespace qpencil
