#include "qpencil/factor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qpencil/error.hpp"

namespace qpencil {

namespace detail {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// F_p[x]

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0;
    const u64 y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

void fp_divmod(const FpPoly& a, const FpPoly& b, u64 p, FpPoly* quo, FpPoly* rem) {
  FpPoly r = a;
  const std::size_t db = b.size() - 1;
  FpPoly q(r.size() >= b.size() ? r.size() - db : 0, 0);
  const u64 inv = invmod(b.back(), p);
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const u64 c = mulmod(r[k], inv, p);
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k - db + j] = (r[k - db + j] + p - mulmod(c, b[j], p)) % p;
    }
  }
  r.resize(std::min(r.size(), db));
  trim(r);
  trim(q);
  if (quo) *quo = std::move(q);
  if (rem) *rem = std::move(r);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r;
  fp_divmod(a, b, p, nullptr, &r);
  return r;
}

FpPoly fp_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

FpPoly fp_derivative(const FpPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  FpPoly d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = mulmod(a[k], k % p, p);
  trim(d);
  return d;
}

// base^e mod m, exponent given as an arbitrary-precision integer.
FpPoly fp_powmod(const FpPoly& base, const Integer& e, const FpPoly& m, u64 p) {
  FpPoly result{1};
  FpPoly b = fp_mod(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_mod(fp_mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_mod(fp_mul(result, b, p), m, p);
  }
  return result;
}

void equal_degree_split(const FpPoly& f, std::size_t d, u64 p, std::mt19937_64& rng,
                        std::vector<FpPoly>& out) {
  if (f.size() - 1 == d) {
    out.push_back(f);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
  const Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<u64> coeff(0, p - 1);
  for (;;) {
    FpPoly a(f.size() - 1);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.size() <= 1) continue;
    FpPoly b = fp_sub(fp_powmod(a, e, f, p), FpPoly{1}, p);
    FpPoly u = fp_gcd(f, b, p);
    if (u.size() > 1 && u.size() < f.size()) {
      FpPoly v;
      fp_divmod(f, u, p, &v, nullptr);
      equal_degree_split(u, d, p, rng, out);
      equal_degree_split(fp_monic(v, p), d, p, rng, out);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Z/M[x] for Hensel lifting. Coefficients are kept in [0, M).

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const Integer& m) {
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  ztrim(a);
  return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return zreduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return zreduce(std::move(r), m);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zreduce(std::move(r), m);
}

Integer zinv(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(Errc::Internal, "Hensel lifting: leading coefficient not invertible");
  }
  return r;
}

// Division by a polynomial whose leading coefficient is a unit mod m.
void zdivmod(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly* quo, ZPoly* rem) {
  ZPoly r = a;
  const std::size_t db = b.size() - 1;
  ZPoly q(r.size() >= b.size() ? r.size() - db : 0);
  const Integer inv = zinv(b.back(), m);
  for (std::size_t k = r.size(); k-- > db;) {
    Integer c = r[k] * inv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k - db + j] -= c * b[j];
      mpz_fdiv_r(r[k - db + j].get_mpz_t(), r[k - db + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  r.resize(std::min(r.size(), db));
  ztrim(r);
  ztrim(q);
  if (quo) *quo = std::move(q);
  if (rem) *rem = std::move(r);
}

ZPoly from_fp(const FpPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

FpPoly to_fp(const ZPoly& a, u64 p) {
  FpPoly r;
  r.reserve(a.size());
  const Integer P(static_cast<unsigned long>(p));
  for (const auto& c : a) {
    Integer x;
    mpz_fdiv_r(x.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    r.push_back(x.get_ui());
  }
  trim(r);
  return r;
}

// Extended gcd over F_p; returns s, t with s*a + t*b = 1, deg s < deg b, deg t < deg a.
void fp_bezout(const FpPoly& a, const FpPoly& b, u64 p, FpPoly* s_out, FpPoly* t_out) {
  FpPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    FpPoly q, r;
    fp_divmod(r0, r1, p, &q, &r);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(Errc::Internal, "Hensel lifting: factors not coprime mod p");
  const u64 inv = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  // Normalize degrees: s <- s mod b, t <- (1 - s a)/b.
  FpPoly q, srem;
  fp_divmod(s0, b, p, &q, &srem);
  FpPoly num = fp_sub(FpPoly{1}, fp_mul(srem, a, p), p);
  FpPoly t;
  fp_divmod(num, b, p, &t, nullptr);
  *s_out = std::move(srem);
  *t_out = std::move(t);
}

// One quadratic Hensel step: from f = g h, s g + t h = 1 (mod m) to the same mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, Integer& m) {
  const Integer m2 = m * m;
  ZPoly e = zsub(zreduce(f, m2), zmul(g, h, m2), m2);
  ZPoly q, r;
  zdivmod(zmul(s, e, m2), h, m2, &q, &r);
  ZPoly g1 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
  ZPoly h1 = zadd(h, r, m2);
  ZPoly b = zsub(zadd(zmul(s, g1, m2), zmul(t, h1, m2), m2), ZPoly{Integer(1)}, m2);
  ZPoly c, d;
  zdivmod(zmul(s, b, m2), h1, m2, &c, &d);
  ZPoly s1 = zsub(s, d, m2);
  ZPoly t1 = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g1, m2), m2);
  g = std::move(g1);
  h = std::move(h1);
  s = std::move(s1);
  t = std::move(t1);
  m = m2;
}

ZPoly monic_mod(const ZPoly& f, const Integer& m) {
  const Integer inv = zinv(f.back(), m);
  ZPoly r(f);
  for (auto& c : r) c *= inv;
  return zreduce(std::move(r), m);
}

// Lifts monic factors mod p of f (f = lc * prod u_i mod p) to monic factors mod M = p^(2^j).
std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<FpPoly>& u, u64 p,
                                    const Integer& M) {
  if (u.size() == 1) return {monic_mod(f, M)};
  const std::size_t k = u.size() / 2;
  const Integer P(static_cast<unsigned long>(p));
  FpPoly left = to_fp(ZPoly{f.back()}, p);
  for (std::size_t i = 0; i < k; ++i) left = fp_mul(left, u[i], p);
  FpPoly right{1};
  for (std::size_t i = k; i < u.size(); ++i) right = fp_mul(right, u[i], p);
  FpPoly s0, t0;
  fp_bezout(left, right, p, &s0, &t0);
  ZPoly g = from_fp(left), h = from_fp(right), s = from_fp(s0), t = from_fp(t0);
  Integer m = P;
  while (m < M) hensel_step(f, g, h, s, t, m);
  std::vector<FpPoly> ul(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<FpPoly> ur(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
  auto out = multifactor_lift(g, ul, p, M);
  auto rest = multifactor_lift(h, ur, p, M);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<u64> small_primes(u64 limit) {
  std::vector<bool> sieve(limit + 1, true);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

UniPoly to_unipoly(const ZPoly& a) { return UniPoly::from_integers(a); }

bool divides_over_z(const ZPoly& f, const ZPoly& g, ZPoly* quotient) {
  auto [q, r] = divmod(to_unipoly(f), to_unipoly(g));
  if (!r.is_zero()) return false;
  ZPoly out;
  for (const auto& c : q.coeffs()) {
    if (c.get_den() != 1) return false;
    out.push_back(c.get_num());
  }
  *quotient = std::move(out);
  return true;
}

ZPoly symmetric_primitive(const ZPoly& a, const Integer& m) {
  const Integer half = m / 2;
  ZPoly r(a);
  for (auto& c : r) {
    if (c > half) c -= m;
  }
  ztrim(r);
  Integer g = 0;
  for (const auto& c : r) g = gcd(g, c);
  if (r.empty()) return r;
  if (r.back() < 0) g = -g;
  for (auto& c : r) c /= g;
  return r;
}

// Visits k-subsets of {0..n-1} in lexicographic order until `visit` returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<FpPoly> factor_mod_p(const FpPoly& f_in, std::uint64_t p) {
  FpPoly f = fp_monic(f_in, p);
  std::vector<FpPoly> out;
  if (f.size() <= 1) return out;
  std::vector<std::pair<FpPoly, std::size_t>> ddf;
  FpPoly h{0, 1};
  const FpPoly x{0, 1};
  std::size_t i = 1;
  const Integer P(static_cast<unsigned long>(p));
  while (f.size() - 1 >= 2 * i) {
    h = fp_powmod(h, P, f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) {
      ddf.emplace_back(g, i);
      FpPoly q;
      fp_divmod(f, g, p, &q, nullptr);
      f = fp_monic(q, p);
      h = fp_mod(h, f, p);
    }
    ++i;
  }
  if (f.size() > 1) ddf.emplace_back(f, f.size() - 1);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (const auto& [g, d] : ddf) equal_degree_split(g, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<Integer>> factor_squarefree_integer(const std::vector<Integer>& f_in) {
  ZPoly f = f_in;
  ztrim(f);
  if (f.size() <= 2) return {f};
  const std::size_t deg = f.size() - 1;

  // Prime selection: among the first few primes that keep f squarefree and of the
  // same degree, use the one giving the fewest modular factors.
  static const std::vector<u64> primes = small_primes(20000);
  std::vector<FpPoly> best;
  u64 best_p = 0;
  int tried = 0;
  for (u64 p : primes) {
    if (p == 2) continue;
    FpPoly fp = to_fp(f, p);
    if (fp.size() != f.size()) continue;
    FpPoly g = fp_gcd(fp, fp_derivative(fp, p), p);
    if (g.size() != 1) continue;
    auto fac = factor_mod_p(fp, p);
    if (best_p == 0 || fac.size() < best.size()) {
      best = std::move(fac);
      best_p = p;
    }
    if (best.size() == 1 || ++tried >= 3) break;
  }
  if (best_p == 0) throw Error(Errc::Internal, "no suitable prime for factorization");
  if (best.size() == 1) return {f};

  // Coefficient bound for lc * g, g | f (Mignotte), doubled for the symmetric range.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = qpencil::abs(f.back()) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), deg + 1);
  Integer M(static_cast<unsigned long>(best_p));
  while (M <= bound) M *= M;

  std::vector<ZPoly> lifted = multifactor_lift(f, best, best_p, M);

  std::vector<std::vector<Integer>> result;
  std::vector<ZPoly> remaining = lifted;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    std::vector<std::size_t> hit;
    ZPoly factor, quotient;
    const Integer lc = f.back();
    const bool found = for_each_subset(remaining.size(), s, [&](const std::vector<std::size_t>& S) {
      ZPoly g{lc};
      for (std::size_t i : S) g = zmul(g, remaining[i], M);
      g = symmetric_primitive(zreduce(g, M), M);
      if (g.size() <= 1) return false;
      ZPoly q;
      if (!divides_over_z(f, g, &q)) return false;
      hit = S;
      factor = std::move(g);
      quotient = std::move(q);
      return true;
    });
    if (!found) {
      ++s;
      continue;
    }
    result.push_back(factor);
    f = quotient;
    if (f.back() < 0) {
      for (auto& c : f) c = -c;
    }
    for (auto it = hit.rbegin(); it != hit.rend(); ++it) {
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }
  if (f.size() > 1) result.push_back(f);
  return result;
}

}  // namespace detail

UniPoly Factorization::expand() const {
  UniPoly acc = UniPoly::constant(unit);
  for (const auto& f : factors) acc *= pow(f.poly, static_cast<unsigned>(f.multiplicity));
  return acc;
}

int Factorization::total_degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.poly.degree() * f.multiplicity;
  return d;
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree decomposition of zero");
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() == 0) return out;
  const UniPoly a = p.monic();
  const UniPoly b = a.derivative();
  const UniPoly c = gcd(a, b);
  UniPoly w = divmod(a, c).first;
  UniPoly y = divmod(b, c).first;
  UniPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

Factorization factor_poly(const UniPoly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "factor_poly of the zero polynomial");
  Factorization out;
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    for (auto& ints : detail::factor_squarefree_integer(part.integer_primitive())) {
      out.factors.push_back({UniPoly::from_integers(ints), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
  Rational lead = 1;
  for (const auto& f : out.factors) {
    for (int k = 0; k < f.multiplicity; ++k) lead *= f.poly.leading();
  }
  out.unit = p.leading() / lead;
  return out;
}

}  // namespace qpencil
