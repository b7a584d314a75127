#include "qpencil/number_theory.hpp"

#include <algorithm>
#include <map>

#include "qpencil/error.hpp"

namespace qpencil {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  // GMP runs Baillie-PSW followed by Miller-Rabin rounds; BPSW has no known
  // counterexample and is proven correct below 2^64.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const Integer d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "factor_integer(0)");
  Integer m = abs(n);
  std::map<Integer, unsigned> acc;
  for (unsigned long p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      ++acc[Integer(p)];
      m /= p;
    }
  }
  factor_rec(m, acc);
  return {acc.begin(), acc.end()};
}

std::pair<Integer, Integer> squarefree_decompose(const Integer& n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "squarefree part of 0");
  Integer s = sign(n), r = 1;
  for (const auto& [p, e] : factor_integer(n)) {
    for (unsigned i = 0; i < e / 2; ++i) r *= p;
    if (e % 2) s *= p;
  }
  return {s, r};
}

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw Error(Errc::InvalidArgument, "valuation of 0");
  long v = 0;
  Integer num = x.get_num(), den = x.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

int legendre_symbol(const Integer& a, const Integer& p) {
  return mpz_legendre(Integer(((a % p) + p) % p).get_mpz_t(), p.get_mpz_t());
}

std::optional<Integer> sqrt_mod_prime(const Integer& a_in, const Integer& p) {
  Integer a = ((a_in % p) + p) % p;
  if (p == 2) return a;
  if (a == 0) return Integer(0);
  if (legendre_symbol(a, p) != 1) return std::nullopt;
  auto powm = [&](const Integer& b, const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Integer q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (legendre_symbol(z, p) != -1) ++z;
  Integer m = s, c = powm(z, q), t = powm(a, q), r = powm(a, Integer((q + 1) / 2));
  while (t != 1) {
    unsigned i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + 1 + i < m.get_ui(); ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

std::optional<Integer> sqrt_mod(const Integer& a, const std::vector<std::pair<Integer, unsigned>>& m) {
  Integer x = 0, mod = 1;
  for (const auto& [p, e] : m) {
    if (e != 1) throw Error(Errc::InvalidArgument, "sqrt_mod expects a squarefree modulus");
    const auto r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    // CRT: x' = x + mod * k with x' = r mod p.
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(mod % p).get_mpz_t(), p.get_mpz_t());
    Integer k = ((*r - x) % p + p) % p * inv % p;
    x += mod * k;
    mod *= p;
  }
  return x;
}

namespace modp {

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  if (a % p == 0) throw Error(Errc::NonInvertible, "inverse of 0 mod p");
  return pow(a, p - 2, p);
}

std::optional<u64> reduce(const Rational& x, u64 p) {
  const Integer P(static_cast<unsigned long>(p));
  Integer den = x.get_den() % P;
  if (den == 0) return std::nullopt;
  Integer num = ((x.get_num() % P) + P) % P;
  return mul(num.get_ui(), inv(den.get_ui(), p), p);
}

std::optional<GramModP> GramModP::make(const QMatrix& gram, u64 p) {
  GramModP g;
  g.n_ = gram.rows();
  g.p_ = p;
  g.a_.resize(g.n_ * g.n_);
  for (std::size_t i = 0; i < g.n_; ++i)
    for (std::size_t j = 0; j < g.n_; ++j) {
      const auto r = reduce(gram(i, j), p);
      if (!r) return std::nullopt;
      g.a_[i * g.n_ + j] = *r;
    }
  return g;
}

u64 GramModP::evaluate(const std::vector<u64>& x) const {
  u64 s = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    u64 row = 0;
    for (std::size_t j = 0; j < n_; ++j) row = add(row, mul(a_[i * n_ + j], x[j], p_), p_);
    s = add(s, mul(row, x[i], p_), p_);
  }
  return s;
}

std::vector<u64> GramModP::half_gradient(const std::vector<u64>& x) const {
  std::vector<u64> g(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) g[i] = add(g[i], mul(a_[i * n_ + j], x[j], p_), p_);
  return g;
}

std::size_t rank(std::vector<std::vector<u64>> a, u64 p) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const u64 iv = inv(a[r][c], p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const u64 f = mul(a[i][c], iv, p);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = (a[i][j] + p - mul(f, a[r][j], p)) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace modp

}  // namespace qpencil
