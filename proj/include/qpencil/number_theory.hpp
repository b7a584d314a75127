#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qpencil/matrix.hpp"
#include "qpencil/rational.hpp"

namespace qpencil {

/// Deterministic primality (Miller-Rabin with GMP's test plus trial division).
bool is_prime(const Integer& n);
/// Smallest prime > n.
Integer next_prime(const Integer& n);

/// Prime factorization of |n|, primes ascending with exponents. n != 0.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);
/// Squarefree part s and square root r with |n| = s r^2 (sign kept on s).
std::pair<Integer, Integer> squarefree_decompose(const Integer& n);

/// p-adic valuation of a nonzero rational.
long valuation(const Rational& x, const Integer& p);
/// Legendre symbol (a/p) for an odd prime p.
int legendre_symbol(const Integer& a, const Integer& p);
/// Square root of a modulo an odd prime (Tonelli-Shanks), if a is a square.
std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p);
/// Some square root of a modulo a squarefree odd-or-even modulus m whose
/// factorization is given; combines prime roots by CRT.
std::optional<Integer> sqrt_mod(const Integer& a, const std::vector<std::pair<Integer, unsigned>>& m);

namespace modp {

using u64 = std::uint64_t;

inline u64 mul(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
inline u64 add(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);
/// Reduces a rational modulo p; nullopt if p divides the denominator.
std::optional<u64> reduce(const Rational& x, u64 p);

/// Gram matrix reduced modulo an odd prime, for fast evaluation.
class GramModP {
 public:
  /// nullopt if some denominator is divisible by p.
  static std::optional<GramModP> make(const QMatrix& gram, u64 p);
  std::size_t dim() const { return n_; }
  u64 evaluate(const std::vector<u64>& x) const;
  /// A x (half the gradient).
  std::vector<u64> half_gradient(const std::vector<u64>& x) const;

 private:
  std::size_t n_ = 0;
  u64 p_ = 0;
  std::vector<u64> a_;
};

/// Rank over F_p of a small dense matrix (rows of residues).
std::size_t rank(std::vector<std::vector<u64>> rows, u64 p);

}  // namespace modp

}  // namespace qpencil
