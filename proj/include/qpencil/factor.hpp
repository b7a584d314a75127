#pragma once

#include <cstdint>
#include <vector>

#include "qpencil/poly.hpp"

namespace qpencil {

struct Factor {
  UniPoly poly;  ///< primitive, integral, positive leading coefficient, irreducible over Q
  int multiplicity = 1;
};

struct Factorization {
  Rational unit;
  std::vector<Factor> factors;  ///< sorted by canonical_less

  UniPoly expand() const;
  bool is_irreducible() const { return factors.size() == 1 && factors.front().multiplicity == 1; }
  int total_degree() const;
};

/// Complete factorization over Q: squarefree decomposition, modular factorization,
/// Hensel lifting and Zassenhaus recombination. Throws ZeroPolynomial for p = 0.
Factorization factor_poly(const UniPoly& p);

/// Squarefree decomposition of a nonzero polynomial: monic a_i with p = c * prod a_i^i.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);

namespace detail {

/// Polynomials over F_p with p < 2^31, lowest degree first, trimmed.
using FpPoly = std::vector<std::uint64_t>;

/// Irreducible monic factors of a monic squarefree polynomial over F_p, p odd prime.
std::vector<FpPoly> factor_mod_p(const FpPoly& f, std::uint64_t p);

/// Factors a primitive squarefree integer polynomial of degree >= 1 into irreducibles.
std::vector<std::vector<Integer>> factor_squarefree_integer(const std::vector<Integer>& f);

}  // namespace detail

}  // namespace qpencil
