#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpencil {

enum class Errc {
  ZeroPolynomial,
  NonInvertible,
  NotIrreducible,
  DimensionMismatch,
  SingularMatrix,
  InvalidArgument,
  PreconditionViolated,
  IdenticallyZeroDiscriminant,
  WrongDimension,
  PlaneContained,
  NotSmoothConic,
  NotAConic,
  DiscriminantZero,
  Conical,
  NotLocallySolvable,
  SearchExhausted,
  BudgetExceeded,
  DegenerateFiber,
  NotConjugateCase,
  PlanesNotDisjoint,
  PointNotOnVariety,
  PointAtInfinity,
  RetriesExhausted,
  InvalidInput,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qpencil
