#include "qpencil/rational.hpp"

#include <cctype>

#include "qpencil/error.hpp"

namespace qpencil {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::IdenticallyZeroDiscriminant: return "IdenticallyZeroDiscriminant";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::PlaneContained: return "PlaneContained";
    case Errc::NotSmoothConic: return "NotSmoothConic";
    case Errc::NotAConic: return "NotAConic";
    case Errc::DiscriminantZero: return "DiscriminantZero";
    case Errc::Conical: return "Conical";
    case Errc::NotLocallySolvable: return "NotLocallySolvable";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DegenerateFiber: return "DegenerateFiber";
    case Errc::NotConjugateCase: return "NotConjugateCase";
    case Errc::PlanesNotDisjoint: return "PlanesNotDisjoint";
    case Errc::PointNotOnVariety: return "PointNotOnVariety";
    case Errc::PointAtInfinity: return "PointAtInfinity";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw Error(Errc::InvalidInput, "malformed integer '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer abs(const Integer& value) {
  Integer r;
  mpz_abs(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

Rational abs(const Rational& value) {
  Rational r;
  mpq_abs(r.get_mpq_t(), value.get_mpq_t());
  return r;
}

int sign(const Integer& value) { return mpz_sgn(value.get_mpz_t()); }
int sign(const Rational& value) { return mpq_sgn(value.get_mpq_t()); }

bool is_perfect_square(const Integer& value, Integer* root) {
  if (value < 0) return false;
  if (mpz_perfect_square_p(value.get_mpz_t()) == 0) return false;
  if (root != nullptr) mpz_sqrt(root->get_mpz_t(), value.get_mpz_t());
  return true;
}

bool is_rational_square(const Rational& value, Rational* root) {
  Integer rn;
  Integer rd;
  if (!is_perfect_square(value.get_num(), &rn) || !is_perfect_square(value.get_den(), &rd)) {
    return false;
  }
  if (root != nullptr) *root = make_rational(rn, rd);
  return true;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer d = 1;
  for (const auto& v : values) d = lcm(d, v.get_den());
  return d;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& values) {
  const Integer den = common_denominator(values);
  std::vector<Integer> out;
  out.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer x = v.get_num() * (den / v.get_den());
    g = gcd(g, x);
    out.push_back(std::move(x));
  }
  if (g == 0) return out;
  int s = 0;
  for (const auto& x : out) {
    if (x != 0) {
      s = sign(x);
      break;
    }
  }
  for (auto& x : out) {
    x /= g;
    if (s < 0) x = -x;
  }
  return out;
}

}  // namespace qpencil
