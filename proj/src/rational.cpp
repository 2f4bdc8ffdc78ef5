#include "latticeem/rational.hpp"

#include <cctype>

#include "latticeem/error.hpp"

namespace latticeem {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Redundant: return "Redundant";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NonGeneric: return "NonGeneric";
    case ErrorCode::DecompositionViolated: return "DecompositionViolated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::JumpPoint: return "JumpPoint";
    case ErrorCode::LambdaOne: return "LambdaOne";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::PartitionViolated: return "PartitionViolated";
    case ErrorCode::ClaimViolated: return "ClaimViolated";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_int = [](std::string_view part) {
    std::size_t i = 0;
    if (i < part.size() && (part[i] == '+' || part[i] == '-')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Rational dot(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(Integer(static_cast<long>(a[i]))) * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Integer(static_cast<long>(a[i])) * Integer(static_cast<long>(b[i]));
  return s;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(Integer(static_cast<long>(x)));
  return r;
}

}  // namespace latticeem
