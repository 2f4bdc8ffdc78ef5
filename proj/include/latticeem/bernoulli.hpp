#pragma once

#include <vector>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/rational.hpp"

namespace latticeem {

/// b_0..b_max with S/(e^S - 1) = sum_k b_k S^k / k!, so b_1 = -1/2.
std::vector<Rational> bernoulli_numbers(unsigned max);
/// Cached single entry of the table above.
Rational bernoulli_number(unsigned k);

/// Coefficients of B_m(x), constant term first.
std::vector<Rational> bernoulli_polynomial(unsigned m);

/// P_m(x) = B_m({x}) / m!.  P_1 jumps at the integers: throws JumpPoint there.
Rational periodic_P(unsigned m, const Rational& x);
double periodic_P(unsigned m, double x);

/// Truncated operator M(S) = sum_m coeffs[m] S^m attached to a root of unity.
struct OperatorPoly {
  RationalAngle lambda;
  unsigned k = 0;
  std::vector<CyclotomicNumber> coeffs;  // length k + 1

  /// M(-S), attached to the inverse root of unity.
  OperatorPoly reflected() const;
  bool operator==(const OperatorPoly&) const = default;
};

/// L^{2k}(S) = 1 + sum_{j=1}^k b_{2j}/(2j)! S^{2j}; the result has truncation order 2k.
OperatorPoly L_truncated(unsigned k);

}  // namespace latticeem
