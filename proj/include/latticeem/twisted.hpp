#pragma once

#include <complex>
#include <vector>

#include "latticeem/bernoulli.hpp"
#include "latticeem/cyclotomic.hpp"

namespace latticeem {

/// Q_{m,lambda}(0) from the series of lambda / (e^S - lambda): the value is the
/// coefficient of S^{m-1}.  For m = 1 this is lambda/(1 - lambda), the value
/// of the step function on [0, 1).  Throws LambdaOne for lambda = 1.
CyclotomicNumber twisted_q_zero(unsigned m, const RationalAngle& lambda);

/// The N-periodic function Q_{m,lambda} built by repeated zero-mean
/// antidifferentiation of the step function lambda^{j+1}/(1 - lambda) on [j, j+1).
class TwistedQ {
 public:
  TwistedQ(unsigned m, const RationalAngle& lambda);

  unsigned m() const { return m_; }
  const RationalAngle& lambda() const { return lambda_; }
  unsigned long period() const { return lambda_.order(); }

  /// pieces()[j][i]: coefficient of t^i on [j, j+1), t = x - j.
  const std::vector<std::vector<CyclotomicNumber>>& pieces() const { return pieces_; }

  /// Value at x; for m = 1 the value on [j, j+1) is used at the jump x = j.
  CyclotomicNumber value(const Rational& x) const;
  std::complex<double> value(double x) const;
  /// Same as value(double) when the unit piece index is already known.
  std::complex<double> value_on_piece(long piece, double t) const;

 private:
  unsigned m_;
  RationalAngle lambda_;
  std::vector<std::vector<CyclotomicNumber>> pieces_;
  std::vector<std::vector<std::complex<double>>> numeric_;
};

/// Cached construction, safe under concurrent readers.
const TwistedQ& twisted_Q(unsigned m, const RationalAngle& lambda);

/// M^{k,lambda}(S): (1/2 + lambda/(1-lambda)) S + sum_{m=2}^k Q_{m,lambda}(0) S^m
/// for lambda != 1, and L^{2 floor(k/2)} padded to length k + 1 for lambda = 1.
const OperatorPoly& M_poly(unsigned k, const RationalAngle& lambda);

/// Symmetric partial sums -sum_{|r| <= R} e^{2 pi i (q + r) x} / (2 pi i (q + r))^m for
/// m = 0..max_m (entry 0 unused), lambda = e^{2 pi i q}.
std::vector<std::complex<double>> fourier_q(const RationalAngle& lambda, double x, unsigned max_m, long R);

}  // namespace latticeem
