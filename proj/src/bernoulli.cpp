#include "latticeem/bernoulli.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>

#include "latticeem/error.hpp"

namespace latticeem {

std::vector<Rational> bernoulli_numbers(unsigned max) {
  // Invert (e^S - 1)/S = sum_j S^j/(j+1)! as a power series; c_k = b_k / k!.
  std::vector<Rational> c(max + 1);
  c[0] = 1;
  for (unsigned k = 1; k <= max; ++k) {
    Rational s = 0;
    for (unsigned j = 1; j <= k; ++j) s += c[k - j] / factorial(j + 1);
    c[k] = -s;
  }
  for (unsigned k = 0; k <= max; ++k) c[k] *= factorial(k);
  return c;
}

Rational bernoulli_number(unsigned k) {
  static std::shared_mutex mutex;
  static std::vector<Rational> table;
  {
    std::shared_lock lock(mutex);
    if (k < table.size()) return table[k];
  }
  std::unique_lock lock(mutex);
  if (k >= table.size()) table = bernoulli_numbers(std::max(2 * k, 32U));
  return table[k];
}

std::vector<Rational> bernoulli_polynomial(unsigned m) {
  std::vector<Rational> coeffs(m + 1);
  for (unsigned j = 0; j <= m; ++j) coeffs[m - j] = Rational(binomial(m, j)) * bernoulli_number(j);
  return coeffs;
}

namespace {

Rational fractional_part(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

}  // namespace

Rational periodic_P(unsigned m, const Rational& x) {
  if (m == 0) return 1;
  const Rational t = fractional_part(x);
  if (m == 1 && t == 0) throw Error(ErrorCode::JumpPoint, "P_1 is discontinuous at the integer " + to_string(x));
  const auto b = bernoulli_polynomial(m);
  Rational v = 0;
  for (std::size_t i = b.size(); i-- > 0;) v = v * t + b[i];
  return v / factorial(m);
}

double periodic_P(unsigned m, double x) {
  if (m == 0) return 1.0;
  const double t = x - std::floor(x);
  if (m == 1 && t == 0.0) throw Error(ErrorCode::JumpPoint, "P_1 is discontinuous at integers");
  static thread_local std::vector<std::vector<double>> cache;
  if (cache.size() <= m) cache.resize(m + 1);
  if (cache[m].empty()) {
    const auto b = bernoulli_polynomial(m);
    const Rational f = factorial(m);
    for (const auto& c : b) cache[m].push_back(Rational(c / f).get_d());
  }
  const auto& b = cache[m];
  double v = 0;
  for (std::size_t i = b.size(); i-- > 0;) v = v * t + b[i];
  return v;
}

OperatorPoly OperatorPoly::reflected() const {
  OperatorPoly r = *this;
  r.lambda = -lambda;
  for (std::size_t m = 1; m < r.coeffs.size(); m += 2) r.coeffs[m] = -r.coeffs[m];
  return r;
}

OperatorPoly L_truncated(unsigned k) {
  OperatorPoly op;
  op.k = 2 * k;
  op.coeffs.assign(2 * k + 1, CyclotomicNumber(0));
  op.coeffs[0] = 1;
  for (unsigned j = 1; j <= k; ++j) op.coeffs[2 * j] = Rational(bernoulli_number(2 * j) / factorial(2 * j));
  return op;
}

}  // namespace latticeem
