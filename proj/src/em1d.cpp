#include "latticeem/em1d.hpp"

#include <cmath>

#include "latticeem/bernoulli.hpp"
#include "latticeem/error.hpp"
#include "latticeem/quadrature.hpp"
#include "latticeem/twisted.hpp"

namespace latticeem {

namespace {

Rational eval1(const Polynomial& f, const Rational& x) { return f.evaluate(std::span<const Rational>(&x, 1)); }

std::vector<double> integer_breaks(long a, long b) {
  std::vector<double> out;
  for (long j = a + 1; j < b; ++j) out.push_back(static_cast<double>(j));
  return out;
}

}  // namespace

IntervalEM<Rational> em_interval(const Polynomial& f, long a, long b, unsigned m) {
  if (f.num_vars() != 1) throw Error(ErrorCode::InvalidArgument, "em_interval needs a univariate polynomial");
  if (a >= b) throw Error(ErrorCode::InvalidArgument, "em_interval needs a < b");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "em_interval needs m >= 1");
  IntervalEM<Rational> r;

  r.weighted_sum = (eval1(f, a) + eval1(f, b)) / 2;
  for (long j = a + 1; j < b; ++j) r.weighted_sum += eval1(f, j);

  Polynomial anti(1);
  for (const auto& [e, c] : f.terms()) anti.add_term({e[0] + 1}, c / (e[0] + 1));
  r.operator_term = eval1(anti, b) - eval1(anti, a);
  const OperatorPoly L = L_truncated(m / 2);
  for (unsigned j = 2; j < L.coeffs.size(); j += 2) {
    const Polynomial d = f.derivative(0, j - 1);
    r.operator_term += L.coeffs[j].rational_part() * (eval1(d, b) - eval1(d, a));
  }

  // On [j, j+1]: int_0^1 B_m(t)/m! sum_i f^{(m+i)}(j) t^i / i! dt, exactly.
  const auto B = bernoulli_polynomial(m);
  const int deg = f.total_degree();
  Rational rem = 0;
  for (long j = a; j < b; ++j) {
    for (int i = 0; m + static_cast<unsigned>(i) <= static_cast<unsigned>(std::max(deg, 0)); ++i) {
      const Rational taylor = eval1(f.derivative(0, m + i), j) / factorial(i);
      if (taylor == 0) continue;
      Rational moment = 0;
      for (std::size_t p = 0; p < B.size(); ++p) moment += B[p] / (p + i + 1);
      rem += taylor * moment;
    }
  }
  r.remainder = rem / factorial(m) * ((m - 1) % 2 == 0 ? 1 : -1);
  return r;
}

IntervalEM<double> em_interval(const Derivatives1D& f, long a, long b, unsigned m, double tol) {
  if (a >= b) throw Error(ErrorCode::InvalidArgument, "em_interval needs a < b");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "em_interval needs m >= 1");
  IntervalEM<double> r;
  r.weighted_sum = 0.5 * (f(0, a) + f(0, b));
  for (long j = a + 1; j < b; ++j) r.weighted_sum += f(0, j);

  const auto breaks = integer_breaks(a, b);
  r.operator_term = integrate_interval<double>([&](double x) { return f(0, x); }, a, b, breaks, tol).value;
  const OperatorPoly L = L_truncated(m / 2);
  for (unsigned j = 2; j < L.coeffs.size(); j += 2)
    r.operator_term += to_double(L.coeffs[j].rational_part()) * (f(j - 1, b) - f(j - 1, a));

  const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
  r.remainder = sign * integrate_interval<double>([&](double x) { return periodic_P(m, x) * f(m, x); }, a, b,
                                                  breaks, tol)
                           .value;
  return r;
}

std::complex<double> periodic_kernel(const RationalAngle& lambda, unsigned k, double x) {
  if (lambda.is_zero()) return periodic_P(k, x);
  return twisted_Q(k, lambda).value(x);
}

RayEM twisted_ray_sum(const Derivatives1D& f, double support_end, const RationalAngle& lambda, unsigned k,
                      double tol) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "twisted_ray_sum needs k >= 1");
  RayEM r;
  const long last = static_cast<long>(std::floor(support_end));
  const std::complex<double> lam = lambda.to_complex();
  r.lhs = 0.5 * f(0, 0.0);
  std::complex<double> power = 1.0;
  for (long n = 1; n <= last; ++n) {
    power *= lam;
    r.lhs += power * f(0, static_cast<double>(n));
  }
  if (support_end <= 0) return r;

  const OperatorPoly& M = M_poly(k, lambda);
  const auto breaks = integer_breaks(0, last + 1);
  if (!M.coeffs[0].is_zero()) {
    auto q = integrate_interval<double>([&](double x) { return f(0, x); }, 0.0, support_end, breaks, tol);
    r.operator_term += M.coeffs[0].to_complex() * q.value;
    r.quad_error += q.error;
  }
  for (unsigned m = 1; m <= k; ++m) {
    const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
    r.operator_term += M.coeffs[m].to_complex() * sign * f(m - 1, 0.0);
  }
  auto q = integrate_interval<std::complex<double>>(
      [&](double x) { return periodic_kernel(lambda, k, x) * f(k, x); }, 0.0, support_end, breaks, tol);
  r.remainder = ((k - 1) % 2 == 0 ? 1.0 : -1.0) * q.value;
  r.quad_error += q.error;
  return r;
}

}  // namespace latticeem
