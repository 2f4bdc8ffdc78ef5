#pragma once

#include <complex>
#include <functional>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/polynomial.hpp"
#include "latticeem/rational.hpp"

namespace latticeem {

/// f^{(order)}(x) for a function known in closed form.
using Derivatives1D = std::function<double(unsigned order, double x)>;

template <typename T>
struct IntervalEM {
  T operator_term{};
  T remainder{};
  T weighted_sum{};
};

/// Weighted sum f(a)/2 + f(a+1) + ... + f(b)/2 split into the L^{2 floor(m/2)}
/// endpoint operator applied to the integral, and the remainder
/// (-1)^{m-1} int_a^b P_m f^{(m)}.  Exact for a univariate polynomial.
IntervalEM<Rational> em_interval(const Polynomial& f, long a, long b, unsigned m);
IntervalEM<double> em_interval(const Derivatives1D& f, long a, long b, unsigned m, double tol = 1e-11);

struct RayEM {
  std::complex<double> lhs;
  std::complex<double> operator_term;
  std::complex<double> remainder;
  double quad_error = 0;
};

/// f(0)/2 + sum_{n >= 1} lambda^n f(n) for f supported below support_end, split
/// as sum_m c_m (-1)^{m-1} f^{(m-1)}(0) (with c_0 int_0^oo f) plus the remainder
/// (-1)^{k-1} int_0^oo Q_{k,lambda} f^{(k)}.  lambda = 1 uses L and P_k.
RayEM twisted_ray_sum(const Derivatives1D& f, double support_end, const RationalAngle& lambda, unsigned k,
                      double tol = 1e-11);

/// Q_{k,lambda}(x), or P_k(x) when lambda = 1.
std::complex<double> periodic_kernel(const RationalAngle& lambda, unsigned k, double x);

}  // namespace latticeem
