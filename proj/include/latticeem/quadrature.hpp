#pragma once

// Adaptive tensor-product Gauss-Kronrod (7/15) integration over unions of
// axis-aligned boxes.  Callers split the domain at known breakpoints up front;
// the integrator then bisects whichever box has the largest error estimate.
// Per-box error estimates follow QUADPACK's qk15.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "latticeem/error.hpp"

namespace latticeem {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

template <typename T>
struct QuadResult {
  T value{};
  double error = 0;
  std::size_t evaluations = 0;
};

namespace detail {

struct GaussKronrod15 {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};

  GaussKronrod15() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& ka = gauss_kronrod<double, 15>::abscissa();
    const auto& kw = gauss_kronrod<double, 15>::weights();
    const auto& gw = gauss<double, 7>::weights();
    // Boost lists the nonnegative nodes; Gauss nodes sit at the even positions.
    for (std::size_t i = 0; i < 8; ++i) {
      x[7 + i] = ka[i];
      x[7 - i] = -ka[i];
      wk[7 + i] = wk[7 - i] = kw[i];
      const double g = i % 2 == 0 ? gw[i / 2] : 0.0;
      wg[7 + i] = wg[7 - i] = g;
    }
  }
};

inline const GaussKronrod15& gk15() {
  static const GaussKronrod15 rule;
  return rule;
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <typename T>
struct Estimate {
  Box box;
  T value{};
  double error = 0;
  bool operator<(const Estimate& rhs) const { return error < rhs.error; }
};

template <typename T, typename F>
Estimate<T> apply_rule(F& f, const Box& box, std::size_t& evaluations) {
  const auto& rule = gk15();
  const std::size_t n = box.lo.size();
  std::vector<double> half(n), mid(n), point(n);
  double jac = 1;
  for (std::size_t d = 0; d < n; ++d) {
    half[d] = 0.5 * (box.hi[d] - box.lo[d]);
    mid[d] = 0.5 * (box.hi[d] + box.lo[d]);
    jac *= half[d];
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<T> values;
  std::vector<double> weights;
  T kron{}, gauss{};
  double abs_sum = 0;
  while (true) {
    double wk = 1, wg = 1;
    for (std::size_t d = 0; d < n; ++d) {
      point[d] = mid[d] + half[d] * rule.x[idx[d]];
      wk *= rule.wk[idx[d]];
      wg *= rule.wg[idx[d]];
    }
    const T v = f(point);
    ++evaluations;
    kron += wk * v;
    abs_sum += wk * magnitude(v);
    if (wg != 0) gauss += wg * v;
    values.push_back(v);
    weights.push_back(wk);
    std::size_t d = 0;
    while (d < n && ++idx[d] == 15) idx[d++] = 0;
    if (d == n) break;
  }
  // QUADPACK scaling of |K - G|: the raw difference estimates the error of
  // the Gauss rule, which is far larger than that of the Kronrod result.
  const T mean = kron / std::ldexp(1.0, static_cast<int>(n));
  double asc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) asc += weights[i] * magnitude(values[i] - mean);
  asc *= std::abs(jac);
  double error = magnitude(jac * (kron - gauss));
  if (asc != 0 && error != 0) error = asc * std::min(1.0, std::pow(200 * error / asc, 1.5));
  const double roundoff = 50 * std::numeric_limits<double>::epsilon() * std::abs(jac) * abs_sum;
  error = std::max(error, roundoff);
  return Estimate<T>{box, jac * kron, error};
}

}  // namespace detail

/// Integrates f over the union of the given boxes to total absolute error
/// abs_tol.  Throws QuadratureFailure when max_evaluations is exhausted first.
template <typename T, typename F>
QuadResult<T> integrate_boxes(F f, const std::vector<Box>& boxes, double abs_tol, std::size_t max_evaluations) {
  QuadResult<T> result;
  std::priority_queue<detail::Estimate<T>> heap;
  double error = 0;
  for (const auto& b : boxes) {
    auto e = detail::apply_rule<T>(f, b, result.evaluations);
    error += e.error;
    heap.push(std::move(e));
  }
  while (error > abs_tol && !heap.empty()) {
    if (result.evaluations >= max_evaluations)
    {
      char msg[160];
      std::snprintf(msg, sizeof msg, "error estimate %.3g above tolerance %.3g after %zu evaluations", error, abs_tol,
                    result.evaluations);
      throw Error(ErrorCode::QuadratureFailure, msg);
    }
    auto worst = heap.top();
    heap.pop();
    const std::size_t n = worst.box.lo.size();
    std::size_t axis = 0;
    for (std::size_t d = 1; d < n; ++d)
      if (worst.box.hi[d] - worst.box.lo[d] > worst.box.hi[axis] - worst.box.lo[axis]) axis = d;
    const double cut = 0.5 * (worst.box.lo[axis] + worst.box.hi[axis]);
    Box left = worst.box, right = worst.box;
    left.hi[axis] = cut;
    right.lo[axis] = cut;
    auto a = detail::apply_rule<T>(f, left, result.evaluations);
    auto b = detail::apply_rule<T>(f, right, result.evaluations);
    error += a.error + b.error - worst.error;
    heap.push(std::move(a));
    heap.push(std::move(b));
  }
  // Re-add from scratch in a fixed order so the sum does not depend on the update history.
  std::vector<detail::Estimate<T>> parts;
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.box.lo < b.box.lo || (a.box.lo == b.box.lo && a.box.hi < b.box.hi); });
  result.error = 0;
  for (const auto& p : parts) {
    result.value += p.value;
    result.error += p.error;
  }
  return result;
}

/// One-dimensional convenience wrapper; breakpoints split [a, b] up front.
template <typename T, typename F>
QuadResult<T> integrate_interval(F f, double a, double b, const std::vector<double>& breakpoints, double abs_tol,
                                 std::size_t max_evaluations = 2'000'000) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Box> boxes;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) boxes.push_back(Box{{cuts[i]}, {cuts[i + 1]}});
  auto g = [&f](const std::vector<double>& x) { return f(x[0]); };
  return integrate_boxes<T>(g, boxes, abs_tol, max_evaluations);
}

}  // namespace latticeem
