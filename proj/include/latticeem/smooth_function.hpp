#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeem/polynomial.hpp"
#include "latticeem/quadrature.hpp"

namespace latticeem {

/// Compactly supported one-dimensional factor with derivatives of every order
/// in closed form.
struct Profile {
  enum class Kind { GaussianBump, Plateau, TrigBump };
  Kind kind = Kind::GaussianBump;
  // GaussianBump / TrigBump: exp(-(t-c)^2/(2 sigma^2) + 1 - 1/(1 - ((t-c)/R)^2)) on |t - c| < R.
  double center = 0, sigma = 1, radius = 1;
  // TrigBump: multiplied by cos(frequency t + phase).
  double frequency = 0, phase = 0;
  // Plateau: 1 on [lo, hi], 0 outside [lo - width, hi + width], smooth in between.
  double lo = 0, hi = 0, width = 1;

  double support_lo() const;
  double support_hi() const;
  /// out[m] = d^m/dt^m profile(t) for m = 0..max_order.
  void derivatives(double t, unsigned max_order, double* out) const;
};

/// f(x) = P(x) * prod_l profile_l(x_l): Gaussian bumps, polynomials times a
/// plateau cutoff, and trigonometric functions times a bump.
class SmoothFunction {
 public:
  /// Values needed to evaluate any partial derivative at one point.
  struct PointData {
    std::vector<std::vector<double>> profile;  // [coordinate][order]
    std::vector<double> poly;                  // d^b P at the point, one entry per nonzero derivative of P
    unsigned max_order = 0;
  };

  /// Largest derivative order per coordinate.
  static constexpr unsigned kMaxOrder = 40;

  SmoothFunction() = default;
  SmoothFunction(Polynomial prefactor, std::vector<Profile> profiles);

  static SmoothFunction zero(std::size_t dim);
  static SmoothFunction gaussian_bump(std::vector<double> center, std::vector<double> sigma, std::vector<double> radius);
  static SmoothFunction polynomial_plateau(const Polynomial& p, std::vector<double> lo, std::vector<double> hi,
                                           double width);
  static SmoothFunction trig_bump(std::vector<double> frequency, std::vector<double> phase, std::vector<double> center,
                                  std::vector<double> sigma, std::vector<double> radius);

  /// {"family": "gaussian_bump" | "poly_plateau" | "trig_bump" | "zero", ...}
  static SmoothFunction from_json(const nlohmann::json& j, std::size_t dim);
  nlohmann::json to_json() const { return descriptor_; }

  std::size_t dim() const { return profiles_.size(); }
  bool is_zero() const { return prefactor_.is_zero(); }
  /// Closed box containing the support.
  Box support() const;

  double value(std::span<const double> x) const;
  PointData prepare(std::span<const double> x, unsigned max_order) const;
  /// Same, reusing the buffers of pd.
  void prepare(std::span<const double> x, unsigned max_order, PointData& pd) const;
  /// d^a f at the prepared point; each a_l must not exceed max_order.
  double partial(const PointData& pd, const Exponent& a) const;
  double partial(std::span<const double> x, const Exponent& a) const;

 private:
  Polynomial prefactor_;
  std::vector<Profile> profiles_;
  std::vector<std::pair<Exponent, Polynomial>> prefactor_derivatives_;
  std::vector<std::vector<std::pair<Exponent, double>>> numeric_derivatives_;
  nlohmann::json descriptor_;
};

}  // namespace latticeem
