#include "latticeem/smooth_function.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "latticeem/error.hpp"

namespace latticeem {

namespace {

// Below this exponent the factor exp(phi) and all of its derivatives are
// treated as zero; the polynomial growth of phi^{(j)} cannot compensate.
constexpr double kUnderflowExponent = -600.0;

constexpr unsigned kMaxOrder = SmoothFunction::kMaxOrder;
using Row = std::array<double, kMaxOrder + 1>;

struct Pascal {
  std::array<Row, kMaxOrder + 1> c{};
  Pascal() {
    for (unsigned n = 0; n <= kMaxOrder; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0.0);
    }
  }
};

double binom(unsigned n, unsigned k) {
  static const Pascal table;
  return table.c[n][k];
}

// out[m] = d^m exp(phi) given dphi[j] = phi^{(j)} for j = 1..max_order.
void exp_derivatives(double phi, const double* dphi, unsigned max_order, double* out) {
  out[0] = std::exp(phi);
  for (unsigned a = 0; a < max_order; ++a) {
    double s = 0;
    for (unsigned j = 0; j <= a; ++j) s += binom(a, j) * dphi[j + 1] * out[a - j];
    out[a + 1] = s;
  }
}

void bump_derivatives(double t, double c, double sigma, double radius, unsigned max_order, double* out) {
  const double u = t - c;
  const double s = u / radius;
  std::fill(out, out + max_order + 1, 0.0);
  if (std::abs(s) >= 1) return;
  const double phi = -u * u / (2 * sigma * sigma) + 1 - 1 / (1 - s * s);
  if (phi < kUnderflowExponent) return;
  Row dphi{};
  // 1/(1 - s^2) = (1/(1 - s) + 1/(1 + s)) / 2
  const double inv_a = 1 / (1 - s), inv_b = 1 / (1 + s);
  double fact = 1, rpow = 1, a = inv_a, b = inv_b;
  for (unsigned j = 1; j <= max_order; ++j) {
    fact *= j;
    rpow /= radius;
    a *= inv_a;
    b *= inv_b;
    dphi[j] = -0.5 * fact * rpow * (a + (j % 2 == 0 ? b : -b));
  }
  if (max_order >= 1) dphi[1] -= u / (sigma * sigma);
  if (max_order >= 2) dphi[2] -= 1 / (sigma * sigma);
  exp_derivatives(phi, dphi.data(), max_order, out);
}

// A(z) = exp(-1/z) for z > 0, else 0.
void flat_derivatives(double z, unsigned max_order, double* out) {
  std::fill(out, out + max_order + 1, 0.0);
  if (z <= 0 || -1 / z < kUnderflowExponent) return;
  Row dpsi{};
  const double inv = 1 / z;
  double fact = 1, p = inv;
  for (unsigned j = 1; j <= max_order; ++j) {
    fact *= j;
    p *= inv;
    dpsi[j] = (j % 2 == 0 ? -1.0 : 1.0) * fact * p;
  }
  exp_derivatives(-inv, dpsi.data(), max_order, out);
}

// S(z) = A(z) / (A(z) + A(1 - z)): 0 for z <= 0, 1 for z >= 1.
void step_derivatives(double z, unsigned max_order, double* out) {
  std::fill(out, out + max_order + 1, 0.0);
  if (z <= 0) return;
  if (z >= 1) {
    out[0] = 1;
    return;
  }
  Row a, b;
  flat_derivatives(z, max_order, a.data());
  flat_derivatives(1 - z, max_order, b.data());
  for (unsigned m = 0; m <= max_order; ++m) b[m] = a[m] + (m % 2 == 0 ? b[m] : -b[m]);
  for (unsigned m = 0; m <= max_order; ++m) {
    double s = a[m];
    for (unsigned j = 0; j < m; ++j) s -= binom(m, j) * out[j] * b[m - j];
    out[m] = s / b[0];
  }
}

void leibniz(const double* f, const double* g, unsigned max_order, double* out) {
  for (unsigned m = 0; m <= max_order; ++m) {
    double s = 0;
    for (unsigned j = 0; j <= m; ++j) s += binom(m, j) * f[j] * g[m - j];
    out[m] = s;
  }
}

std::vector<double> vector_param(const nlohmann::json& j, const char* key, std::size_t dim,
                                 std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return std::vector<double>(dim, *fallback);
    throw Error(ErrorCode::ParseError, std::string("smooth function descriptor lacks \"") + key + "\"");
  }
  const auto& v = j.at(key);
  if (v.is_number()) return std::vector<double>(dim, v.get<double>());
  if (!v.is_array() || v.size() != dim)
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a number or an array of length " +
                                           std::to_string(dim));
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" has a non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::ParseError, "unknown field \"" + key + "\" in smooth function descriptor");
  }
}

void require_dim(std::size_t expected, std::initializer_list<std::size_t> sizes) {
  for (auto s : sizes)
    if (s != expected) throw Error(ErrorCode::InvalidArgument, "smooth function parameters disagree on the dimension");
}

}  // namespace

double Profile::support_lo() const { return kind == Kind::Plateau ? lo - width : center - radius; }
double Profile::support_hi() const { return kind == Kind::Plateau ? hi + width : center + radius; }

void Profile::derivatives(double t, unsigned max_order, double* out) const {
  if (max_order > kMaxOrder)
    throw Error(ErrorCode::TooLarge, "derivative order " + std::to_string(max_order) + " above " + std::to_string(kMaxOrder));
  switch (kind) {
    case Kind::GaussianBump:
      bump_derivatives(t, center, sigma, radius, max_order, out);
      return;
    case Kind::TrigBump: {
      Row g, c;
      bump_derivatives(t, center, sigma, radius, max_order, g.data());
      double w = 1;
      for (unsigned m = 0; m <= max_order; ++m) {
        c[m] = w * std::cos(frequency * t + phase + m * std::numbers::pi / 2);
        w *= frequency;
      }
      leibniz(c.data(), g.data(), max_order, out);
      return;
    }
    case Kind::Plateau: {
      Row left, right;
      step_derivatives((t - (lo - width)) / width, max_order, left.data());
      step_derivatives(((hi + width) - t) / width, max_order, right.data());
      double scale = 1;
      for (unsigned m = 0; m <= max_order; ++m) {
        left[m] *= scale;
        right[m] *= m % 2 == 0 ? scale : -scale;
        scale /= width;
      }
      leibniz(left.data(), right.data(), max_order, out);
      return;
    }
  }
}

SmoothFunction::SmoothFunction(Polynomial prefactor, std::vector<Profile> profiles)
    : prefactor_(std::move(prefactor)), profiles_(std::move(profiles)) {
  if (prefactor_.num_vars() != profiles_.size())
    throw Error(ErrorCode::InvalidArgument, "prefactor and profiles disagree on the dimension");
  for (const auto& p : profiles_) {
    if (p.kind == Profile::Kind::Plateau) {
      if (!(p.width > 0) || !(p.hi >= p.lo)) throw Error(ErrorCode::InvalidArgument, "plateau needs lo <= hi and width > 0");
    } else if (!(p.sigma > 0) || !(p.radius > 0)) {
      throw Error(ErrorCode::InvalidArgument, "bump needs sigma > 0 and radius > 0");
    }
  }
  // Every nonzero derivative of the prefactor, keyed by its multi-index.
  const int deg = prefactor_.total_degree();
  if (deg < 0) return;
  std::map<Exponent, Polynomial> found{{Exponent(dim(), 0), prefactor_}};
  std::vector<std::pair<Exponent, Polynomial>> frontier{{Exponent(dim(), 0), prefactor_}};
  while (!frontier.empty()) {
    auto [b, poly] = std::move(frontier.back());
    frontier.pop_back();
    for (std::size_t l = 0; l < dim(); ++l) {
      Exponent b2 = b;
      ++b2[l];
      if (found.count(b2)) continue;
      Polynomial d = poly.derivative(l);
      if (d.is_zero()) continue;
      found.emplace(b2, d);
      frontier.emplace_back(std::move(b2), std::move(d));
    }
  }
  prefactor_derivatives_.assign(found.begin(), found.end());
  for (const auto& [b, poly] : prefactor_derivatives_) {
    std::vector<std::pair<Exponent, double>> terms;
    for (const auto& [e, c] : poly.terms()) terms.emplace_back(e, to_double(c));
    numeric_derivatives_.push_back(std::move(terms));
  }
}

SmoothFunction SmoothFunction::zero(std::size_t dim) {
  SmoothFunction f{Polynomial(dim), std::vector<Profile>(dim)};
  f.descriptor_ = {{"family", "zero"}};
  return f;
}

SmoothFunction SmoothFunction::gaussian_bump(std::vector<double> center, std::vector<double> sigma,
                                             std::vector<double> radius) {
  const std::size_t n = center.size();
  require_dim(n, {sigma.size(), radius.size()});
  std::vector<Profile> profiles(n);
  for (std::size_t l = 0; l < n; ++l) {
    profiles[l].kind = Profile::Kind::GaussianBump;
    profiles[l].center = center[l];
    profiles[l].sigma = sigma[l];
    profiles[l].radius = radius[l];
  }
  SmoothFunction f(Polynomial::constant(n, 1), std::move(profiles));
  f.descriptor_ = {{"family", "gaussian_bump"}, {"center", center}, {"sigma", sigma}, {"radius", radius}};
  return f;
}

SmoothFunction SmoothFunction::polynomial_plateau(const Polynomial& p, std::vector<double> lo, std::vector<double> hi,
                                                  double width) {
  const std::size_t n = p.num_vars();
  require_dim(n, {lo.size(), hi.size()});
  std::vector<Profile> profiles(n);
  for (std::size_t l = 0; l < n; ++l) {
    profiles[l].kind = Profile::Kind::Plateau;
    profiles[l].lo = lo[l];
    profiles[l].hi = hi[l];
    profiles[l].width = width;
  }
  SmoothFunction f(p, std::move(profiles));
  f.descriptor_ = {{"family", "poly_plateau"}, {"poly", p.to_string()}, {"lo", lo}, {"hi", hi}, {"width", width}};
  return f;
}

SmoothFunction SmoothFunction::trig_bump(std::vector<double> frequency, std::vector<double> phase,
                                         std::vector<double> center, std::vector<double> sigma,
                                         std::vector<double> radius) {
  const std::size_t n = center.size();
  require_dim(n, {frequency.size(), phase.size(), sigma.size(), radius.size()});
  std::vector<Profile> profiles(n);
  for (std::size_t l = 0; l < n; ++l) {
    profiles[l].kind = Profile::Kind::TrigBump;
    profiles[l].frequency = frequency[l];
    profiles[l].phase = phase[l];
    profiles[l].center = center[l];
    profiles[l].sigma = sigma[l];
    profiles[l].radius = radius[l];
  }
  SmoothFunction f(Polynomial::constant(n, 1), std::move(profiles));
  f.descriptor_ = {{"family", "trig_bump"}, {"frequency", frequency}, {"phase", phase},
                   {"center", center},      {"sigma", sigma},         {"radius", radius}};
  return f;
}

SmoothFunction SmoothFunction::from_json(const nlohmann::json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw Error(ErrorCode::ParseError, "smooth function descriptor needs a \"family\" string");
  const std::string family = j.at("family").get<std::string>();
  if (family == "zero") {
    check_keys(j, {"family"});
    return zero(dim);
  }
  if (family == "gaussian_bump") {
    check_keys(j, {"family", "center", "sigma", "radius"});
    return gaussian_bump(vector_param(j, "center", dim), vector_param(j, "sigma", dim, 1.0),
                         vector_param(j, "radius", dim));
  }
  if (family == "poly_plateau") {
    check_keys(j, {"family", "poly", "lo", "hi", "width"});
    if (!j.contains("poly") || !j.at("poly").is_string())
      throw Error(ErrorCode::ParseError, "poly_plateau needs a \"poly\" string");
    if (!j.contains("width") || !j.at("width").is_number())
      throw Error(ErrorCode::ParseError, "poly_plateau needs a numeric \"width\"");
    return polynomial_plateau(Polynomial::parse(j.at("poly").get<std::string>(), dim), vector_param(j, "lo", dim),
                              vector_param(j, "hi", dim), j.at("width").get<double>());
  }
  if (family == "trig_bump") {
    check_keys(j, {"family", "frequency", "phase", "center", "sigma", "radius"});
    return trig_bump(vector_param(j, "frequency", dim), vector_param(j, "phase", dim, 0.0),
                     vector_param(j, "center", dim), vector_param(j, "sigma", dim, 1.0),
                     vector_param(j, "radius", dim));
  }
  throw Error(ErrorCode::ParseError, "unknown smooth function family \"" + family + "\"");
}

Box SmoothFunction::support() const {
  Box b;
  for (const auto& p : profiles_) {
    b.lo.push_back(p.support_lo());
    b.hi.push_back(p.support_hi());
  }
  return b;
}

void SmoothFunction::prepare(std::span<const double> x, unsigned max_order, PointData& pd) const {
  if (x.size() != dim()) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  pd.max_order = max_order;
  pd.profile.resize(dim());
  for (std::size_t l = 0; l < dim(); ++l) {
    pd.profile[l].resize(max_order + 1);
    profiles_[l].derivatives(x[l], max_order, pd.profile[l].data());
  }
  pd.poly.resize(prefactor_derivatives_.size());
  for (std::size_t i = 0; i < numeric_derivatives_.size(); ++i) {
    double sum = 0;
    for (const auto& [e, c] : numeric_derivatives_[i]) {
      double term = c;
      for (std::size_t l = 0; l < e.size(); ++l)
        for (unsigned r = 0; r < e[l]; ++r) term *= x[l];
      sum += term;
    }
    pd.poly[i] = sum;
  }
}

SmoothFunction::PointData SmoothFunction::prepare(std::span<const double> x, unsigned max_order) const {
  PointData pd;
  prepare(x, max_order, pd);
  return pd;
}

double SmoothFunction::partial(const PointData& pd, const Exponent& a) const {
  double total = 0;
  for (std::size_t i = 0; i < prefactor_derivatives_.size(); ++i) {
    const Exponent& b = prefactor_derivatives_[i].first;
    double term = pd.poly[i];
    for (std::size_t l = 0; l < dim() && term != 0; ++l) {
      if (b[l] > a[l]) {
        term = 0;
        break;
      }
      term *= binom(a[l], b[l]) * pd.profile[l][a[l] - b[l]];
    }
    total += term;
  }
  return total;
}

double SmoothFunction::partial(std::span<const double> x, const Exponent& a) const {
  unsigned top = 0;
  for (auto ai : a) top = std::max(top, ai);
  return partial(prepare(x, top), a);
}

double SmoothFunction::value(std::span<const double> x) const { return partial(x, Exponent(dim(), 0)); }

}  // namespace latticeem
