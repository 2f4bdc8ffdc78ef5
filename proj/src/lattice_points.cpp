#include <cmath>
#include <cstdlib>
#include <limits>

#include "latticeem/polytope.hpp"

namespace latticeem {

std::uint64_t max_lattice_points() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("LE_MAX_LATTICE_POINTS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{10'000'000};
  }();
  return cap;
}

std::vector<LatticePoint> enumerate_lattice_points(const SimplePolytope& p) {
  const std::size_t n = p.dim();
  const auto& h = p.h();
  IntVector lo(n, std::numeric_limits<std::int64_t>::max());
  IntVector hi(n, std::numeric_limits<std::int64_t>::min());
  for (const auto& v : p.vertices())
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], v.coords[j]);
      hi[j] = std::max(hi[j], v.coords[j]);
    }
  long double box = 1;
  for (std::size_t j = 0; j < n; ++j) box *= static_cast<long double>(hi[j] - lo[j] + 1);
  if (box > static_cast<long double>(max_lattice_points()))
    throw Error(ErrorCode::TooLarge, "bounding box holds " + std::to_string(static_cast<double>(box)) +
                                         " points, cap is " + std::to_string(max_lattice_points()));

  std::vector<LatticePoint> points;
  IntVector x = lo;
  while (true) {
    std::size_t codim = 0;
    bool inside = true;
    for (std::size_t i = 0; i < h.num_facets() && inside; ++i) {
      __int128 s = h.offsets[i];
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(h.normals[i][j]) * x[j];
      if (s < 0) inside = false;
      if (s == 0) ++codim;
    }
    if (inside) points.push_back(LatticePoint{x, codim});
    std::size_t j = 0;
    while (j < n && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    ++x[j];
  }
  return points;
}

Rational weighted_sum_bruteforce(const SimplePolytope& p, const Polynomial& f) {
  Rational sum = 0;
  for (const auto& lp : enumerate_lattice_points(p)) {
    sum += f.evaluate(to_rational(lp.point)) / Rational(Integer(1) << static_cast<unsigned>(lp.codim));
  }
  return sum;
}

double weighted_sum_bruteforce(const SimplePolytope& p, const std::function<double(std::span<const double>)>& f) {
  double sum = 0;
  std::vector<double> x(p.dim());
  for (const auto& lp : enumerate_lattice_points(p)) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<double>(lp.point[j]);
    sum += std::ldexp(f(x), -static_cast<int>(lp.codim));
  }
  return sum;
}

}  // namespace latticeem
