#include "latticeem/dilation.hpp"

#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "latticeem/error.hpp"

namespace latticeem {

namespace {

// Polynomials in (y_1..y_n, h_1..h_d) with exponents packed six bits apiece
// into one 64-bit key, so that multiplying monomials is adding keys.
constexpr unsigned kBits = 6;
constexpr std::uint64_t kMask = (1U << kBits) - 1;

struct Packed {
  std::unordered_map<std::uint64_t, Rational> terms;

  void add(std::uint64_t key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

class Ring {
 public:
  Ring(std::size_t n, std::size_t d) : n_(n), d_(d) {
    if ((n + d) * kBits > 64)
      throw Error(ErrorCode::TooLarge, "too many facets for the dilation polynomial (" + std::to_string(d) + ")");
  }

  std::uint64_t y(std::size_t l) const { return std::uint64_t{1} << (kBits * l); }
  std::uint64_t h(std::size_t i) const { return std::uint64_t{1} << (kBits * (n_ + i)); }

  unsigned y_degree(std::uint64_t key) const {
    unsigned s = 0;
    for (std::size_t l = 0; l < n_; ++l) s += static_cast<unsigned>((key >> (kBits * l)) & kMask);
    return s;
  }

  Exponent unpack(std::uint64_t key, std::size_t first, std::size_t count) const {
    Exponent e(count);
    for (std::size_t i = 0; i < count; ++i) e[i] = static_cast<unsigned>((key >> (kBits * (first + i))) & kMask);
    return e;
  }

  Packed multiply(const Packed& a, const Packed& b, unsigned max_y) const {
    Packed out;
    for (const auto& [ka, ca] : a.terms) {
      const unsigned da = y_degree(ka);
      for (const auto& [kb, cb] : b.terms) {
        if (da + y_degree(kb) > max_y) continue;
        out.add(ka + kb, ca * cb);
      }
    }
    return out;
  }

  Packed determinant(std::vector<std::vector<Packed>> m) const {
    const std::size_t k = m.size();
    if (k == 0) {
      Packed one;
      one.add(0, 1);
      return one;
    }
    if (k == 1) return m[0][0];
    Packed total;
    for (std::size_t c = 0; c < k; ++c) {
      if (m[0][c].terms.empty()) continue;
      std::vector<std::vector<Packed>> minor;
      for (std::size_t r = 1; r < k; ++r) {
        std::vector<Packed> row;
        for (std::size_t cc = 0; cc < k; ++cc)
          if (cc != c) row.push_back(m[r][cc]);
        minor.push_back(std::move(row));
      }
      const Packed sub = multiply(m[0][c], determinant(std::move(minor)), 0);
      const int sign = c % 2 == 0 ? 1 : -1;
      for (const auto& [key, v] : sub.terms) total.add(key, sign * v);
    }
    return total;
  }

 private:
  std::size_t n_, d_;
};

}  // namespace

DilationIntegrator::DilationIntegrator(const SimplePolytope& p) : p_(&p), simplices_(triangulate(p)) {}

void DilationIntegrator::ensure(unsigned degree) const {
  if (computed_ && computed_degree_ >= degree) return;
  const SimplePolytope& p = *p_;
  const std::size_t n = p.dim();
  const std::size_t d = p.num_facets();
  const Ring ring(n, d);

  // Coordinates of each moving vertex as affine functions of h (y-degree 0).
  std::vector<std::vector<Packed>> coord(p.vertices().size(), std::vector<Packed>(n));
  for (const auto& v : p.vertices()) {
    const auto& alpha = p.edge_vectors(v.id);
    for (std::size_t l = 0; l < n; ++l) {
      coord[v.id][l].add(0, Rational(Integer(static_cast<long>(v.coords[l]))));
      for (std::size_t t = 0; t < v.tight.size(); ++t) coord[v.id][l].add(ring.h(v.tight[t]), -alpha[t][l]);
    }
  }

  // sum over simplices of sign * det J(h) * prod_j sum_{m <= degree} <s_j(h), y>^m
  Packed total;
  for (const auto& s : simplices_) {
    std::vector<std::vector<Packed>> jac(n, std::vector<Packed>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        jac[r][c] = coord[s.vertices[r + 1]][c];
        for (const auto& [key, v] : coord[s.vertices[0]][c].terms) jac[r][c].add(key, -v);
      }
    Packed acc = ring.determinant(std::move(jac));
    if (s.orientation < 0)
      for (auto& [key, v] : acc.terms) v = -v;

    for (auto vid : s.vertices) {
      Packed linear;
      for (std::size_t l = 0; l < n; ++l)
        for (const auto& [key, v] : coord[vid][l].terms) linear.add(key + ring.y(l), v);
      Packed series;
      series.add(0, 1);
      Packed power = series;
      for (unsigned m = 1; m <= degree; ++m) {
        power = ring.multiply(power, linear, degree);
        for (const auto& [key, v] : power.terms) series.add(key, v);
      }
      acc = ring.multiply(acc, series, degree);
    }
    for (const auto& [key, v] : acc.terms) total.add(key, v);
  }

  std::map<Exponent, Polynomial> moments;
  for (const auto& [key, v] : total.terms) {
    const Exponent a = ring.unpack(key, 0, n);
    const Exponent b = ring.unpack(key, n, d);
    unsigned abs_a = 0;
    Rational scale = 1;
    for (auto ai : a) {
      abs_a += ai;
      scale *= factorial(ai);
    }
    scale /= factorial(static_cast<unsigned>(n) + abs_a);
    auto [it, inserted] = moments.try_emplace(a, Polynomial(d));
    it->second.add_term(b, v * scale);
  }
  moments_ = std::move(moments);
  computed_degree_ = degree;
  computed_ = true;
}

std::map<Exponent, Polynomial> DilationIntegrator::moments(unsigned degree) const {
  std::lock_guard lock(mutex_);
  ensure(degree);
  std::map<Exponent, Polynomial> out;
  for (const auto& [a, poly] : moments_) {
    if (std::accumulate(a.begin(), a.end(), 0U) <= degree) out.emplace(a, poly);
  }
  return out;
}

Polynomial DilationIntegrator::integral(const Polynomial& f) const {
  if (f.num_vars() != p_->dim()) throw Error(ErrorCode::InvalidArgument, "polynomial has wrong number of variables");
  Polynomial out(p_->num_facets());
  if (f.is_zero()) return out;
  std::lock_guard lock(mutex_);
  ensure(static_cast<unsigned>(f.total_degree()));
  for (const auto& [a, c] : f.terms()) {
    auto it = moments_.find(a);
    if (it != moments_.end()) out += it->second * c;
  }
  return out;
}

Polynomial dilation_integral(const SimplePolytope& p, const Polynomial& f) { return DilationIntegrator(p).integral(f); }

RationalVector dilated_vertex(const SimplePolytope& p, std::size_t vertex, std::span<const Rational> h) {
  const auto& v = p.vertices().at(vertex);
  const auto& alpha = p.edge_vectors(vertex);
  RationalVector x = to_rational(v.coords);
  for (std::size_t t = 0; t < v.tight.size(); ++t)
    for (std::size_t l = 0; l < x.size(); ++l) x[l] -= h[v.tight[t]] * alpha[t][l];
  return x;
}

}  // namespace latticeem
