#include "latticeem/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace latticeem {

HPolytope HPolytope::interval(std::int64_t a, std::int64_t b) {
  return HPolytope{1, {{1}, {-1}}, {-a, b}};
}

HPolytope HPolytope::dilated(std::int64_t factor) const {
  HPolytope out = *this;
  for (auto& mu : out.offsets) mu *= factor;
  return out;
}

Rational HPolytope::slack(std::size_t facet, std::span<const Rational> x) const {
  Rational s = Rational(Integer(static_cast<long>(offsets[facet])));
  for (std::size_t j = 0; j < dim; ++j) s += Rational(Integer(static_cast<long>(normals[facet][j]))) * x[j];
  return s;
}

namespace {

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rational_rank(std::vector<RationalVector> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::size_t affine_rank(const std::vector<RationalVector>& points) {
  if (points.size() <= 1) return 0;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rational_rank(std::move(diffs));
}

IntMatrix select_rows(const HPolytope& h, const std::vector<std::size_t>& rows) {
  std::vector<IntVector> r;
  for (auto i : rows) r.push_back(h.normals[i]);
  IntMatrix m = IntMatrix::from_rows(r);
  if (rows.empty()) m = IntMatrix(0, h.dim);
  return m;
}

// Spans the kernel of an (n-1) x n matrix of rank n-1 (signed maximal minors).
std::vector<Integer> kernel_vector(const IntMatrix& a) {
  const std::size_t n = a.cols();
  std::vector<Integer> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r, cc++) = a(r, c);
      }
    const Integer det = minor.determinant();
    d[j] = (j % 2 == 0) ? det : Integer(-det);
  }
  return d;
}

std::string index_list(const std::vector<std::size_t>& idx) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : ", ") + std::to_string(i);
  return "[" + s + "]";
}

}  // namespace

ValidationReport validate(const HPolytope& h) {
  ValidationReport r;
  auto fail = [&](ErrorCode code, std::vector<std::size_t> idx, std::string msg) {
    r.valid = false;
    r.reason = code;
    r.offending = std::move(idx);
    r.message = std::move(msg);
    r.vertices.clear();
    return r;
  };
  const std::size_t n = h.dim;
  const std::size_t d = h.num_facets();
  if (n == 0) return fail(ErrorCode::InvalidArgument, {}, "dimension must be positive");
  if (h.offsets.size() != d) return fail(ErrorCode::InvalidArgument, {}, "normals and offsets differ in length");
  for (std::size_t i = 0; i < d; ++i)
    if (h.normals[i].size() != n)
      return fail(ErrorCode::InvalidArgument, {i}, "normal " + std::to_string(i) + " has wrong length");

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t g = 0;
    for (auto c : h.normals[i]) g = std::gcd(g, c < 0 ? -c : c);
    if (g != 1) bad.push_back(i);
  }
  if (!bad.empty()) return fail(ErrorCode::NotPrimitive, bad, "normals " + index_list(bad) + " are not primitive");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (h.normals[i] == h.normals[j] && h.offsets[i] == h.offsets[j])
        return fail(ErrorCode::Redundant, {i, j}, "facets " + index_list({i, j}) + " coincide");

  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  if (select_rows(h, all).rank() < n) return fail(ErrorCode::Unbounded, {}, "normals do not span");

  // A bounded region has no recession ray; candidate extreme rays lie on n-1 hyperplanes.
  bool unbounded = false;
  std::vector<std::size_t> witness;
  for_each_subset(d, n - 1, [&](const std::vector<std::size_t>& s) {
    if (unbounded) return;
    IntMatrix a = select_rows(h, s);
    if (n > 1 && a.rank() != n - 1) return;
    std::vector<Integer> ray = n == 1 ? std::vector<Integer>{1} : kernel_vector(a);
    for (int sign : {1, -1}) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        Integer p = 0;
        for (std::size_t j = 0; j < n; ++j) p += Integer(static_cast<long>(h.normals[i][j])) * ray[j];
        if (sign * sgn(p) < 0) ok = false;
      }
      if (ok) {
        unbounded = true;
        witness = s;
        return;
      }
    }
  });
  if (unbounded) return fail(ErrorCode::Unbounded, witness, "region contains a ray");

  std::set<RationalVector> found;
  for_each_subset(d, n, [&](const std::vector<std::size_t>& s) {
    IntMatrix a = select_rows(h, s);
    if (a.determinant() == 0) return;
    RationalVector rhs;
    for (auto i : s) rhs.emplace_back(Integer(static_cast<long>(-h.offsets[i])));
    RationalVector x = solve_rational_system(a, rhs);
    for (std::size_t i = 0; i < d; ++i)
      if (h.slack(i, x) < 0) return;
    found.insert(std::move(x));
  });
  std::vector<RationalVector> vertices(found.begin(), found.end());
  if (vertices.empty()) return fail(ErrorCode::Empty, {}, "no point satisfies all inequalities");
  if (affine_rank(vertices) < n) return fail(ErrorCode::Degenerate, {}, "polytope is not full-dimensional");

  bad.clear();
  std::vector<std::vector<std::size_t>> tight(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (std::size_t i = 0; i < d; ++i)
      if (h.slack(i, vertices[v]) == 0) tight[v].push_back(i);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<RationalVector> on;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (std::binary_search(tight[v].begin(), tight[v].end(), i)) on.push_back(vertices[v]);
    if (on.empty() || affine_rank(on) < n - 1) bad.push_back(i);
  }
  if (!bad.empty()) return fail(ErrorCode::Redundant, bad, "facets " + index_list(bad) + " are redundant");

  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (tight[v].size() > n)
      return fail(ErrorCode::NotSimple, tight[v],
                  std::to_string(tight[v].size()) + " facets " + index_list(tight[v]) + " meet at one vertex");

  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (const auto& c : vertices[v])
      if (c.get_den() != 1) {
        std::string coords;
        for (const auto& x : vertices[v]) coords += (coords.empty() ? "" : ", ") + to_string(x);
        return fail(ErrorCode::NotIntegral, tight[v], "vertex (" + coords + ") is not integral");
      }

  r.valid = true;
  r.vertices = std::move(vertices);
  return r;
}

SimplePolytope::SimplePolytope(HPolytope h) : h_(std::move(h)) {
  ValidationReport report = validate(h_);
  if (!report.valid) throw Error(*report.reason, report.message);
  const std::size_t n = h_.dim;

  for (std::size_t v = 0; v < report.vertices.size(); ++v) {
    Vertex vert;
    vert.id = v;
    for (const auto& c : report.vertices[v]) vert.coords.push_back(c.get_num().get_si());
    for (std::size_t i = 0; i < h_.num_facets(); ++i)
      if (h_.slack(i, report.vertices[v]) == 0) vert.tight.push_back(i);
    vertices_.push_back(std::move(vert));
  }

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> faces;
  for (const auto& v : vertices_) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1U << b)) s.push_back(v.tight[b]);
      faces[s].push_back(v.id);
    }
  }
  for (auto& [facets, verts] : faces) faces_.push_back(Face{facets, verts});
  std::stable_sort(faces_.begin(), faces_.end(),
                   [](const Face& a, const Face& b) { return a.codim() < b.codim(); });
  for (std::size_t f = 0; f < faces_.size(); ++f) face_index_[faces_[f].facets] = f;

  for (const auto& v : vertices_) edges_.push_back(inverse_columns(vertex_normals(v.id)));
}

std::optional<std::size_t> SimplePolytope::find_face(const std::vector<std::size_t>& facets) const {
  auto it = face_index_.find(facets);
  if (it == face_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplePolytope::vertex_face(std::size_t vertex) const { return face_index_.at(vertices_.at(vertex).tight); }

IntMatrix SimplePolytope::vertex_normals(std::size_t vertex) const {
  return select_rows(h_, vertices_.at(vertex).tight);
}

bool SimplePolytope::is_regular() const {
  for (const auto& v : vertices_)
    if (abs(vertex_normals(v.id).determinant()) != 1) return false;
  return true;
}

Rational weighted_indicator(const HPolytope& h, std::span<const Rational> x) {
  unsigned tight = 0;
  for (std::size_t i = 0; i < h.num_facets(); ++i) {
    const int s = sgn(h.slack(i, x));
    if (s < 0) return 0;
    if (s == 0) ++tight;
  }
  return Rational(1, Integer(1) << tight);
}

RationalVector PolarizedCone::cone_coordinates(std::span<const Rational> x) const {
  RationalVector diff(apex.size());
  for (std::size_t j = 0; j < apex.size(); ++j) diff[j] = x[j] - Rational(Integer(static_cast<long>(apex[j])));
  RationalVector t;
  for (const auto& u : polarized_normals) t.push_back(dot(u, diff));
  return t;
}

Rational weighted_indicator(const PolarizedCone& cone, std::span<const Rational> x) {
  unsigned tight = 0;
  for (const auto& t : cone.cone_coordinates(x)) {
    const int s = sgn(t);
    if (s < 0) return 0;
    if (s == 0) ++tight;
  }
  return Rational(1, Integer(1) << tight);
}

bool is_polarizing(const SimplePolytope& p, const IntVector& xi) {
  if (xi.size() != p.dim()) return false;
  for (const auto& v : p.vertices())
    for (const auto& alpha : p.edge_vectors(v.id))
      if (dot(xi, alpha) == 0) return false;
  return true;
}

IntVector choose_polarizing_vector(const SimplePolytope& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::int64_t bound = 7 + attempt;
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    IntVector xi(p.dim());
    for (auto& c : xi) c = dist(rng);
    if (is_polarizing(p, xi)) return xi;
  }
  throw Error(ErrorCode::InternalError, "no polarizing vector found after 1000 candidates");
}

std::vector<PolarizedCone> polarize(const SimplePolytope& p, const IntVector& xi) {
  if (xi.size() != p.dim()) throw Error(ErrorCode::InvalidArgument, "polarizing vector has wrong length");
  std::vector<PolarizedCone> cones;
  for (const auto& v : p.vertices()) {
    PolarizedCone c;
    c.vertex = v.id;
    c.apex = v.coords;
    c.facets = v.tight;
    c.edges = p.edge_vectors(v.id);
    for (std::size_t i = 0; i < c.facets.size(); ++i) {
      const int s = sgn(dot(xi, c.edges[i]));
      if (s == 0)
        throw Error(ErrorCode::NonGeneric, "polarizing vector is orthogonal to an edge at vertex " + std::to_string(v.id));
      const int flip = s > 0 ? -1 : 1;
      c.flips.push_back(flip);
      RationalVector e = c.edges[i];
      for (auto& x : e) x *= flip;
      c.polarized_edges.push_back(std::move(e));
      IntVector u = p.h().normals[c.facets[i]];
      for (auto& x : u) x *= flip;
      c.polarized_normals.push_back(std::move(u));
      if (flip < 0) ++c.flip_count;
    }
    cones.push_back(std::move(c));
  }
  return cones;
}

std::optional<RationalVector> find_decomposition_violation(const SimplePolytope& p,
                                                           const std::vector<PolarizedCone>& cones,
                                                           const std::vector<RationalVector>& points) {
  for (const auto& x : points) {
    Rational rhs = 0;
    for (const auto& c : cones) rhs += c.sign() * weighted_indicator(c, x);
    if (rhs != weighted_indicator(p.h(), x)) return x;
  }
  return std::nullopt;
}

void check_polar_decomposition(const SimplePolytope& p, const std::vector<PolarizedCone>& cones,
                               const std::vector<RationalVector>& points) {
  if (auto w = find_decomposition_violation(p, cones, points)) {
    std::string coords;
    for (const auto& x : *w) coords += (coords.empty() ? "" : ", ") + to_string(x);
    throw Error(ErrorCode::DecompositionViolated, "weighted indicators disagree at (" + coords + ")");
  }
}

}  // namespace latticeem
