#include <algorithm>
#include <map>

#include "latticeem/polytope.hpp"

namespace latticeem {

namespace {

class Puller {
 public:
  explicit Puller(const SimplePolytope& p) : p_(p) {}

  const std::vector<std::vector<std::size_t>>& run(std::size_t face) {
    auto it = memo_.find(face);
    if (it != memo_.end()) return it->second;
    const Face& f = p_.faces()[face];
    const std::size_t k = p_.dim() - f.codim();
    std::vector<std::vector<std::size_t>> out;
    if (f.vertices.size() == k + 1) {
      out.push_back(f.vertices);
    } else {
      const std::size_t apex = f.vertices.front();
      const auto& apex_tight = p_.vertices()[apex].tight;
      for (std::size_t j = 0; j < p_.num_facets(); ++j) {
        if (std::binary_search(f.facets.begin(), f.facets.end(), j)) continue;
        if (std::binary_search(apex_tight.begin(), apex_tight.end(), j)) continue;
        std::vector<std::size_t> sub = f.facets;
        sub.insert(std::upper_bound(sub.begin(), sub.end(), j), j);
        auto g = p_.find_face(sub);
        if (!g) continue;
        for (const auto& s : run(*g)) {
          std::vector<std::size_t> simplex{apex};
          simplex.insert(simplex.end(), s.begin(), s.end());
          out.push_back(std::move(simplex));
        }
      }
    }
    return memo_.emplace(face, std::move(out)).first->second;
  }

 private:
  const SimplePolytope& p_;
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo_;
};

Integer simplex_determinant(const SimplePolytope& p, const std::vector<std::size_t>& verts) {
  const std::size_t n = p.dim();
  IntMatrix m(n, n);
  const auto& v0 = p.vertices()[verts[0]].coords;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& v = p.vertices()[verts[r + 1]].coords;
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(v[c] - v0[c]);
  }
  return m.determinant();
}

}  // namespace

std::vector<Simplex> triangulate(const SimplePolytope& p) {
  Puller puller(p);
  std::vector<Simplex> out;
  for (const auto& verts : puller.run(0)) {
    const Integer det = simplex_determinant(p, verts);
    if (det == 0) throw Error(ErrorCode::InternalError, "triangulation produced a flat simplex");
    out.push_back(Simplex{verts, det > 0 ? 1 : -1});
  }
  return out;
}

Rational volume(const SimplePolytope& p) {
  Rational total = 0;
  for (const auto& s : triangulate(p)) total += Rational(abs(simplex_determinant(p, s.vertices)));
  return total / factorial(static_cast<unsigned>(p.dim()));
}

}  // namespace latticeem
