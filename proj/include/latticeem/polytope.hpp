#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latticeem/error.hpp"
#include "latticeem/int_matrix.hpp"
#include "latticeem/polynomial.hpp"
#include "latticeem/rational.hpp"

namespace latticeem {

/// Half-space description: <u_i, x> + mu_i >= 0 for every facet i.
struct HPolytope {
  std::size_t dim = 0;
  std::vector<IntVector> normals;
  IntVector offsets;

  /// [a, b] as a one-dimensional polytope (facets x >= a, then x <= b).
  static HPolytope interval(std::int64_t a, std::int64_t b);

  std::size_t num_facets() const { return normals.size(); }
  HPolytope dilated(std::int64_t factor) const;
  Rational slack(std::size_t facet, std::span<const Rational> x) const;

  bool operator==(const HPolytope&) const = default;
};

struct ValidationReport {
  bool valid = false;
  std::optional<ErrorCode> reason;
  std::vector<std::size_t> offending;
  std::string message;
  std::vector<RationalVector> vertices;
};

/// Checks shape, primitivity, boundedness, nonemptiness, full dimension,
/// irredundancy, simplicity and integrality, in that order.
ValidationReport validate(const HPolytope& h);

struct Vertex {
  std::size_t id = 0;
  IntVector coords;
  std::vector<std::size_t> tight;  // I_v, sorted
};

struct Face {
  std::vector<std::size_t> facets;  // I_F, sorted
  std::vector<std::size_t> vertices;
  std::size_t codim() const { return facets.size(); }
};

/// A validated simple integral polytope with its vertices, face lattice and
/// vertex edge vectors.  Vertices are numbered in lexicographic order.
class SimplePolytope {
 public:
  /// Throws Error carrying the first failing validation reason.
  explicit SimplePolytope(HPolytope h);

  const HPolytope& h() const { return h_; }
  std::size_t dim() const { return h_.dim; }
  std::size_t num_facets() const { return h_.num_facets(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Sorted by (codim, facet set); face 0 is the polytope itself.
  const std::vector<Face>& faces() const { return faces_; }
  std::optional<std::size_t> find_face(const std::vector<std::size_t>& facets) const;
  std::size_t vertex_face(std::size_t vertex) const;

  /// Rows u_i for i in I_v, in the order of Vertex::tight.
  IntMatrix vertex_normals(std::size_t vertex) const;
  /// alpha_{i,v}: dual basis to the normals at v, same order as Vertex::tight.
  const std::vector<RationalVector>& edge_vectors(std::size_t vertex) const { return edges_.at(vertex); }

  bool is_regular() const;

 private:
  HPolytope h_;
  std::vector<Vertex> vertices_;
  std::vector<Face> faces_;
  std::map<std::vector<std::size_t>, std::size_t> face_index_;
  std::vector<std::vector<RationalVector>> edges_;
};

Rational weighted_indicator(const HPolytope& h, std::span<const Rational> x);

struct PolarizedCone {
  std::size_t vertex = 0;
  IntVector apex;
  std::vector<std::size_t> facets;
  std::vector<RationalVector> edges;
  std::vector<int> flips;
  std::vector<RationalVector> polarized_edges;
  std::vector<IntVector> polarized_normals;
  std::size_t flip_count = 0;

  /// t_i = <u#_i, x - apex>, the coordinates of x - apex in the polarized edge basis.
  RationalVector cone_coordinates(std::span<const Rational> x) const;
  /// (-1)^{#v}
  int sign() const { return flip_count % 2 == 0 ? 1 : -1; }
};

Rational weighted_indicator(const PolarizedCone& cone, std::span<const Rational> x);

/// Small random integer covector pairing nonzero with every edge vector.
/// Deterministic in the seed; throws InternalError if no candidate is found.
IntVector choose_polarizing_vector(const SimplePolytope& p, std::uint64_t seed);
bool is_polarizing(const SimplePolytope& p, const IntVector& xi);

/// Flips every edge with <xi, alpha> > 0.  Throws NonGeneric on a zero pairing.
std::vector<PolarizedCone> polarize(const SimplePolytope& p, const IntVector& xi);

/// First point where the weighted indicator of the polytope differs from the
/// signed sum over polarized cones, if any.
std::optional<RationalVector> find_decomposition_violation(const SimplePolytope& p,
                                                           const std::vector<PolarizedCone>& cones,
                                                           const std::vector<RationalVector>& points);
/// Throws DecompositionViolated naming the witness.
void check_polar_decomposition(const SimplePolytope& p, const std::vector<PolarizedCone>& cones,
                               const std::vector<RationalVector>& points);

struct LatticePoint {
  IntVector point;
  std::size_t codim = 0;
};

/// Largest bounding box scanned (LE_MAX_LATTICE_POINTS, default 10^7).
std::uint64_t max_lattice_points();

/// Integer points of the polytope, with the number of tight facets at each.
/// Throws TooLarge when the bounding box exceeds the cap.
std::vector<LatticePoint> enumerate_lattice_points(const SimplePolytope& p);

Rational weighted_sum_bruteforce(const SimplePolytope& p, const Polynomial& f);
double weighted_sum_bruteforce(const SimplePolytope& p, const std::function<double(std::span<const double>)>& f);

struct Simplex {
  std::vector<std::size_t> vertices;
  int orientation = 1;  // sign of det(v_1 - v_0, ..., v_n - v_0)
};

/// Pulling triangulation: each face is coned from its lexicographically
/// smallest vertex over the triangulations of the facets not containing it.
std::vector<Simplex> triangulate(const SimplePolytope& p);

Rational volume(const SimplePolytope& p);

}  // namespace latticeem
