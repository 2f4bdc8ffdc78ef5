#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "latticeem/error.hpp"
#include "latticeem/polytope.hpp"

using namespace latticeem;
using namespace latticeem::testing;

namespace {

RationalVector rv(std::initializer_list<long> xs) {
  RationalVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

ErrorCode reason(const HPolytope& h) {
  const auto r = validate(h);
  EXPECT_FALSE(r.valid);
  return r.reason.value_or(ErrorCode::InternalError);
}

}  // namespace

TEST(Validate, AcceptsCorpus) {
  for (const auto& [name, h] : corpus()) EXPECT_TRUE(validate(h).valid) << name;
}

TEST(Validate, UnitSquare) {
  const auto r = validate(unit_square());
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.vertices.size(), 4u);
}

TEST(Validate, ThinTriangleVertices) {
  const auto r = validate(thin_triangle());
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.vertices, (std::vector<RationalVector>{rv({0, 0}), rv({0, 2}), rv({1, 0})}));
}

TEST(Validate, RejectionReasons) {
  HPolytope redundant = unit_square();
  redundant.normals.push_back({1, 0});
  redundant.offsets.push_back(1);
  EXPECT_EQ(reason(redundant), ErrorCode::Redundant);

  const HPolytope not_primitive{2, {{2, 0}, {0, 1}, {-1, -1}}, {0, 0, 1}};
  const auto r = validate(not_primitive);
  EXPECT_EQ(r.reason, ErrorCode::NotPrimitive);
  EXPECT_EQ(r.offending, std::vector<std::size_t>{0});

  const HPolytope not_integral{2, {{1, 0}, {0, 1}, {-2, -1}}, {0, 0, 1}};
  EXPECT_EQ(reason(not_integral), ErrorCode::NotIntegral);

  const HPolytope unbounded{2, {{1, 0}, {0, 1}}, {0, 0}};
  EXPECT_EQ(reason(unbounded), ErrorCode::Unbounded);

  const HPolytope empty{1, {{1}, {-1}}, {-1, 0}};
  EXPECT_EQ(reason(empty), ErrorCode::Empty);

  const HPolytope pyramid{3, {{0, 0, 1}, {1, 0, -1}, {0, 1, -1}, {-1, 0, -1}, {0, -1, -1}}, {0, 0, 0, 2, 2}};
  EXPECT_EQ(reason(pyramid), ErrorCode::NotSimple);

  EXPECT_THROW(SimplePolytope{not_integral}, Error);
}

TEST(SimplePolytope, VerticesAndTightSets) {
  const SimplePolytope p(thin_triangle());
  ASSERT_EQ(p.vertices().size(), 3u);
  EXPECT_EQ(p.vertices()[0].coords, (IntVector{0, 0}));
  EXPECT_EQ(p.vertices()[0].tight, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.vertices()[1].coords, (IntVector{0, 2}));
  EXPECT_EQ(p.vertices()[1].tight, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(p.vertices()[2].coords, (IntVector{1, 0}));
  EXPECT_EQ(p.vertices()[2].tight, (std::vector<std::size_t>{1, 2}));
  const SimplePolytope s(simplex2());
  EXPECT_EQ(s.vertices().size(), 3u);
}

TEST(SimplePolytope, FaceCounts) {
  EXPECT_EQ(SimplePolytope(unit_square()).faces().size(), 9u);
  EXPECT_EQ(SimplePolytope(simplex2()).faces().size(), 7u);
  const SimplePolytope cube(unit_cube());
  EXPECT_EQ(cube.faces().size(), 27u);
  std::vector<int> by_codim(4, 0);
  for (const auto& f : cube.faces()) ++by_codim[f.codim()];
  EXPECT_EQ(by_codim, (std::vector<int>{1, 6, 12, 8}));
  EXPECT_TRUE(cube.faces()[0].facets.empty());
}

TEST(SimplePolytope, FacesAtVertexAreSubsetsOfTightSet) {
  for (const auto& [name, h] : corpus()) {
    const SimplePolytope p(h);
    for (const auto& v : p.vertices()) {
      const std::size_t n = v.tight.size();
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) sub.push_back(v.tight[i]);
        const auto f = p.find_face(sub);
        ASSERT_TRUE(f.has_value()) << name;
        const auto& verts = p.faces()[*f].vertices;
        EXPECT_NE(std::find(verts.begin(), verts.end(), v.id), verts.end());
      }
    }
  }
}

TEST(SimplePolytope, EdgeVectors) {
  const SimplePolytope sq(unit_square());
  EXPECT_EQ(sq.edge_vectors(0), (std::vector<RationalVector>{rv({1, 0}), rv({0, 1})}));
  const SimplePolytope t(thin_triangle());
  const std::vector<RationalVector> expected{{Rational(-1, 2), Rational(1)}, {Rational(-1, 2), Rational(0)}};
  EXPECT_EQ(t.edge_vectors(2), expected);
  EXPECT_EQ(t.edge_vectors(1), (std::vector<RationalVector>{rv({1, -2}), rv({0, -1})}));
  for (const auto& [name, h] : corpus()) {
    const SimplePolytope p(h);
    for (const auto& v : p.vertices())
      for (std::size_t i = 0; i < v.tight.size(); ++i)
        for (std::size_t j = 0; j < v.tight.size(); ++j)
          EXPECT_EQ(dot(h.normals[v.tight[j]], p.edge_vectors(v.id)[i]), i == j ? 1 : 0) << name;
  }
}

TEST(Polarization, ChoosesGenericVectors) {
  const SimplePolytope sq(unit_square());
  EXPECT_FALSE(is_polarizing(sq, {1, 0}));
  EXPECT_THROW(polarize(sq, {1, 0}), Error);
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_TRUE(is_polarizing(sq, choose_polarizing_vector(sq, seed)));
  EXPECT_EQ(choose_polarizing_vector(sq, 4), choose_polarizing_vector(sq, 4));

  const SimplePolytope t(thin_triangle());
  ASSERT_TRUE(is_polarizing(t, {1, 1}));
  const auto& a = t.edge_vectors(2);
  EXPECT_EQ(dot(IntVector{1, 1}, a[0]), Rational(1, 2));
  EXPECT_EQ(dot(IntVector{1, 1}, a[1]), Rational(-1, 2));
}

TEST(Polarization, FlipCounts) {
  const SimplePolytope sq(unit_square());
  const auto cones = polarize(sq, {1, 2});
  for (const auto& c : cones) {
    if (c.apex == IntVector{1, 1}) EXPECT_EQ(c.flip_count, 0u);
    if (c.apex == IntVector{0, 0}) EXPECT_EQ(c.flip_count, 2u);
    for (const auto& e : c.polarized_edges) EXPECT_LT(dot(IntVector{1, 2}, e), 0);
  }
  for (const auto& [name, h] : corpus()) {
    const SimplePolytope p(h);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto xi = choose_polarizing_vector(p, seed);
      int unflipped = 0;
      for (const auto& c : polarize(p, xi)) unflipped += c.flip_count == 0;
      EXPECT_EQ(unflipped, 1) << name;
    }
  }
}

TEST(WeightedIndicator, Square) {
  const auto h = unit_square();
  EXPECT_EQ(weighted_indicator(h, RationalVector{Rational(1, 2), Rational(1, 2)}), 1);
  EXPECT_EQ(weighted_indicator(h, rv({0, 0})), Rational(1, 4));
  EXPECT_EQ(weighted_indicator(h, RationalVector{Rational(0), Rational(1, 2)}), Rational(1, 2));
  EXPECT_EQ(weighted_indicator(h, rv({2, 0})), 0);
}

TEST(PolarDecomposition, SquareBox) {
  const SimplePolytope sq(unit_square());
  std::vector<RationalVector> pts;
  for (long x = -1; x <= 2; ++x)
    for (long y = -1; y <= 2; ++y) pts.push_back(rv({x, y}));
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto cones = polarize(sq, choose_polarizing_vector(sq, seed));
    EXPECT_FALSE(find_decomposition_violation(sq, cones, pts).has_value());
    EXPECT_NO_THROW(check_polar_decomposition(sq, cones, pts));
  }
}

TEST(PolarDecomposition, ThinTriangleEdgePoint) {
  const SimplePolytope t(thin_triangle());
  const auto cones = polarize(t, {1, 1});
  const auto x = rv({0, 1});
  Rational rhs = 0;
  for (const auto& c : cones) rhs += c.sign() * weighted_indicator(c, x);
  EXPECT_EQ(rhs, Rational(1, 2));
  EXPECT_EQ(weighted_indicator(t.h(), x), Rational(1, 2));
}

TEST(PolarDecomposition, RandomRationalPointsOnCorpus) {
  std::mt19937_64 rng(23);
  for (const auto& [name, h] : corpus()) {
    const SimplePolytope p(h);
    std::vector<RationalVector> pts;
    for (int i = 0; i < 100; ++i) {
      RationalVector x;
      for (std::size_t d = 0; d < p.dim(); ++d) {
        Rational q(static_cast<long>(rng() % 41) - 16, 1 + static_cast<long>(rng() % 4));
        q.canonicalize();
        x.push_back(q);
      }
      pts.push_back(x);
    }
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto cones = polarize(p, choose_polarizing_vector(p, seed));
      EXPECT_FALSE(find_decomposition_violation(p, cones, pts).has_value()) << name;
    }
  }
}

TEST(PolarDecomposition, DetectsBrokenCones) {
  const SimplePolytope sq(unit_square());
  auto cones = polarize(sq, {1, 2});
  cones.pop_back();
  std::vector<RationalVector> pts{rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})};
  EXPECT_TRUE(find_decomposition_violation(sq, cones, pts).has_value());
  try {
    check_polar_decomposition(sq, cones, pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DecompositionViolated);
  }
}

TEST(LatticePoints, Enumeration) {
  const auto sq = enumerate_lattice_points(SimplePolytope(unit_square()));
  ASSERT_EQ(sq.size(), 4u);
  for (const auto& lp : sq) EXPECT_EQ(lp.codim, 2u);

  const auto t = enumerate_lattice_points(SimplePolytope(thin_triangle()));
  ASSERT_EQ(t.size(), 4u);
  for (const auto& lp : t) EXPECT_EQ(lp.codim, (lp.point == IntVector{0, 1}) ? 1u : 2u);

  const auto s2 = enumerate_lattice_points(SimplePolytope(simplex2(2)));
  ASSERT_EQ(s2.size(), 6u);
  int vertices = 0, edges = 0;
  for (const auto& lp : s2) (lp.codim == 2 ? vertices : edges)++;
  EXPECT_EQ(vertices, 3);
  EXPECT_EQ(edges, 3);
}

TEST(LatticePoints, BruteForceSums) {
  const auto one2 = Polynomial::constant(2, 1);
  EXPECT_EQ(weighted_sum_bruteforce(SimplePolytope(unit_square()), one2), 1);
  EXPECT_EQ(weighted_sum_bruteforce(SimplePolytope(thin_triangle()), one2), Rational(5, 4));
  EXPECT_EQ(weighted_sum_bruteforce(SimplePolytope(HPolytope::interval(0, 5)), Polynomial::parse("x1^3", 1)),
            Rational(325, 2));
  const double d = weighted_sum_bruteforce(SimplePolytope(thin_triangle()), [](std::span<const double> x) {
    return 1 + x[0] + x[1];
  });
  EXPECT_DOUBLE_EQ(d, 5.0 / 4 + 1.0 / 4 + (2.0 / 4 + 1.0 / 2));
}

TEST(LatticePoints, TooLarge) {
  const SimplePolytope big(simplex2(100000));
  try {
    enumerate_lattice_points(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(Triangulation, CountsAndVolumes) {
  EXPECT_EQ(triangulate(SimplePolytope(simplex2())).size(), 1u);
  EXPECT_EQ(triangulate(SimplePolytope(unit_square())).size(), 2u);
  const auto cube = triangulate(SimplePolytope(unit_cube()));
  EXPECT_TRUE(cube.size() == 5 || cube.size() == 6);
  EXPECT_EQ(volume(SimplePolytope(unit_cube())), 1);
  EXPECT_EQ(volume(SimplePolytope(unit_square())), 1);
  EXPECT_EQ(volume(SimplePolytope(simplex2(3))), Rational(9, 2));
  EXPECT_EQ(volume(SimplePolytope(thin_triangle())), 1);
  EXPECT_EQ(volume(SimplePolytope(tall_simplex())), Rational(1, 3));
}
