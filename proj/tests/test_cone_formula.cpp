#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "latticeem/cone_formula.hpp"
#include "latticeem/em1d.hpp"
#include "latticeem/error.hpp"
#include "latticeem/euler_maclaurin.hpp"
#include "latticeem/verify.hpp"

using namespace latticeem;
using namespace latticeem::testing;

namespace {

Derivatives1D along_ray(const SmoothFunction& f, double apex, double direction) {
  return [&f, apex, direction](unsigned order, double t) {
    const std::vector<double> x{apex + direction * t};
    return std::pow(direction, order) * f.partial(x, Exponent{order});
  };
}

void expect_cone_identity(const SimplePolytope& p, const SmoothFunction& f, unsigned k, std::uint64_t seed) {
  const GroupStructure groups(p);
  for (const auto& cone : polarize(p, choose_polarizing_vector(p, seed))) {
    const auto& g = groups.group(p.vertex_face(cone.vertex));
    std::complex<double> average = 0;
    for (std::size_t e = 0; e < g.order(); ++e) {
      const auto angles = polarized_angles(cone, groups, p, e);
      const auto lhs = twisted_orthant_sum(cone, angles, f);
      const auto op = cone_operator_part(cone, angles, f, k);
      const auto r = cone_remainder(cone, angles, f, k);
      EXPECT_LT(std::abs(lhs - op.value - r.value), 1e-7) << "vertex " << cone.vertex << " element " << e;
      average += lhs;
    }
    average /= static_cast<double>(g.order());
    EXPECT_NEAR(average.real(), cone_weighted_sum(cone, f), 1e-12);
    EXPECT_NEAR(average.imag(), 0.0, 1e-12);
  }
}

}  // namespace

TEST(ConeFormula, RayMatchesOneDimensionalFormula) {
  const SimplePolytope seg(HPolytope::interval(0, 8));
  const auto f = SmoothFunction::gaussian_bump({1.3}, {1.0}, {4.0});
  for (const auto& cone : polarize(seg, {1})) {
    const double apex = static_cast<double>(cone.apex[0]);
    const double dir = cone.polarized_edges[0][0].get_d();
    const double end = dir > 0 ? 5.3 - apex : apex + 2.7;
    for (const auto& lam : {RationalAngle(), RationalAngle(Rational(1, 2)), RationalAngle(Rational(1, 3))}) {
      for (unsigned k : {2u, 3u}) {
        const auto ray = twisted_ray_sum(along_ray(f, apex, dir), std::max(end, 0.0), lam, k);
        const auto op = cone_operator_part(cone, {lam}, f, k);
        const auto r = cone_remainder(cone, {lam}, f, k);
        EXPECT_LT(std::abs(op.value - ray.operator_term), 1e-9);
        EXPECT_LT(std::abs(r.value - ray.remainder), 1e-9);
        EXPECT_LT(std::abs(twisted_orthant_sum(cone, {lam}, f) - ray.lhs), 1e-12);
      }
    }
  }
}

TEST(ConeFormula, IntervalRemainderMatchesOneDimensional) {
  const SimplePolytope seg(HPolytope::interval(0, 8));
  const auto f = SmoothFunction::gaussian_bump({6.5}, {1.2}, {3.0});
  const Derivatives1D d = [&f](unsigned order, double x) { return f.partial(std::vector<double>{x}, Exponent{order}); };
  for (unsigned k : {2u, 3u, 4u}) {
    const auto one = em_interval(d, 0, 8, k);
    EXPECT_NEAR(polytope_remainder(seg, {1}, f, k), one.remainder, 1e-9);
    EXPECT_NEAR(polytope_remainder(seg, {-1}, f, k), one.remainder, 1e-9);
    const auto terms = polytope_terms(seg, {1}, f, k);
    EXPECT_NEAR(terms.main, one.operator_term, 1e-9);
  }
}

TEST(ConeFormula, PerElementIdentityOrderOne) {
  expect_cone_identity(SimplePolytope(simplex2(3)), SmoothFunction::gaussian_bump({1.0, 1.5}, {1.0, 1.0}, {2.0, 2.0}), 2, 1);
}

TEST(ConeFormula, PerElementIdentityOrderTwo) {
  expect_cone_identity(SimplePolytope(thin_triangle(3)), SmoothFunction::gaussian_bump({2.2, 0.8}, {1.0, 1.0}, {2.5, 2.5}), 3, 2);
}

TEST(ConeFormula, PerElementIdentityOrderThree) {
  const SimplePolytope p(HPolytope{2, {{1, 0}, {0, 1}, {-3, -1}}, {0, 0, 6}});
  expect_cone_identity(p, SmoothFunction::gaussian_bump({1.4, 1.0}, {1.0, 1.0}, {2.0, 2.5}), 2, 3);
}

TEST(ConeFormula, CatchesAllLatticePoints) {
  const SimplePolytope p(thin_triangle(3));
  const auto f = SmoothFunction::gaussian_bump({1.2, 2.1}, {1.0, 1.0}, {2.5, 2.5});
  double total = 0;
  for (const auto& cone : polarize(p, choose_polarizing_vector(p, 7))) total += cone.sign() * cone_weighted_sum(cone, f);
  const double direct = weighted_sum_bruteforce(p, [&f](std::span<const double> x) { return f.value(x); });
  EXPECT_NEAR(total, direct, 1e-12);
}

TEST(ConeFormula, TriangleTotals) {
  const SimplePolytope p(thin_triangle(3));
  const auto f = SmoothFunction::gaussian_bump({1.2, 2.1}, {1.0, 1.0}, {2.5, 2.5});
  for (unsigned k : {2u, 3u}) {
    const auto reports = verify_main_theorem(p, f, k, {1, 2, 3});
    ASSERT_EQ(reports.size(), 3u);
    for (const auto& r : reports) {
      EXPECT_LT(r.defect, 1e-6);
      EXPECT_NEAR(r.main_term, reports[0].main_term, 1e-7);
      EXPECT_NEAR(r.remainder, reports[0].remainder, 1e-7);
      EXPECT_EQ(r.lhs, reports[0].lhs);
    }
  }
}

TEST(ConeFormula, DisjointSupportHasNoRemainder) {
  const SimplePolytope p(thin_triangle(3));
  const auto f = SmoothFunction::gaussian_bump({-2.0, -1.5}, {1.0, 1.0}, {1.5, 1.2});
  for (std::uint64_t seed : {1u, 2u}) {
    const auto t = polytope_terms(p, choose_polarizing_vector(p, seed), f, 2);
    EXPECT_LT(std::abs(t.remainder), 1e-7);
    EXPECT_LT(std::abs(t.main), 1e-7);
  }
}

TEST(ConeFormula, HarnessRejectsLargeOrders) {
  const SimplePolytope p(thin_triangle(3));
  try {
    verify_main_theorem(p, SmoothFunction::zero(2), kMaxHarnessK + 1, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(ConeFormula, ZeroFunction) {
  const SimplePolytope p(thin_triangle(3));
  const auto t = polytope_terms(p, choose_polarizing_vector(p, 1), SmoothFunction::zero(2), 3);
  EXPECT_EQ(t.main, 0.0);
  EXPECT_EQ(t.remainder, 0.0);
  const auto reports = verify_main_theorem(p, SmoothFunction::zero(2), 3, {1});
  EXPECT_EQ(reports.at(0).lhs, 0.0);
  EXPECT_EQ(reports.at(0).defect, 0.0);
}

TEST(ConeFormula, PolynomialTimesPlateauMainTermIsExact) {
  const SimplePolytope p(thin_triangle());
  const auto poly = Polynomial::parse("9/4 - x1 - 10*x1*x2", 2);
  const double exact = to_double(weighted_sum_polynomial(p, poly));
  EXPECT_DOUBLE_EQ(exact, 2.5625);
  const auto f = SmoothFunction::polynomial_plateau(poly, {-0.5, -0.5}, {1.5, 2.5}, 3.0);
  const auto t = polytope_terms(p, choose_polarizing_vector(p, 1), f, 5);
  EXPECT_NEAR(t.main, exact, 1e-7);
  EXPECT_LT(std::abs(t.remainder), 1e-6);
}

TEST(ConeFormula, RemainderObeysFittedBound) {
  const SimplePolytope p(thin_triangle(3));
  const unsigned k = 2, n = 2;
  auto derivative_norm = [&](const SmoothFunction& f) {
    double best = 0;
    for (unsigned a = 0; a <= n * k; ++a)
      for (unsigned b = 0; a + b <= n * k; ++b) {
        if (a + b < k) continue;
        const Exponent e{a, b};
        const Box box = f.support();
        const int cells = 300;
        const double dx = (box.hi[0] - box.lo[0]) / cells, dy = (box.hi[1] - box.lo[1]) / cells;
        double norm = 0;
        for (int i = 0; i < cells; ++i)
          for (int j = 0; j < cells; ++j) {
            const std::vector<double> x{box.lo[0] + (i + 0.5) * dx, box.lo[1] + (j + 0.5) * dy};
            norm += std::abs(f.partial(x, e)) * dx * dy;
          }
        best = std::max(best, norm);
      }
    return best;
  };
  auto bump = [](int i) {
    return SmoothFunction::gaussian_bump({0.4 + 0.25 * i, 0.5 + 0.45 * i}, {0.8 + 0.05 * i, 1.0},
                                         {1.8 + 0.1 * i, 2.0 + 0.05 * i});
  };
  const auto xi = choose_polarizing_vector(p, 1);
  const auto fit = bump(0);
  const double K = 10 * std::abs(polytope_remainder(p, xi, fit, k)) / derivative_norm(fit);
  for (int i = 1; i <= 10; ++i) {
    const auto f = bump(i);
    EXPECT_LE(std::abs(polytope_remainder(p, xi, f, k)), K * derivative_norm(f)) << i;
  }
}

TEST(ConeFormula, DomainCoversSupport) {
  const SimplePolytope p(thin_triangle(3));
  const auto far = SmoothFunction::gaussian_bump({20.0, 20.0}, {1.0, 1.0}, {1.0, 1.0});
  for (const auto& cone : polarize(p, choose_polarizing_vector(p, 1))) {
    const auto dom = cone_domain(cone, far);
    EXPECT_EQ(dom.jacobian, cone.vertex == 2 ? 2u : 1u);
    if (!dom.empty) EXPECT_EQ(dom.upper.size(), 2u);
  }
}
