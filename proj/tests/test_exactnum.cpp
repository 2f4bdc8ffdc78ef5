#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/error.hpp"
#include "latticeem/int_matrix.hpp"

using namespace latticeem;

namespace {

Integer laplace_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    const Integer term = a[0][j] * laplace_det(minor);
    total += j % 2 == 0 ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all i x i minors, i.e. d_1 d_2 ... d_i.
Integer determinantal_divisor(const IntMatrix& m, std::size_t i) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  subsets(m.rows(), i, 0, cur, rows);
  subsets(m.cols(), i, 0, cur, cols);
  Integer g = 0;
  for (const auto& r : rows)
    for (const auto& c : cols) {
      std::vector<std::vector<Integer>> sub;
      for (auto a : r) {
        std::vector<Integer> row;
        for (auto b : c) row.push_back(m(a, b));
        sub.push_back(row);
      }
      const Integer d = laplace_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> dist(-6, 6);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

CyclotomicNumber random_cyclotomic(std::mt19937_64& rng, unsigned long order) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  std::vector<Rational> powers(order);
  for (auto& c : powers) c = Rational(num(rng), den(rng));
  for (auto& c : powers) c.canonicalize();
  return CyclotomicNumber::from_powers(order, powers);
}

CyclotomicNumber zeta(unsigned long n, long power = 1) {
  return CyclotomicNumber::root_of_unity(RationalAngle(Rational(power, static_cast<long>(n))));
}

}  // namespace

TEST(Rational, FormattingAndParsing) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  Rational q(-6, 4);
  q.canonicalize();
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_EQ(mod_floor(Integer(-7), Integer(3)), 2);
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(factorial(5), 120);
}

TEST(SmithNormalForm, Identity) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  EXPECT_EQ(s.P * s.D * s.Q, IntMatrix::identity(2));
}

TEST(SmithNormalForm, SmallExamples) {
  const auto a = smith_normal_form(IntMatrix::from_rows(std::vector<IntVector>{{2, 0}, {0, 3}}));
  EXPECT_EQ(a.diagonal(), (std::vector<Integer>{1, 6}));
  const IntMatrix m = IntMatrix::from_rows(std::vector<IntVector>{{0, 1}, {-2, -1}});
  const auto b = smith_normal_form(m);
  EXPECT_EQ(b.diagonal(), (std::vector<Integer>{1, 2}));
  EXPECT_EQ(b.P * b.D * b.Q, m);
}

TEST(SmithNormalForm, RandomMatricesAgreeWithDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 4;
    const IntMatrix m = random_matrix(rng, r, c);
    const auto s = smith_normal_form(m);
    ASSERT_EQ(s.P * s.D * s.Q, m);
    EXPECT_EQ(abs(s.P.determinant()), 1);
    EXPECT_EQ(abs(s.Q.determinant()), 1);
    EXPECT_EQ(s.P * s.P_inv, IntMatrix::identity(r));
    EXPECT_EQ(s.Q * s.Q_inv, IntMatrix::identity(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ(s.D(i, j), 0);
    const auto d = s.diagonal();
    Integer product = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_GE(d[i], 0);
      if (i + 1 < d.size() && d[i] != 0) EXPECT_EQ(d[i + 1] % d[i], 0);
      if (i + 1 < d.size() && d[i] == 0) EXPECT_EQ(d[i + 1], 0);
      product *= d[i];
      EXPECT_EQ(product, determinantal_divisor(m, i + 1));
    }
  }
}

TEST(IntMatrix, DeterminantMatchesLaplace) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix m = random_matrix(rng, n, n);
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
    EXPECT_EQ(m.determinant(), laplace_det(rows));
  }
}

TEST(SolveRationalSystem, Examples) {
  const IntMatrix a = IntMatrix::from_rows(std::vector<IntVector>{{0, 1}, {-2, -1}});
  const RationalVector b1{Rational(1), Rational(0)};
  EXPECT_EQ(solve_rational_system(a, b1), (RationalVector{Rational(-1, 2), Rational(1)}));
  const RationalVector b2{Rational(0), Rational(1)};
  EXPECT_EQ(solve_rational_system(a, b2), (RationalVector{Rational(-1, 2), Rational(0)}));
  const RationalVector b3{Rational(3, 7), Rational(-2)};
  EXPECT_EQ(solve_rational_system(IntMatrix::identity(2), b3), b3);
}

TEST(SolveRationalSystem, SingularThrows) {
  const IntMatrix a = IntMatrix::from_rows(std::vector<IntVector>{{1, 2}, {2, 4}});
  const RationalVector b{Rational(1), Rational(1)};
  try {
    solve_rational_system(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(SolveRationalSystem, RandomResidualIsZero) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix a = random_matrix(rng, n, n);
    if (a.determinant() == 0) continue;
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    for (auto& q : b) q.canonicalize();
    const auto x = solve_rational_system(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(a(i, j)) * x[j];
      EXPECT_EQ(s, b[i]);
    }
  }
}

TEST(Cyclotomic, EulerPhiMatchesCount) {
  for (unsigned long n = 1; n <= 60; ++n) {
    unsigned long count = 0;
    for (unsigned long k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) ++count;
    EXPECT_EQ(euler_phi(n), count) << n;
  }
}

TEST(Cyclotomic, PolynomialsMultiplyToXnMinusOne) {
  for (unsigned long n = 1; n <= 30; ++n) {
    std::vector<Integer> product{1};
    for (unsigned long d = 1; d <= n; ++d) {
      if (n % d) continue;
      const auto& phi = cyclotomic_polynomial(d);
      EXPECT_EQ(phi.size(), euler_phi(d) + 1);
      std::vector<Integer> next(product.size() + phi.size() - 1, 0);
      for (std::size_t i = 0; i < product.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) next[i + j] += product[i] * phi[j];
      product = next;
    }
    std::vector<Integer> expected(n + 1, 0);
    expected[0] = -1;
    expected[n] = 1;
    EXPECT_EQ(product, expected) << n;
  }
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(zeta(4) * zeta(4), CyclotomicNumber(-1));
  EXPECT_TRUE((zeta(3) * zeta(3) + zeta(3) + CyclotomicNumber(1)).is_zero());
  EXPECT_EQ((CyclotomicNumber(1) + zeta(6)) * (CyclotomicNumber(1) - zeta(6)), CyclotomicNumber(1) - zeta(6, 2));
  EXPECT_EQ(CyclotomicNumber(0).rational_part(), 0);
  EXPECT_EQ((zeta(3) + zeta(3, 2)).rational_part(), -1);
  try {
    zeta(5).rational_part();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRational);
  }
}

TEST(Cyclotomic, MixedOrdersEmbedInCommonField) {
  const auto sum = zeta(4) + zeta(6);
  EXPECT_EQ(sum.order() % 12, 0u);
  const auto expected = std::complex<double>(0, 1) + std::polar(1.0, 2 * M_PI / 6);
  EXPECT_LT(std::abs(sum.to_complex() - expected), 1e-12);
  EXPECT_EQ(zeta(12, 3), zeta(4));
}

TEST(Cyclotomic, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(17);
  for (unsigned long order : {1ul, 2ul, 3ul, 4ul, 5ul, 6ul, 8ul, 9ul, 12ul, 15ul, 24ul}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_cyclotomic(rng, order);
      const auto b = random_cyclotomic(rng, order);
      const auto c = random_cyclotomic(rng, order);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CyclotomicNumber(1));
      const auto fa = a.to_complex(), fb = b.to_complex();
      EXPECT_LT(std::abs((a * b).to_complex() - fa * fb), 1e-9);
      EXPECT_LT(std::abs((a + b).to_complex() - (fa + fb)), 1e-9);
    }
  }
}

TEST(Cyclotomic, GaloisOrbitSumsAreRational) {
  for (unsigned long n = 1; n <= 40; ++n) {
    CyclotomicNumber orbit(0);
    for (unsigned long k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) orbit += zeta(n, static_cast<long>(k));
    EXPECT_NO_THROW(orbit.rational_part()) << n;
  }
}

TEST(Cyclotomic, OrderCapRejectsHugeOrders) {
  EXPECT_THROW(CyclotomicNumber::root_of_unity(RationalAngle(Rational(1, 1000003))), Error);
}

TEST(RationalAngle, ReducesModuloOne) {
  EXPECT_EQ(RationalAngle(Rational(7, 3)).value(), Rational(1, 3));
  EXPECT_EQ(RationalAngle(Rational(-1, 4)).value(), Rational(3, 4));
  EXPECT_EQ(RationalAngle(Rational(5, 6)).order(), 6u);
  EXPECT_TRUE((RationalAngle(Rational(1, 3)) * 3).is_zero());
}
