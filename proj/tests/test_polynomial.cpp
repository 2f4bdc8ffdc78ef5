#include <gtest/gtest.h>

#include "latticeem/error.hpp"
#include "latticeem/polynomial.hpp"

using namespace latticeem;

TEST(Polynomial, ParseBasics) {
  const auto p = Polynomial::parse("3*x1^2*x2 - 1/2*x2 + 5", 2);
  EXPECT_EQ(p.coefficient({2, 1}), 3);
  EXPECT_EQ(p.coefficient({0, 1}), Rational(-1, 2));
  EXPECT_EQ(p.coefficient({0, 0}), 5);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(Polynomial::parse("0", 3).total_degree(), -1);
  EXPECT_EQ(Polynomial::parse("x1 + x1", 1), Polynomial::parse("2*x1", 1));
}

TEST(Polynomial, ParseRejectsBadInput) {
  EXPECT_THROW(Polynomial::parse("x3", 2), Error);
  EXPECT_THROW(Polynomial::parse("x1^", 1), Error);
  EXPECT_THROW(Polynomial::parse("2**x1", 1), Error);
  EXPECT_THROW(Polynomial::parse("", 1), Error);
}

TEST(Polynomial, PrintParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = random_polynomial(3, 4, seed);
    EXPECT_EQ(Polynomial::parse(p.to_string(), 3), p) << p.to_string();
  }
}

TEST(Polynomial, Arithmetic) {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const auto one = Polynomial::constant(2, 1);
  EXPECT_EQ((x + y).pow(2), x * x + Rational(2) * x * y + y * y);
  EXPECT_EQ((x + one) * (x - one), x * x - one);
  EXPECT_EQ(((x + y).pow(3)).derivative(0, 2), Rational(6) * (x + y));
  EXPECT_EQ((x * x * y + x).truncated(2), x);
  const RationalVector pt{Rational(1, 2), Rational(-3)};
  EXPECT_EQ((x * x * y).evaluate(pt), Rational(-3, 4));
  const std::vector<double> dp{0.5, -3.0};
  EXPECT_DOUBLE_EQ((x * x * y).evaluate(dp), -0.75);
}

TEST(Polynomial, RandomPolynomialsAreDeterministic) {
  EXPECT_EQ(random_polynomial(2, 4, 9), random_polynomial(2, 4, 9));
  for (std::uint64_t seed = 0; seed < 30; ++seed) EXPECT_LE(random_polynomial(2, 4, seed).total_degree(), 4);
}
