#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latticeem/rational.hpp"

namespace latticeem {

using Exponent = std::vector<unsigned>;

/// Sparse multivariate polynomial with rational coefficients in a fixed
/// number of variables x1..xn.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(const Exponent& exponent, const Rational& c);

  /// Grammar: sum of terms "c*x1^a1*...*xn^an" with integer or p/q coefficients.
  static Polynomial parse(std::string_view text, std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  Rational coefficient(const Exponent& exponent) const;

  void add_term(const Exponent& exponent, const Rational& c);

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& rhs) const = default;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  Polynomial derivative(std::size_t var, unsigned order = 1) const;

  /// Drops every term of total degree above max_degree.
  Polynomial truncated(unsigned max_degree) const;

  std::string to_string() const;

 private:
  std::size_t num_vars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Deterministic pseudo-random polynomial: 1 to 6 terms of total degree at
/// most max_degree, coefficients p/q with |p| <= 9 and 1 <= q <= 4.
Polynomial random_polynomial(std::size_t num_vars, unsigned max_degree, std::uint64_t seed);

}  // namespace latticeem
