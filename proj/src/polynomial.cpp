#include "latticeem/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <random>

#include "latticeem/error.hpp"

namespace latticeem {

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  Exponent e(num_vars, 0);
  e.at(index) = 1;
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const Exponent& exponent, const Rational& c) {
  Polynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

int Polynomial::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto a : e) d += static_cast<int>(a);
    deg = std::max(deg, d);
  }
  return deg;
}

Rational Polynomial::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& exponent, const Rational& c) {
  if (exponent.size() != num_vars_) throw Error(ErrorCode::InvalidArgument, "exponent length does not match variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (num_vars_ != rhs.num_vars_) throw Error(ErrorCode::InvalidArgument, "polynomials in different variable counts");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (num_vars_ != rhs.num_vars_) throw Error(ErrorCode::InvalidArgument, "polynomials in different variable counts");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw Error(ErrorCode::InvalidArgument, "polynomials in different variable counts");
  Polynomial out(a.num_vars_);
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(num_vars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (x.size() != num_vars_) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  Rational sum = 0;
  Rational term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != num_vars_) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(x[i], static_cast<int>(e[i]));
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var, unsigned order) const {
  Polynomial out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) < order) continue;
    Exponent d = e;
    Rational f = c;
    for (unsigned k = 0; k < order; ++k) f *= e[var] - k;
    d[var] -= order;
    out.add_term(d, f);
  }
  return out;
}

Polynomial Polynomial::truncated(unsigned max_degree) const {
  Polynomial out(num_vars_);
  for (const auto& [e, c] : terms_) {
    unsigned d = 0;
    for (auto a : e) d += a;
    if (d <= max_degree) out.terms_.emplace(e, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0/1";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += latticeem::to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

  Polynomial run() {
    Polynomial result(num_vars_);
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (!first) {
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          sign = -1;
          ++pos_;
        } else {
          fail("expected '+' or '-'");
        }
        skip_space();
      }
      while (!at_end() && (peek() == '+' || peek() == '-')) {
        if (peek() == '-') sign = -sign;
        ++pos_;
        skip_space();
      }
      auto [exponent, coeff] = term();
      result.add_term(exponent, sign * coeff);
      first = false;
      skip_space();
    }
    return result;
  }

 private:
  std::pair<Exponent, Rational> term() {
    Exponent exponent(num_vars_, 0);
    Rational coeff = 1;
    while (true) {
      skip_space();
      if (at_end()) fail("dangling factor");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        Integer num = integer();
        Integer den = 1;
        skip_space();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip_space();
          den = integer();
          if (den == 0) fail("zero denominator");
        }
        coeff *= Rational(num, den);
        coeff.canonicalize();
      } else if (peek() == 'x') {
        ++pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("variable needs an index");
        const Integer index = integer();
        if (index < 1 || index > static_cast<long>(num_vars_))
          fail("variable x" + index.get_str() + " outside x1..x" + std::to_string(num_vars_));
        unsigned power = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_space();
          const Integer p = integer();
          if (p > 64) fail("exponent too large");
          power = static_cast<unsigned>(p.get_ui());
        }
        exponent[index.get_ui() - 1] += power;
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      skip_space();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return {exponent, coeff};
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "polynomial '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t num_vars) { return Parser(text, num_vars).run(); }

Polynomial random_polynomial(std::size_t num_vars, unsigned max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  Polynomial p(num_vars);
  const long terms = uniform(1, 6);
  for (long t = 0; t < terms; ++t) {
    Exponent e(num_vars, 0);
    const long degree = uniform(0, max_degree);
    for (long d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(uniform(0, static_cast<long>(num_vars) - 1))];
    long num = 0;
    while (num == 0) num = uniform(-9, 9);
    Rational c(Integer(num), Integer(uniform(1, 4)));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace latticeem
