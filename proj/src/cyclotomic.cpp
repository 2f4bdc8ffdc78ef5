#include "latticeem/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <shared_mutex>

#include "latticeem/error.hpp"

namespace latticeem {

RationalAngle::RationalAngle(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  q_ = q - Rational(fl);
}

std::complex<double> RationalAngle::to_complex() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * q_.get_d());
}

unsigned long max_cyclotomic_order() {
  static const unsigned long cap = [] {
    if (const char* env = std::getenv("LE_MAX_CYCLO_ORDER")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && v > 0) return v;
    }
    return 10000UL;
  }();
  return cap;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

void check_order(unsigned long n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  if (n > max_cyclotomic_order())
    throw Error(ErrorCode::OrderTooLarge,
                "cyclotomic order " + std::to_string(n) + " exceeds cap " + std::to_string(max_cyclotomic_order()));
}

std::shared_mutex cyclo_mutex;
std::map<unsigned long, std::vector<Integer>> cyclo_cache;

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero, trimmed).
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t d = a.size(); d-- >= b.size();) {
    if (a[d] == 0) continue;
    const Rational c = a[d] / lead;
    const std::size_t shift = d - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly subtract(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Reduce an arbitrary power-basis expansion into the canonical length-phi(n) vector.
std::vector<Rational> reduce(unsigned long n, const std::vector<Rational>& powers) {
  const auto& phi_poly = cyclotomic_polynomial(n);
  const std::size_t phi = phi_poly.size() - 1;
  std::vector<Rational> r(std::max<std::size_t>(n, phi));
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] != 0) r[i % n] += powers[i];
  }
  for (std::size_t d = r.size(); d-- > phi;) {
    if (r[d] == 0) continue;
    const Rational c = r[d];
    const std::size_t shift = d - phi;
    for (std::size_t j = 0; j <= phi; ++j) r[shift + j] -= c * phi_poly[j];
  }
  r.resize(phi);
  return r;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned long n) {
  check_order(n);
  {
    std::shared_lock lock(cyclo_mutex);
    auto it = cyclo_cache.find(n);
    if (it != cyclo_cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d; all divisions are exact over Z.
  std::vector<Integer> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& div = cyclotomic_polynomial(d);
    const std::size_t dd = div.size() - 1;
    std::vector<Integer> q(p.size() - dd);
    for (std::size_t k = p.size(); k-- > dd;) {
      const Integer c = p[k];
      q[k - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) p[k - dd + j] -= c * div[j];
    }
    p = std::move(q);
  }
  std::unique_lock lock(cyclo_mutex);
  return cyclo_cache.emplace(n, std::move(p)).first->second;
}

CyclotomicNumber::CyclotomicNumber(const Rational& q) : order_(1), coeffs_{q} {}

CyclotomicNumber CyclotomicNumber::root_of_unity(const RationalAngle& angle) {
  const unsigned long n = angle.order();
  check_order(n);
  std::vector<Rational> powers(n);
  powers[angle.value().get_num().get_ui()] = 1;
  return CyclotomicNumber(n, reduce(n, powers));
}

CyclotomicNumber CyclotomicNumber::from_powers(unsigned long order, const std::vector<Rational>& powers) {
  check_order(order);
  return CyclotomicNumber(order, reduce(order, powers));
}

CyclotomicNumber CyclotomicNumber::lifted(unsigned long multiple) const {
  if (multiple == order_) return *this;
  if (multiple % order_ != 0) throw Error(ErrorCode::InvalidArgument, "lift target is not a multiple of the order");
  check_order(multiple);
  const unsigned long step = multiple / order_;
  std::vector<Rational> powers(multiple);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) powers[(i * step) % multiple] += coeffs_[i];
  return CyclotomicNumber(multiple, reduce(multiple, powers));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
  const unsigned long n = std::lcm(order_, rhs.order_);
  if (n != order_) *this = lifted(n);
  if (n == rhs.order_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  } else {
    const auto r = rhs.lifted(n);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += r.coeffs_[i];
  }
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) { return *this += -rhs; }

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
  if (rhs.order_ == 1) return *this *= rhs.coeffs_[0];
  if (order_ == 1) {
    const Rational c = coeffs_[0];
    *this = rhs;
    return *this *= c;
  }
  const unsigned long n = std::lcm(order_, rhs.order_);
  const auto a = lifted(n);
  const auto b = rhs.lifted(n);
  *this = CyclotomicNumber(n, reduce(n, multiply(a.coeffs_, b.coeffs_)));
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  if (order_ == 1) return CyclotomicNumber(1 / coeffs_[0]);
  const auto& phi_int = cyclotomic_polynomial(order_);
  Poly r0(phi_int.begin(), phi_int.end());
  Poly r1 = coeffs_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = subtract(s0, multiply(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because Phi_N is irreducible.
  const Rational g = r0[0];
  for (auto& c : s0) c /= g;
  return CyclotomicNumber(order_, reduce(order_, s0));
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const unsigned long n = std::lcm(a.order_, b.order_);
  return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CyclotomicNumber::rational_part() const {
  if (!is_rational()) throw Error(ErrorCode::NotRational, to_string() + " is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

std::complex<double> CyclotomicNumber::to_complex() const {
  std::complex<double> sum = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    sum += coeffs_[i].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * double(i) / double(order_));
  }
  return sum;
}

std::string CyclotomicNumber::to_string() const {
  if (is_rational()) return latticeem::to_string(rational_part());
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += latticeem::to_string(coeffs_[i]);
    if (i > 0) out += "*zeta" + std::to_string(order_) + "^" + std::to_string(i);
  }
  return out;
}

}  // namespace latticeem
