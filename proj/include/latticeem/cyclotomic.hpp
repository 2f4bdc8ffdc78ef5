#pragma once

#include <complex>
#include <compare>
#include <string>
#include <vector>

#include "latticeem/rational.hpp"

namespace latticeem {

/// A root of unity e^{2 pi i q}, stored as q reduced into [0, 1).
class RationalAngle {
 public:
  RationalAngle() = default;
  explicit RationalAngle(const Rational& q);

  const Rational& value() const { return q_; }
  /// Multiplicative order of the root of unity (the denominator of q).
  unsigned long order() const { return q_.get_den().get_ui(); }
  bool is_zero() const { return q_ == 0; }

  RationalAngle operator+(const RationalAngle& rhs) const { return RationalAngle(q_ + rhs.q_); }
  RationalAngle operator-(const RationalAngle& rhs) const { return RationalAngle(q_ - rhs.q_); }
  RationalAngle operator-() const { return RationalAngle(-q_); }
  RationalAngle operator*(long n) const { return RationalAngle(q_ * n); }

  bool operator==(const RationalAngle& rhs) const { return q_ == rhs.q_; }
  std::strong_ordering operator<=>(const RationalAngle& rhs) const {
    const int c = cmp(q_, rhs.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::complex<double> to_complex() const;

 private:
  Rational q_{0};
};

/// Largest cyclotomic order accepted (LE_MAX_CYCLO_ORDER, default 10000).
unsigned long max_cyclotomic_order();

unsigned long euler_phi(unsigned long n);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
/// Cached; safe to call from several threads.
const std::vector<Integer>& cyclotomic_polynomial(unsigned long n);

/// Element of Q(zeta_N), zeta_N = e^{2 pi i / N}, in the power basis
/// 1, zeta, ..., zeta^{phi(N)-1}.  Always kept reduced modulo Phi_N, so two
/// numbers of the same order are equal iff their coefficient vectors are.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(Rational(0)) {}
  CyclotomicNumber(const Rational& q);  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(long q) : CyclotomicNumber(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  static CyclotomicNumber root_of_unity(const RationalAngle& angle);
  /// sum_i powers[i] zeta_N^i for any number of powers; reduces.
  static CyclotomicNumber from_powers(unsigned long order, const std::vector<Rational>& powers);

  unsigned long order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Same number written in Q(zeta_M) for a multiple M of order().
  CyclotomicNumber lifted(unsigned long multiple) const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator*=(const Rational& rhs);
  CyclotomicNumber& operator/=(const CyclotomicNumber& rhs) { return *this *= rhs.inverse(); }

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& b) { return a *= b; }
  friend CyclotomicNumber operator*(const Rational& b, CyclotomicNumber a) { return a *= b; }
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  CyclotomicNumber operator-() const;

  /// Throws InvalidArgument for zero.
  CyclotomicNumber inverse() const;

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  bool is_zero() const;
  bool is_rational() const;
  /// Throws NotRational when the number is not in Q.
  Rational rational_part() const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  CyclotomicNumber(unsigned long order, std::vector<Rational> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}

  unsigned long order_ = 1;
  std::vector<Rational> coeffs_;
};

}  // namespace latticeem
