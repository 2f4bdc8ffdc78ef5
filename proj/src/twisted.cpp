#include "latticeem/twisted.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>

#include "latticeem/error.hpp"

namespace latticeem {

namespace {

void require_nontrivial(const RationalAngle& lambda) {
  if (lambda.is_zero()) throw Error(ErrorCode::LambdaOne, "lambda = 1 has no twisted function; use P_m");
}

// Coefficients of a piece after integrating from 0: int_0^t sum c_i s^i ds.
std::vector<CyclotomicNumber> antiderivative(const std::vector<CyclotomicNumber>& p) {
  std::vector<CyclotomicNumber> out(p.size() + 1, CyclotomicNumber(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] * Rational(1, static_cast<long>(i + 1));
  return out;
}

CyclotomicNumber integral_01(const std::vector<CyclotomicNumber>& p) {
  CyclotomicNumber s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * Rational(1, static_cast<long>(i + 1));
  return s;
}

CyclotomicNumber at_one(const std::vector<CyclotomicNumber>& p) {
  CyclotomicNumber s = 0;
  for (const auto& c : p) s += c;
  return s;
}

}  // namespace

CyclotomicNumber twisted_q_zero(unsigned m, const RationalAngle& lambda) {
  require_nontrivial(lambda);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "twisted functions start at m = 1");
  const CyclotomicNumber lam = CyclotomicNumber::root_of_unity(lambda);
  const CyclotomicNumber inv = (CyclotomicNumber(1) - lam).inverse();
  // lambda/(e^S - lambda) = sum a_j S^j with (1 - lambda) a_j + sum_{i=1}^j a_{j-i}/i! = [j = 0] lambda.
  std::vector<CyclotomicNumber> a(m);
  a[0] = lam * inv;
  for (unsigned j = 1; j < m; ++j) {
    CyclotomicNumber s = 0;
    for (unsigned i = 1; i <= j; ++i) s += a[j - i] * (1 / factorial(i));
    a[j] = -(s * inv);
  }
  return a[m - 1];
}

TwistedQ::TwistedQ(unsigned m, const RationalAngle& lambda) : m_(m), lambda_(lambda) {
  require_nontrivial(lambda);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "twisted functions start at m = 1");
  const unsigned long N = lambda.order();
  const CyclotomicNumber lam = CyclotomicNumber::root_of_unity(lambda);
  const CyclotomicNumber inv = (CyclotomicNumber(1) - lam).inverse();

  pieces_.resize(N);
  CyclotomicNumber power = lam;
  for (unsigned long j = 0; j < N; ++j) {
    pieces_[j] = {power * inv};
    power *= lam;
  }
  for (unsigned order = 2; order <= m; ++order) {
    std::vector<std::vector<CyclotomicNumber>> next(N);
    CyclotomicNumber offset = 0;  // value at the left end of piece j, before the mean shift
    CyclotomicNumber total = 0;
    for (unsigned long j = 0; j < N; ++j) {
      next[j] = antiderivative(pieces_[j]);
      next[j][0] = offset;
      total += integral_01(next[j]);
      offset = at_one(next[j]);
    }
    if (!offset.is_zero()) throw Error(ErrorCode::InternalError, "twisted antiderivative is not periodic");
    const CyclotomicNumber shift = -(total * Rational(1, static_cast<long>(N)));
    for (auto& piece : next) piece[0] += shift;
    pieces_ = std::move(next);
  }

  numeric_.resize(N);
  for (unsigned long j = 0; j < N; ++j)
    for (const auto& c : pieces_[j]) numeric_[j].push_back(c.to_complex());
}

CyclotomicNumber TwistedQ::value(const Rational& x) const {
  const long N = static_cast<long>(period());
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  const Rational t = x - Rational(fl);
  const long j = mod_floor(fl, Integer(N)).get_si();
  CyclotomicNumber v = 0;
  const auto& piece = pieces_[static_cast<std::size_t>(j)];
  for (std::size_t i = piece.size(); i-- > 0;) v = v * t + piece[i];
  return v;
}

std::complex<double> TwistedQ::value_on_piece(long piece, double t) const {
  const long N = static_cast<long>(period());
  long j = piece % N;
  if (j < 0) j += N;
  const auto& c = numeric_[static_cast<std::size_t>(j)];
  std::complex<double> v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

std::complex<double> TwistedQ::value(double x) const {
  const double fl = std::floor(x);
  return value_on_piece(static_cast<long>(fl), x - fl);
}

namespace {

template <typename Key, typename Value>
class Memo {
 public:
  template <typename Make>
  const Value& get(const Key& key, Make&& make) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return *it->second;
    }
    auto value = std::make_unique<Value>(make());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(value));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::unique_ptr<Value>> map_;
};

}  // namespace

const TwistedQ& twisted_Q(unsigned m, const RationalAngle& lambda) {
  static Memo<std::pair<unsigned, RationalAngle>, TwistedQ> memo;
  return memo.get({m, lambda}, [&] { return TwistedQ(m, lambda); });
}

const OperatorPoly& M_poly(unsigned k, const RationalAngle& lambda) {
  static Memo<std::pair<unsigned, RationalAngle>, OperatorPoly> memo;
  return memo.get({k, lambda}, [&] {
    OperatorPoly op;
    if (lambda.is_zero()) {
      op = L_truncated(k / 2);
      op.coeffs.resize(k + 1, CyclotomicNumber(0));
    } else {
      op.coeffs.assign(k + 1, CyclotomicNumber(0));
      if (k >= 1) op.coeffs[1] = CyclotomicNumber(Rational(1, 2)) + twisted_q_zero(1, lambda);
      for (unsigned m = 2; m <= k; ++m) op.coeffs[m] = twisted_q_zero(m, lambda);
    }
    op.lambda = lambda;
    op.k = k;
    return op;
  });
}

std::vector<std::complex<double>> fourier_q(const RationalAngle& lambda, double x, unsigned max_m, long R) {
  require_nontrivial(lambda);
  const double q = lambda.value().get_d();
  std::vector<std::complex<double>> sum(max_m + 1, 0.0);
  // Largest |r| first so that the small tail terms are accumulated before the dominant ones.
  for (long a = R; a >= 0; --a) {
    for (long r : {a, -a - 1}) {
      const double w = 2.0 * std::numbers::pi * (q + static_cast<double>(r));
      const std::complex<double> z = 1.0 / std::complex<double>(0.0, w);
      const std::complex<double> phase = std::polar(1.0, w * x);
      std::complex<double> zp = 1.0;
      for (unsigned m = 1; m <= max_m; ++m) {
        zp *= z;
        sum[m] -= phase * zp;
      }
    }
  }
  return sum;
}

}  // namespace latticeem
