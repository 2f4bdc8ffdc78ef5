#include "latticeem/cone_formula.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

#include "latticeem/error.hpp"
#include "latticeem/twisted.hpp"
#include "latticeem/bernoulli.hpp"

namespace latticeem {

namespace {

using Complex = std::complex<double>;

// d^mu g at one point: mu_index into the stencil table, times a coefficient
// and the kernels of the coordinates in kernel_mask.
struct Term {
  std::size_t gamma = 0;
  std::size_t mu_index = 0;
  unsigned kernel_mask = 0;
  Complex coeff;
};

// Q_{k,lambda}(t), or P_k(t) for lambda = 1.
class Kernel {
 public:
  Kernel(const RationalAngle& lambda, unsigned k) : k_(k) {
    if (!lambda.is_zero()) q_ = &twisted_Q(k, lambda);
  }
  Complex operator()(double t) const {
    if (!q_) return periodic_P(k_, t);
    const double fl = std::floor(t);
    return q_->value_on_piece(static_cast<long>(fl), t - fl);
  }

 private:
  unsigned k_;
  const TwistedQ* q_ = nullptr;
};

class OrthantEngine {
 public:
  OrthantEngine(const PolarizedCone& cone, std::vector<std::vector<RationalAngle>> angles,
                std::vector<Complex> weights, const SmoothFunction& f, unsigned k)
      : cone_(cone), angles_(std::move(angles)), weights_(std::move(weights)), f_(f), k_(k), n_(cone.apex.size()) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (f.dim() != n_) throw Error(ErrorCode::InvalidArgument, "function and cone disagree on the dimension");
    for (const auto& a : angles_)
      if (a.size() != n_) throw Error(ErrorCode::InvalidArgument, "one angle per cone coordinate expected");
    domain_ = cone_domain(cone, f);
    for (const auto& v : cone.polarized_edges) {
      std::vector<double> e;
      for (const auto& c : v) e.push_back(to_double(c));
      edges_.push_back(std::move(e));
    }
    for (auto c : cone.apex) apex_.push_back(static_cast<double>(c));
    for (const auto& a : angles_) {
      std::vector<Kernel> row;
      std::vector<std::vector<Complex>> coeffs;
      for (const auto& lambda : a) {
        row.emplace_back(lambda, k);
        std::vector<Complex> c;
        for (const auto& m : M_poly(k, lambda).coeffs) c.push_back(m.to_complex());
        coeffs.push_back(std::move(c));
      }
      kernels_.push_back(std::move(row));
      coeffs_.push_back(std::move(coeffs));
    }
    build_terms();
  }

  ConeTerm evaluate(bool remainder, const QuadratureOptions& opts) {
    ConeTerm out;
    if (f_.is_zero() || domain_.empty) return out;
    for (const auto& [mask, terms] : (remainder ? rem_ : op_)) {
      if (terms.empty()) continue;
      auto part = integrate(mask, terms, opts);
      out.value += part.value;
      out.error += part.error;
      out.evaluations += part.evaluations;
      ++out.integrals;
    }
    return out;
  }

 private:
  std::size_t stencil_index(const Exponent& mu) {
    auto [it, inserted] = mu_index_.try_emplace(mu, stencils_.size());
    if (!inserted) return it->second;
    // prod_i (alpha#_i . grad)^{mu_i}, expanded into partial derivatives.
    Polynomial prod = Polynomial::constant(n_, 1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (mu[i] == 0) continue;
      Polynomial linear(n_);
      for (std::size_t l = 0; l < n_; ++l) {
        Exponent e(n_, 0);
        e[l] = 1;
        linear.add_term(e, cone_.polarized_edges[i][l]);
      }
      prod = prod * linear.pow(mu[i]);
    }
    std::vector<std::pair<Exponent, double>> st;
    for (const auto& [a, c] : prod.terms()) st.emplace_back(a, to_double(c));
    stencils_.push_back(std::move(st));
    unsigned order = 0;
    for (auto m : mu) order += m;
    max_order_ = std::max(max_order_, order);
    return it->second;
  }

  void build_terms() {
    const unsigned full = (1U << n_) - 1;
    for (std::size_t g = 0; g < angles_.size(); ++g) {
      for (unsigned I = 0; I <= full; ++I) {
        const bool remainder = I != full;
        const unsigned outside = static_cast<unsigned>(n_) - static_cast<unsigned>(__builtin_popcount(I));
        Complex base = weights_[g];
        if (remainder && (k_ - 1) % 2 == 1 && outside % 2 == 1) base = -base;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n_; ++i)
          if (I >> i & 1U) members.push_back(i);
        std::vector<unsigned> m(members.size(), 0);
        while (true) {
          Complex c = base;
          Exponent mu(n_, k_);
          unsigned plain = 0;
          for (std::size_t j = 0; j < members.size(); ++j) {
            const std::size_t i = members[j];
            c *= coeffs_[g][i][m[j]];
            if (m[j] % 2 == 1) c = -c;
            if (m[j] == 0) {
              mu[i] = 0;
              plain |= 1U << i;
            } else {
              mu[i] = m[j] - 1;
              c = -c;
            }
          }
          if (c != Complex(0)) {
            const unsigned mask = (full & ~I) | plain;
            Term t{g, stencil_index(mu), full & ~I, c};
            (remainder ? rem_ : op_)[mask].push_back(t);
          }
          std::size_t j = 0;
          while (j < m.size() && ++m[j] > k_) m[j++] = 0;
          if (j == m.size()) break;
        }
      }
    }
  }

  std::vector<double> point_of(std::span<const double> t) const {
    std::vector<double> x = apex_;
    fill_point(t, x);
    return x;
  }

  void fill_point(std::span<const double> t, std::vector<double>& x) const {
    x = apex_;
    for (std::size_t i = 0; i < n_; ++i)
      if (t[i] != 0)
        for (std::size_t l = 0; l < n_; ++l) x[l] += t[i] * edges_[i][l];
  }

  Complex integrand(std::span<const double> t, const std::vector<Term>& terms, std::vector<double>& dmu,
                    std::vector<char>& have) const {
    std::vector<double>& x = point_scratch_;
    fill_point(t, x);
    const Box& s = support_;
    for (std::size_t l = 0; l < n_; ++l)
      if (x[l] <= s.lo[l] || x[l] >= s.hi[l]) return 0;
    SmoothFunction::PointData& pd = scratch_;
    f_.prepare(x, max_order_, pd);
    std::fill(have.begin(), have.end(), 0);
    Complex total = 0;
    for (const auto& term : terms) {
      if (!have[term.mu_index]) {
        double v = 0;
        for (const auto& [a, c] : stencils_[term.mu_index]) v += c * f_.partial(pd, a);
        dmu[term.mu_index] = v;
        have[term.mu_index] = 1;
      }
      Complex v = term.coeff * dmu[term.mu_index];
      for (std::size_t i = 0; i < n_; ++i)
        if (term.kernel_mask >> i & 1U) v *= kernels_[term.gamma][i](t[i]);
      total += v;
    }
    return total;
  }

  QuadResult<Complex> integrate(unsigned mask, const std::vector<Term>& terms, const QuadratureOptions& opts) {
    support_ = f_.support();
    std::vector<double> dmu(stencils_.size());
    std::vector<char> have(stencils_.size());
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n_; ++i)
      if (mask >> i & 1U) dims.push_back(i);
    if (dims.empty()) {
      const std::vector<double> t(n_, 0.0);
      return QuadResult<Complex>{integrand(t, terms, dmu, have), 0, 1};
    }

    // Unit cells in the integrated coordinates whose image meets the support box.
    std::vector<Box> cells;
    std::vector<long> c(dims.size(), 0);
    for (auto i : dims)
      if (domain_.upper[i] <= 0) return {};
    while (true) {
      Box cell;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        cell.lo.push_back(static_cast<double>(c[j]));
        cell.hi.push_back(static_cast<double>(c[j] + 1));
      }
      if (cell_meets_support(dims, cell)) cells.push_back(std::move(cell));
      std::size_t j = 0;
      while (j < dims.size() && ++c[j] >= domain_.upper[dims[j]]) c[j++] = 0;
      if (j == dims.size()) break;
    }
    std::vector<double> t(n_, 0.0);
    auto fn = [&](const std::vector<double>& y) {
      for (std::size_t j = 0; j < dims.size(); ++j) t[dims[j]] = y[j];
      return integrand(t, terms, dmu, have);
    };
    return integrate_boxes<Complex>(fn, cells, opts.tol, opts.max_evaluations);
  }

  bool cell_meets_support(const std::vector<std::size_t>& dims, const Box& cell) const {
    std::vector<double> lo(n_, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n_, -std::numeric_limits<double>::infinity());
    std::vector<double> t(n_, 0.0);
    for (unsigned corner = 0; corner < (1U << dims.size()); ++corner) {
      for (std::size_t j = 0; j < dims.size(); ++j) t[dims[j]] = corner >> j & 1U ? cell.hi[j] : cell.lo[j];
      const auto x = point_of(t);
      for (std::size_t l = 0; l < n_; ++l) {
        lo[l] = std::min(lo[l], x[l]);
        hi[l] = std::max(hi[l], x[l]);
      }
    }
    for (std::size_t l = 0; l < n_; ++l)
      if (hi[l] <= support_.lo[l] || lo[l] >= support_.hi[l]) return false;
    return true;
  }

  const PolarizedCone& cone_;
  std::vector<std::vector<RationalAngle>> angles_;
  std::vector<Complex> weights_;
  const SmoothFunction& f_;
  unsigned k_;
  std::size_t n_;
  ConeQuadratureDomain domain_;
  Box support_;
  std::vector<std::vector<double>> edges_;
  std::vector<double> apex_;
  std::vector<std::vector<Kernel>> kernels_;
  std::vector<std::vector<std::vector<Complex>>> coeffs_;
  std::map<Exponent, std::size_t> mu_index_;
  std::vector<std::vector<std::pair<Exponent, double>>> stencils_;
  unsigned max_order_ = 0;
  mutable SmoothFunction::PointData scratch_;
  mutable std::vector<double> point_scratch_;
  std::map<unsigned, std::vector<Term>> op_, rem_;
};

}  // namespace

ConeQuadratureDomain cone_domain(const PolarizedCone& cone, const SmoothFunction& f) {
  const std::size_t n = cone.apex.size();
  ConeQuadratureDomain d;
  d.upper.assign(n, 0);
  IntMatrix U = IntMatrix::from_rows(cone.polarized_normals);
  d.jacobian = Integer(abs(U.determinant())).get_ui();
  if (f.is_zero()) {
    d.empty = true;
    return d;
  }
  const Box s = f.support();
  for (std::size_t i = 0; i < n; ++i) {
    double top = -std::numeric_limits<double>::infinity();
    for (unsigned corner = 0; corner < (1U << n); ++corner) {
      double t = 0;
      for (std::size_t l = 0; l < n; ++l) {
        const double x = corner >> l & 1U ? s.hi[l] : s.lo[l];
        t += static_cast<double>(cone.polarized_normals[i][l]) * (x - static_cast<double>(cone.apex[l]));
      }
      top = std::max(top, t);
    }
    if (top <= 0) d.empty = true;
    d.upper[i] = top <= 0 ? 0 : static_cast<long>(std::ceil(top));
  }
  return d;
}

std::vector<RationalAngle> polarized_angles(const PolarizedCone& cone, const GroupStructure& groups,
                                            const SimplePolytope& p, std::size_t element) {
  const auto& angles = groups.angles(p.vertex_face(cone.vertex), element);
  std::vector<RationalAngle> out;
  for (std::size_t i = 0; i < cone.facets.size(); ++i) out.push_back(angles[cone.facets[i]] * cone.flips[i]);
  return out;
}

double cone_weighted_sum(const PolarizedCone& cone, const SmoothFunction& f) {
  const std::size_t n = cone.apex.size();
  if (f.is_zero()) return 0;
  const Box s = f.support();
  IntVector lo(n), hi(n);
  long double box = 1;
  for (std::size_t l = 0; l < n; ++l) {
    lo[l] = static_cast<std::int64_t>(std::ceil(s.lo[l]));
    hi[l] = static_cast<std::int64_t>(std::floor(s.hi[l]));
    if (hi[l] < lo[l]) return 0;
    box *= static_cast<long double>(hi[l] - lo[l] + 1);
  }
  if (box > static_cast<long double>(max_lattice_points()))
    throw Error(ErrorCode::TooLarge, "support box holds " + std::to_string(static_cast<double>(box)) + " points");
  double total = 0;
  IntVector x = lo;
  std::vector<double> xd(n);
  while (true) {
    int zeros = 0;
    bool inside = true;
    for (const auto& u : cone.polarized_normals) {
      std::int64_t t = 0;
      for (std::size_t l = 0; l < n; ++l) t += u[l] * (x[l] - cone.apex[l]);
      if (t < 0) inside = false;
      if (t == 0) ++zeros;
    }
    if (inside) {
      for (std::size_t l = 0; l < n; ++l) xd[l] = static_cast<double>(x[l]);
      total += std::ldexp(f.value(xd), -zeros);
    }
    std::size_t l = 0;
    while (l < n && x[l] == hi[l]) x[l] = lo[l], ++l;
    if (l == n) break;
    ++x[l];
  }
  return total;
}

std::complex<double> twisted_orthant_sum(const PolarizedCone& cone, const std::vector<RationalAngle>& angles,
                                         const SmoothFunction& f) {
  const std::size_t n = cone.apex.size();
  const auto d = cone_domain(cone, f);
  if (d.empty) return 0;
  long double box = 1;
  for (auto u : d.upper) box *= static_cast<long double>(u + 1);
  if (box > static_cast<long double>(max_lattice_points()))
    throw Error(ErrorCode::TooLarge, "cone box holds " + std::to_string(static_cast<double>(box)) + " points");
  std::complex<double> total = 0;
  std::vector<long> t(n, 0);
  std::vector<double> x(n);
  while (true) {
    int zeros = 0;
    RationalAngle phase;
    for (std::size_t l = 0; l < n; ++l) x[l] = static_cast<double>(cone.apex[l]);
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i] == 0) ++zeros;
      phase = phase + angles[i] * t[i];
      for (std::size_t l = 0; l < n; ++l) x[l] += static_cast<double>(t[i]) * to_double(cone.polarized_edges[i][l]);
    }
    const double v = f.value(x);
    if (v != 0) total += std::ldexp(v, -zeros) * phase.to_complex();
    std::size_t i = 0;
    while (i < n && t[i] == d.upper[i]) t[i++] = 0;
    if (i == n) break;
    ++t[i];
  }
  return total;
}

ConeTerm cone_operator_part(const PolarizedCone& cone, const std::vector<RationalAngle>& angles,
                            const SmoothFunction& f, unsigned k, const QuadratureOptions& opts) {
  return OrthantEngine(cone, {angles}, {1.0}, f, k).evaluate(false, opts);
}

ConeTerm cone_remainder(const PolarizedCone& cone, const std::vector<RationalAngle>& angles, const SmoothFunction& f,
                        unsigned k, const QuadratureOptions& opts) {
  return OrthantEngine(cone, {angles}, {1.0}, f, k).evaluate(true, opts);
}

PolytopeTerms polytope_terms(const SimplePolytope& p, const IntVector& xi, const SmoothFunction& f, unsigned k,
                             const QuadratureOptions& opts) {
  if (f.dim() != p.dim()) throw Error(ErrorCode::InvalidArgument, "function and polytope disagree on the dimension");
  PolytopeTerms out;
  if (f.is_zero()) return out;
  const GroupStructure groups(p);
  Complex main = 0, rem = 0;
  for (const auto& cone : polarize(p, xi)) {
    const auto& g = groups.group(p.vertex_face(cone.vertex));
    std::vector<std::vector<RationalAngle>> angles;
    for (std::size_t e = 0; e < g.order(); ++e) angles.push_back(polarized_angles(cone, groups, p, e));
    const double w = cone.sign() / static_cast<double>(g.order());
    OrthantEngine engine(cone, std::move(angles), std::vector<Complex>(g.order(), w), f, k);
    const auto op = engine.evaluate(false, opts);
    const auto r = engine.evaluate(true, opts);
    main += op.value;
    rem += r.value;
    out.quad_error += op.error + r.error;
  }
  out.main = main.real();
  out.remainder = rem.real();
  out.imaginary = std::max(std::abs(main.imag()), std::abs(rem.imag()));
  return out;
}

double polytope_remainder(const SimplePolytope& p, const IntVector& xi, const SmoothFunction& f, unsigned k,
                          const QuadratureOptions& opts) {
  return polytope_terms(p, xi, f, k, opts).remainder;
}

}  // namespace latticeem
