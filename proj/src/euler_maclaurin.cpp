#include "latticeem/euler_maclaurin.hpp"

#include <numeric>

#include "latticeem/bernoulli.hpp"
#include "latticeem/error.hpp"
#include "latticeem/twisted.hpp"

namespace latticeem {

AssembledOperator assemble_operator(const std::vector<RationalAngle>& angles, unsigned k,
                                    std::optional<unsigned> max_order) {
  AssembledOperator op;
  op.angles = angles;
  op.k = k;
  op.terms.emplace(Exponent(angles.size(), 0), CyclotomicNumber(1));
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const OperatorPoly& M = M_poly(k, angles[j]);
    std::map<Exponent, CyclotomicNumber> next;
    for (const auto& [e, c] : op.terms) {
      const unsigned order = std::accumulate(e.begin(), e.end(), 0U);
      for (unsigned m = 0; m <= k; ++m) {
        if (M.coeffs[m].is_zero()) continue;
        if (max_order && order + m > *max_order) break;
        Exponent e2 = e;
        e2[j] = m;
        next.emplace(std::move(e2), c * M.coeffs[m]);
      }
    }
    op.terms = std::move(next);
  }
  return op;
}

CyclotomicNumber apply_operator(const AssembledOperator& op, const Polynomial& I) {
  CyclotomicNumber sum = 0;
  for (const auto& [a, c] : op.terms) {
    Rational coeff = I.coefficient(a);
    if (coeff == 0) continue;
    for (auto aj : a) coeff *= factorial(aj);
    sum += c * coeff;
  }
  return sum;
}

CyclotomicNumber apply_operator(const std::vector<RationalAngle>& angles, unsigned k, const Polynomial& I) {
  if (angles.size() != I.num_vars()) throw Error(ErrorCode::InvalidArgument, "operator and polynomial disagree on d");
  unsigned long order = 1;
  for (const auto& a : angles) order = std::lcm(order, a.order());
  // Coefficient tables, lifted once to the common cyclotomic order.
  std::vector<const OperatorPoly*> ops;
  std::vector<std::vector<CyclotomicNumber>> lifted(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) {
    ops.push_back(&M_poly(k, angles[j]));
    if (!angles[j].is_zero())
      for (const auto& c : ops[j]->coeffs) lifted[j].push_back(c.lifted(order));
  }
  CyclotomicNumber sum = CyclotomicNumber(0).lifted(order);
  for (const auto& [b, c] : I.terms()) {
    Rational scalar = c;
    CyclotomicNumber twisted = 1;
    bool zero = false;
    for (std::size_t j = 0; j < b.size() && !zero; ++j) {
      if (b[j] > k) {
        zero = true;
        break;
      }
      scalar *= factorial(b[j]);
      if (angles[j].is_zero()) {
        const Rational r = ops[j]->coeffs[b[j]].rational_part();
        if (r == 0) zero = true;
        scalar *= r;
      } else {
        if (lifted[j][b[j]].is_zero()) zero = true;
        twisted *= lifted[j][b[j]];
      }
    }
    if (zero) continue;
    sum += twisted * scalar;
  }
  return sum;
}

ExactEvaluator::ExactEvaluator(const SimplePolytope& p) : p_(&p), groups_(p), integrator_(p) {}

unsigned ExactEvaluator::default_k(const SimplePolytope& p, const Polynomial& f) {
  return static_cast<unsigned>(std::max(f.total_degree(), 0)) + static_cast<unsigned>(p.dim()) + 1;
}

std::vector<FaceContribution> ExactEvaluator::face_contributions(const Polynomial& f, std::optional<unsigned> k) const {
  const unsigned order = k.value_or(default_k(*p_, f));
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const Polynomial I = integrator_.integral(f);
  std::vector<FaceContribution> out;
  for (std::size_t face = 0; face < p_->faces().size(); ++face) {
    const auto& flat = groups_.flat(face);
    if (flat.empty()) continue;
    CyclotomicNumber sum = 0;
    for (auto x : flat) sum += apply_operator(groups_.angles(face, x), order, I);
    // The flat subset is stable under the Galois action, so this sum is rational.
    out.push_back(FaceContribution{face, flat.size(), sum.rational_part()});
  }
  return out;
}

Rational ExactEvaluator::weighted_sum(const Polynomial& f, std::optional<unsigned> k) const {
  Rational total = 0;
  for (const auto& c : face_contributions(f, k)) total += c.value;
  return total;
}

Rational ExactEvaluator::weighted_sum_regular(const Polynomial& f) const {
  for (const auto& v : p_->vertices())
    if (groups_.group(p_->vertex_face(v.id)).order() != 1)
      throw Error(ErrorCode::NotRegular, "vertex " + std::to_string(v.id) + " has a nontrivial group");
  // L^{2K}(d/dh) h^b at h = 0 is b! * b_b / b! = b_b for even b, and 0 for odd b.
  const Polynomial I = integrator_.integral(f);
  Rational total = 0;
  for (const auto& [b, c] : I.terms()) {
    Rational term = c;
    for (auto bj : b) {
      if (bj % 2 == 1) {
        term = 0;
        break;
      }
      term *= bernoulli_number(bj);
    }
    total += term;
  }
  return total;
}

Rational weighted_sum_polynomial(const SimplePolytope& p, const Polynomial& f, std::optional<unsigned> k) {
  return ExactEvaluator(p).weighted_sum(f, k);
}

Rational weighted_sum_regular(const SimplePolytope& p, const Polynomial& f) {
  return ExactEvaluator(p).weighted_sum_regular(f);
}

}  // namespace latticeem
