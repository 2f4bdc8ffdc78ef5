#pragma once

#include <map>
#include <optional>
#include <vector>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/dilation.hpp"
#include "latticeem/face_groups.hpp"
#include "latticeem/polynomial.hpp"
#include "latticeem/polytope.hpp"

namespace latticeem {

/// prod_j M^{k, lambda_j}(d/dh_j) expanded into monomials of the h-derivatives.
struct AssembledOperator {
  std::vector<RationalAngle> angles;
  unsigned k = 0;
  std::map<Exponent, CyclotomicNumber> terms;
};

/// Expands the product; terms of total order above max_order are dropped.
AssembledOperator assemble_operator(const std::vector<RationalAngle>& angles, unsigned k,
                                    std::optional<unsigned> max_order = std::nullopt);

/// sum_a coeff(a) (prod_j a_j!) [h^a] I, i.e. the operator applied to I at h = 0.
CyclotomicNumber apply_operator(const AssembledOperator& op, const Polynomial& I);

/// Same value as apply_operator(assemble_operator(angles, k), I) without expanding the product.
CyclotomicNumber apply_operator(const std::vector<RationalAngle>& angles, unsigned k, const Polynomial& I);

struct FaceContribution {
  std::size_t face = 0;
  std::size_t flat_size = 0;
  Rational value;
};

/// Exact weighted lattice sums of polynomials over one polytope.  Groups and
/// dilation moments are computed once and shared between calls.
class ExactEvaluator {
 public:
  explicit ExactEvaluator(const SimplePolytope& p);

  const SimplePolytope& polytope() const { return *p_; }
  const GroupStructure& groups() const { return groups_; }
  const DilationIntegrator& integrator() const { return integrator_; }

  static unsigned default_k(const SimplePolytope& p, const Polynomial& f);

  /// sum over faces F and gamma in the flat subset of F of M^k_{gamma,F} I(h) at h = 0.
  Rational weighted_sum(const Polynomial& f, std::optional<unsigned> k = std::nullopt) const;
  /// Per-face terms of weighted_sum; each is rational on its own.
  std::vector<FaceContribution> face_contributions(const Polynomial& f, std::optional<unsigned> k = std::nullopt) const;

  /// prod_i L^{2K}(d/dh_i) I(h) at h = 0; only for regular polytopes (throws NotRegular).
  Rational weighted_sum_regular(const Polynomial& f) const;

 private:
  const SimplePolytope* p_;
  GroupStructure groups_;
  DilationIntegrator integrator_;
};

Rational weighted_sum_polynomial(const SimplePolytope& p, const Polynomial& f, std::optional<unsigned> k = std::nullopt);
Rational weighted_sum_regular(const SimplePolytope& p, const Polynomial& f);

}  // namespace latticeem
