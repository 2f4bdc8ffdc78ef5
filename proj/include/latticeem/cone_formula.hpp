#pragma once

// Euler-Maclaurin with remainder for smooth compactly supported functions,
// evaluated cone by cone.  At a polarized cone with apex v write
// t_i = <u#_i, x - v> and g(t) = f(v + sum t_i alpha#_i).  Lattice points of
// the cone correspond to the t in Z^n_{>=0} whose image is integral, and the
// character sum over Gamma_v detects integrality, so
//
//   sum'_{x in C cap Z^n} f(x) = (1/|Gamma_v|) sum_gamma sum'_{t >= 0} prod_i lambda_i^{t_i} g(t).
//
// Each twisted orthant sum splits exactly into an operator part and a
// remainder by applying the one-dimensional twisted formula in every
// coordinate.  All integrals are taken in t, which is |Gamma_v| times the
// corresponding integral in x.

#include <complex>
#include <cstdint>
#include <vector>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/face_groups.hpp"
#include "latticeem/polytope.hpp"
#include "latticeem/smooth_function.hpp"

namespace latticeem {

struct QuadratureOptions {
  double tol = 1e-8;  // absolute, per integral
  std::size_t max_evaluations = 50'000'000;
};

struct ConeTerm {
  std::complex<double> value;
  double error = 0;
  std::size_t integrals = 0;
  std::size_t evaluations = 0;
};

/// Integer box [0, T_1] x ... x [0, T_n] in cone coordinates covering the
/// part of supp f inside the cone.  jacobian = |det(polarized normals)| = |Gamma_v|.
struct ConeQuadratureDomain {
  std::vector<long> upper;
  std::uint64_t jacobian = 1;
  bool empty = false;
};
ConeQuadratureDomain cone_domain(const PolarizedCone& cone, const SmoothFunction& f);

/// lambda#_i of element e of Gamma_v in the polarized coordinates of the cone.
std::vector<RationalAngle> polarized_angles(const PolarizedCone& cone, const GroupStructure& groups,
                                            const SimplePolytope& p, std::size_t element);

/// sum over Z^n cap C of 2^{-codim} f(x).  Throws TooLarge if the support box is too big.
double cone_weighted_sum(const PolarizedCone& cone, const SmoothFunction& f);

/// sum'_{t in Z^n_{>=0}} prod_i lambda_i^{t_i} g(t), with weight 1/2 per zero coordinate.
std::complex<double> twisted_orthant_sum(const PolarizedCone& cone, const std::vector<RationalAngle>& angles,
                                         const SmoothFunction& f);

/// sum_m prod_i c_{i,m_i} (-1)^{|m|} int_{t >= 0} d^m g dt, c_i the coefficients of
/// M^{k,lambda_i}.  Integrals of pure derivatives along a coordinate are taken
/// exactly: int_0^oo d^m g dt_i = -d^{m-1} g at t_i = 0.
ConeTerm cone_operator_part(const PolarizedCone& cone, const std::vector<RationalAngle>& angles,
                            const SmoothFunction& f, unsigned k, const QuadratureOptions& opts = {});

/// sum over proper subsets I of (-1)^{(k-1)(n-|I|)} int_{t >= 0} prod_{i in I} M^{k,lambda_i}(-d_i)
/// prod_{i not in I} Q_{k,lambda_i}(t_i) d_i^k g dt.
ConeTerm cone_remainder(const PolarizedCone& cone, const std::vector<RationalAngle>& angles, const SmoothFunction& f,
                        unsigned k, const QuadratureOptions& opts = {});

struct PolytopeTerms {
  double main = 0;
  double remainder = 0;
  double quad_error = 0;
  /// Largest imaginary part discarded; nonzero only through rounding.
  double imaginary = 0;
};

/// Operator part and remainder summed over the polarized cones of p with
/// signs (-1)^{#v}, each cone averaged over Gamma_v.
PolytopeTerms polytope_terms(const SimplePolytope& p, const IntVector& xi, const SmoothFunction& f, unsigned k,
                             const QuadratureOptions& opts = {});

double polytope_remainder(const SimplePolytope& p, const IntVector& xi, const SmoothFunction& f, unsigned k,
                          const QuadratureOptions& opts = {});

}  // namespace latticeem
