#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "latticeem/polynomial.hpp"
#include "latticeem/polytope.hpp"

namespace latticeem {

/// Exact integrals over the dilated polytope Delta(h), where facet i is moved
/// outward by h_i.  For small h the combinatorics do not change and every
/// vertex moves affinely, v(h) = v - sum_{i in I_v} h_i alpha_{i,v}, so
/// h -> int_{Delta(h)} x^a dx is a polynomial.
class DilationIntegrator {
 public:
  explicit DilationIntegrator(const SimplePolytope& p);

  /// I(h) = int_{Delta(h)} p(x) dx as a polynomial in h_1..h_d.
  Polynomial integral(const Polynomial& p) const;

  /// int_{Delta(h)} x^a dx for every exponent with |a| <= degree.
  std::map<Exponent, Polynomial> moments(unsigned degree) const;

 private:
  void ensure(unsigned degree) const;

  const SimplePolytope* p_;
  std::vector<Simplex> simplices_;
  mutable std::mutex mutex_;
  mutable unsigned computed_degree_ = 0;
  mutable bool computed_ = false;
  mutable std::map<Exponent, Polynomial> moments_;
};

Polynomial dilation_integral(const SimplePolytope& p, const Polynomial& f);

/// Position of a vertex of Delta(h) for a given dilation vector.
RationalVector dilated_vertex(const SimplePolytope& p, std::size_t vertex, std::span<const Rational> h);

}  // namespace latticeem
