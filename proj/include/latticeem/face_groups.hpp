#pragma once

#include <cstddef>
#include <vector>

#include "latticeem/cyclotomic.hpp"
#include "latticeem/int_matrix.hpp"
#include "latticeem/polytope.hpp"

namespace latticeem {

/// Gamma_F = (N_F cap Z^n*) / span_Z{u_i : i in I_F}, with N_F the span of the
/// normals meeting at F.  Elements are numbered by mixed-radix coordinates
/// 0 <= c_i < d_i over the nontrivial Smith invariants; element 0 is the identity.
class FaceGroup {
 public:
  FaceGroup(const SimplePolytope& p, std::size_t face);

  std::size_t face() const { return face_; }
  const std::vector<std::size_t>& facets() const { return facets_; }
  std::size_t order() const { return reps_.size(); }
  /// Smith invariants d_1 | d_2 | ... of the normals in the saturated basis.
  const std::vector<Integer>& invariants() const { return invariants_; }
  /// Z-basis of N_F cap Z^n*.
  const std::vector<IntVector>& saturation_basis() const { return basis_; }
  /// Integer covector representing element e.
  const IntVector& rep(std::size_t e) const { return reps_.at(e); }
  /// Element of the class of an integer covector lying in N_F.  Throws InvalidArgument otherwise.
  std::size_t element_of(const IntVector& covector) const;

 private:
  std::size_t face_;
  std::vector<std::size_t> facets_;
  std::vector<Integer> invariants_;
  std::vector<Integer> radices_;  // all Smith diagonal entries, ones included
  std::vector<IntVector> basis_;
  std::vector<IntVector> reps_;
  IntMatrix q_inv_;
};

/// Character angles q_{gamma,j}, j = 1..d, of element e of Gamma_F: write the
/// representative as sum b_i u_i over the normals at a vertex of F and reduce
/// b_j mod 1.  Checks that every vertex of F gives the same angles and that
/// facets off F get angle 0; throws ClaimViolated otherwise.
std::vector<RationalAngle> character_angles(const SimplePolytope& p, const FaceGroup& g, std::size_t element);

/// Groups, flat subsets and character angles for every face, with the
/// injectivity and partition properties checked at construction.
class GroupStructure {
 public:
  explicit GroupStructure(const SimplePolytope& p);

  const FaceGroup& group(std::size_t face) const { return groups_.at(face); }
  /// Elements of Gamma_F not in the image of any Gamma_E with E strictly containing F.
  const std::vector<std::size_t>& flat(std::size_t face) const { return flat_.at(face); }
  const std::vector<RationalAngle>& angles(std::size_t face, std::size_t element) const {
    return angles_.at(face).at(element);
  }
  /// Image of each element of Gamma_from inside Gamma_to (to must be a face of from).
  /// Throws NotInjective when two elements collide.
  std::vector<std::size_t> inclusion_map(std::size_t from, std::size_t to) const;

  std::size_t num_faces() const { return groups_.size(); }

 private:
  const SimplePolytope* p_;
  std::vector<FaceGroup> groups_;
  std::vector<std::vector<std::size_t>> flat_;
  std::vector<std::vector<std::vector<RationalAngle>>> angles_;
};

}  // namespace latticeem
