#include "latticeem/face_groups.hpp"

#include <algorithm>

#include "latticeem/error.hpp"

namespace latticeem {

namespace {

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string covector_string(const IntVector& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ", ") + std::to_string(x);
  return "(" + s + ")";
}

}  // namespace

FaceGroup::FaceGroup(const SimplePolytope& p, std::size_t face) : face_(face), facets_(p.faces().at(face).facets) {
  const std::size_t n = p.dim();
  const std::size_t c = facets_.size();
  if (c == 0) {
    reps_.push_back(IntVector(n, 0));
    q_inv_ = IntMatrix::identity(n);
    return;
  }
  std::vector<IntVector> rows;
  for (auto i : facets_) rows.push_back(p.h().normals[i]);
  const SmithForm snf = smith_normal_form(IntMatrix::from_rows(rows));
  q_inv_ = snf.Q_inv;

  auto& radices = radices_;
  for (std::size_t i = 0; i < c; ++i) {
    const Integer d = snf.D(i, i);
    if (d == 0) throw Error(ErrorCode::Singular, "normals at face " + std::to_string(face) + " are dependent");
    radices.push_back(d);
    if (d > 1) invariants_.push_back(d);
    IntVector b;
    for (std::size_t j = 0; j < n; ++j) b.push_back(snf.Q(i, j).get_si());
    basis_.push_back(std::move(b));
  }

  Integer order = 1;
  for (const auto& d : radices) order *= d;
  if (order > Integer(static_cast<long>(max_cyclotomic_order())))
    throw Error(ErrorCode::OrderTooLarge, "face group of order " + order.get_str() + " exceeds the cyclotomic cap");
  std::vector<long> digits(c, 0);
  while (true) {
    IntVector rep(n, 0);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < n; ++j) rep[j] += digits[i] * basis_[i][j];
    reps_.push_back(std::move(rep));
    std::size_t i = 0;
    while (i < c && ++digits[i] == radices[i].get_si()) digits[i++] = 0;
    if (i == c) break;
  }
}

std::size_t FaceGroup::element_of(const IntVector& covector) const {
  const std::size_t n = covector.size();
  const std::size_t c = facets_.size();
  std::vector<Integer> w(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w[j] += Integer(static_cast<long>(covector[i])) * q_inv_(i, j);
  for (std::size_t j = c; j < n; ++j)
    if (w[j] != 0) throw Error(ErrorCode::InvalidArgument, covector_string(covector) + " is not normal to the face");
  std::size_t index = 0, stride = 1;
  for (std::size_t i = 0; i < c; ++i) {
    const Integer& d = radices_[i];
    const Integer digit = mod_floor(w[i], d);
    index += digit.get_ui() * stride;
    stride *= d.get_ui();
  }
  return index;
}

std::vector<RationalAngle> character_angles(const SimplePolytope& p, const FaceGroup& g, std::size_t element) {
  const Face& f = p.faces().at(g.face());
  const IntVector& rep = g.rep(element);
  std::vector<RationalAngle> angles;
  bool first = true;
  for (auto v : f.vertices) {
    const auto& tight = p.vertices()[v].tight;
    const auto& alpha = p.edge_vectors(v);
    std::vector<RationalAngle> here(p.num_facets());
    for (std::size_t i = 0; i < tight.size(); ++i) {
      const Rational b = dot(rep, alpha[i]);
      const bool on_face = std::binary_search(g.facets().begin(), g.facets().end(), tight[i]);
      if (on_face) {
        here[tight[i]] = RationalAngle(b);
      } else if (b.get_den() != 1) {
        throw Error(ErrorCode::ClaimViolated, "character of " + covector_string(rep) + " is nontrivial on facet " +
                                                  std::to_string(tight[i]) + " off the face");
      }
    }
    if (first) {
      angles = std::move(here);
      first = false;
    } else if (here != angles) {
      throw Error(ErrorCode::ClaimViolated,
                  "character of " + covector_string(rep) + " depends on the vertex " + std::to_string(v));
    }
  }
  return angles;
}

GroupStructure::GroupStructure(const SimplePolytope& p) : p_(&p) {
  const auto& faces = p.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    groups_.emplace_back(p, f);
    std::vector<std::vector<RationalAngle>> rows;
    for (std::size_t e = 0; e < groups_.back().order(); ++e) rows.push_back(character_angles(p, groups_.back(), e));
    angles_.push_back(std::move(rows));
  }

  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::vector<bool> covered(groups_[f].order(), false);
    for (std::size_t e = 0; e < faces.size(); ++e) {
      if (e == f || !is_subset(faces[e].facets, faces[f].facets)) continue;
      for (auto image : inclusion_map(e, f)) covered[image] = true;
    }
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < covered.size(); ++x)
      if (!covered[x]) members.push_back(x);
    for (auto x : members)
      for (auto j : faces[f].facets)
        if (angles_[f][x][j].is_zero())
          throw Error(ErrorCode::ClaimViolated, "flat element " + std::to_string(x) + " of face " + std::to_string(f) +
                                                    " has trivial character on facet " + std::to_string(j));
    flat_.push_back(std::move(members));
  }

  for (const auto& v : p.vertices()) {
    const std::size_t fv = p.vertex_face(v.id);
    std::vector<int> hits(groups_[fv].order(), 0);
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!is_subset(faces[f].facets, v.tight)) continue;
      const auto map = inclusion_map(f, fv);
      for (auto x : flat_[f]) ++hits[map[x]];
    }
    for (std::size_t x = 0; x < hits.size(); ++x)
      if (hits[x] != 1)
        throw Error(ErrorCode::PartitionViolated, "element " + std::to_string(x) + " of the group at vertex " +
                                                      std::to_string(v.id) + " is covered " + std::to_string(hits[x]) +
                                                      " times by flat subsets");
  }
}

std::vector<std::size_t> GroupStructure::inclusion_map(std::size_t from, std::size_t to) const {
  const auto& faces = p_->faces();
  if (!is_subset(faces.at(from).facets, faces.at(to).facets))
    throw Error(ErrorCode::InvalidArgument, "face " + std::to_string(to) + " is not contained in face " + std::to_string(from));
  const FaceGroup& src = groups_[from];
  const FaceGroup& dst = groups_[to];
  std::vector<std::size_t> images;
  std::vector<bool> seen(dst.order(), false);
  for (std::size_t e = 0; e < src.order(); ++e) {
    const std::size_t x = dst.element_of(src.rep(e));
    if (seen[x])
      throw Error(ErrorCode::NotInjective, "two elements of the group of face " + std::to_string(from) +
                                               " map to element " + std::to_string(x) + " of face " + std::to_string(to));
    seen[x] = true;
    images.push_back(x);
  }
  return images;
}

}  // namespace latticeem
