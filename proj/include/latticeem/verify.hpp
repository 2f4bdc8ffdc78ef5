#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "latticeem/cone_formula.hpp"
#include "latticeem/polytope.hpp"
#include "latticeem/smooth_function.hpp"

namespace latticeem {

struct MainTheoremReport {
  double lhs = 0;
  double main_term = 0;
  double remainder = 0;
  double defect = 0;
  double quad_error_estimate = 0;
  std::uint64_t seed = 0;
  unsigned k = 0;

  nlohmann::json to_json() const;
  static MainTheoremReport from_json(const nlohmann::json& j);
  bool operator==(const MainTheoremReport&) const = default;
};

inline constexpr std::size_t kMaxHarnessDim = 3;
inline constexpr unsigned kMaxHarnessK = 8;

/// For each seed: pick a polarizing vector, compute the operator part and
/// remainder cone by cone, and compare with the weighted lattice sum of f
/// over p found by enumeration.  Throws TooLarge above kMaxHarnessDim or kMaxHarnessK.
std::vector<MainTheoremReport> verify_main_theorem(const SimplePolytope& p, const SmoothFunction& f, unsigned k,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   const QuadratureOptions& opts = {});

}  // namespace latticeem
