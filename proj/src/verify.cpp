#include "latticeem/verify.hpp"

#include <cmath>

#include "latticeem/error.hpp"

namespace latticeem {

nlohmann::json MainTheoremReport::to_json() const {
  return {{"lhs", lhs},
          {"main_term", main_term},
          {"remainder", remainder},
          {"defect", defect},
          {"quad_error_estimate", quad_error_estimate},
          {"seed", seed},
          {"k", k}};
}

MainTheoremReport MainTheoremReport::from_json(const nlohmann::json& j) {
  MainTheoremReport r;
  try {
    r.lhs = j.at("lhs").get<double>();
    r.main_term = j.at("main_term").get<double>();
    r.remainder = j.at("remainder").get<double>();
    r.defect = j.at("defect").get<double>();
    r.quad_error_estimate = j.at("quad_error_estimate").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.k = j.at("k").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
  return r;
}

std::vector<MainTheoremReport> verify_main_theorem(const SimplePolytope& p, const SmoothFunction& f, unsigned k,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   const QuadratureOptions& opts) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (f.dim() != p.dim()) throw Error(ErrorCode::InvalidArgument, "function and polytope disagree on the dimension");
  if (p.dim() > kMaxHarnessDim || k > kMaxHarnessK)
    throw Error(ErrorCode::TooLarge, "the smooth harness supports n <= " + std::to_string(kMaxHarnessDim) +
                                         " and k <= " + std::to_string(kMaxHarnessK));
  const double lhs = weighted_sum_bruteforce(p, [&f](std::span<const double> x) { return f.value(x); });
  std::vector<MainTheoremReport> out;
  for (auto seed : seeds) {
    const IntVector xi = choose_polarizing_vector(p, seed);
    const PolytopeTerms terms = polytope_terms(p, xi, f, k, opts);
    MainTheoremReport r;
    r.lhs = lhs;
    r.main_term = terms.main;
    r.remainder = terms.remainder;
    r.defect = std::abs(lhs - terms.main - terms.remainder);
    r.quad_error_estimate = terms.quad_error;
    r.seed = seed;
    r.k = k;
    out.push_back(r);
  }
  return out;
}

}  // namespace latticeem
