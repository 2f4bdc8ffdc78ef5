#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeem/error.hpp"

namespace latticeem {

/// Everything one CLI invocation needs.  Also accepted as a JSON object via
/// --job; unknown fields are rejected.
struct JobSpec {
  std::string command;                   // validate | sum | count | verify | tables | decompose
  std::optional<nlohmann::json> polytope;  // "[a,b]", inline JSON text, a file path, or an object
  std::optional<std::string> poly;
  std::optional<nlohmann::json> function;  // smooth function descriptor
  std::optional<std::string> mode;         // verify: poly | smooth
  std::optional<std::string> kind;         // tables: bernoulli | qvalues | groups
  std::optional<unsigned> k;
  std::vector<std::uint64_t> seeds;
  std::optional<double> tol;
  std::optional<double> max_defect;
  std::optional<unsigned> count;
  std::optional<unsigned> degree;
  std::optional<unsigned> max;
  std::optional<unsigned> order;
  bool oracle = false;
  std::string format = "table";

  nlohmann::json to_json() const;
  static JobSpec from_json(const nlohmann::json& j);
  bool operator==(const JobSpec&) const = default;
};

/// 0 success, 2 domain error, 3 parse error, 4 numeric or verification failure.
int exit_code(ErrorCode code);

/// Runs one job, writing results to out and diagnostics to err.
int execute(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs the job.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latticeem
