#include "latticeem/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "latticeem/bernoulli.hpp"
#include "latticeem/euler_maclaurin.hpp"
#include "latticeem/face_groups.hpp"
#include "latticeem/io.hpp"
#include "latticeem/polytope.hpp"
#include "latticeem/twisted.hpp"
#include "latticeem/verify.hpp"

namespace latticeem {

using nlohmann::json;

namespace {

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void take(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string rationals(const RationalVector& v) {
  std::vector<std::string> parts;
  for (const auto& q : v) parts.push_back(to_string(q));
  return "(" + join(parts, ", ") + ")";
}

template <typename Int>
std::string integers(const std::vector<Int>& v) {
  std::vector<std::string> parts;
  for (auto x : v) parts.push_back(std::to_string(x));
  return "(" + join(parts, ", ") + ")";
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

PolytopeInput require_polytope(const JobSpec& job) {
  if (!job.polytope) throw Error(ErrorCode::InvalidArgument, job.command + " needs --polytope");
  return load_polytope(*job.polytope);
}

SimplePolytope require_simple(const JobSpec& job) {
  PolytopeInput in = require_polytope(job);
  SimplePolytope p(in.h);
  if (in.vertices) cross_validate_vertices(p, *in.vertices);
  return p;
}

std::vector<std::uint64_t> seeds_or(const JobSpec& job, std::vector<std::uint64_t> fallback) {
  return job.seeds.empty() ? fallback : job.seeds;
}

int cmd_validate(const JobSpec& job, std::ostream& out) {
  const PolytopeInput in = require_polytope(job);
  const ValidationReport r = validate(in.h);
  if (r.valid && in.vertices) {
    cross_validate_vertices(SimplePolytope(in.h), *in.vertices);
  }
  if (job.format == "json") {
    json j{{"valid", r.valid}};
    if (r.valid) {
      auto vs = json::array();
      for (const auto& v : r.vertices) vs.push_back(rational_vector_json(v));
      j["vertices"] = vs;
    } else {
      j["reason"] = error_name(*r.reason);
      j["offending"] = r.offending;
      j["message"] = r.message;
    }
    out << j.dump() << "\n";
  } else if (r.valid) {
    out << "valid: " << r.vertices.size() << " vertices\n";
    for (const auto& v : r.vertices) out << "  " << rationals(v) << "\n";
  } else {
    out << "invalid: " << error_name(*r.reason) << " " << integers(r.offending) << " " << r.message << "\n";
  }
  return r.valid ? 0 : 2;
}

int cmd_sum(const JobSpec& job, std::ostream& out) {
  if (!job.poly) throw Error(ErrorCode::InvalidArgument, "sum needs --poly");
  const SimplePolytope p = require_simple(job);
  const Polynomial f = Polynomial::parse(*job.poly, p.dim());
  const Rational value = ExactEvaluator(p).weighted_sum(f, job.k);
  json j{{"value", to_string(value)}};
  bool equal = true;
  if (job.oracle) {
    const Rational oracle = weighted_sum_bruteforce(p, f);
    equal = oracle == value;
    j["oracle"] = to_string(oracle);
    j["equal"] = equal;
  }
  if (job.format == "json") {
    out << j.dump() << "\n";
  } else {
    out << to_string(value) << "\n";
    if (job.oracle) out << "oracle " << j["oracle"].get<std::string>() << "\nequal " << (equal ? "true" : "false") << "\n";
  }
  return equal ? 0 : 4;
}

int cmd_count(const JobSpec& job, std::ostream& out) {
  const SimplePolytope p = require_simple(job);
  const Rational weighted = ExactEvaluator(p).weighted_sum(Polynomial::constant(p.dim(), 1));
  const std::size_t unweighted = enumerate_lattice_points(p).size();
  if (job.format == "json")
    out << json{{"weighted", to_string(weighted)}, {"unweighted", unweighted}}.dump() << "\n";
  else
    out << "weighted " << to_string(weighted) << "\nunweighted " << unweighted << "\n";
  return 0;
}

int verify_poly(const JobSpec& job, std::ostream& out) {
  const SimplePolytope p = require_simple(job);
  const ExactEvaluator eval(p);
  const unsigned count = job.count.value_or(20);
  const unsigned degree = job.degree.value_or(3);
  std::size_t cases = 0, passed = 0;
  auto failures = json::array();
  for (auto seed : seeds_or(job, {1})) {
    for (unsigned i = 0; i < count; ++i) {
      const Polynomial f = random_polynomial(p.dim(), degree, seed * 0x9E3779B97F4A7C15ULL + i);
      const Rational exact = eval.weighted_sum(f, job.k);
      const Rational oracle = weighted_sum_bruteforce(p, f);
      ++cases;
      if (exact == oracle) {
        ++passed;
      } else {
        failures.push_back({{"poly", f.to_string()}, {"value", to_string(exact)}, {"oracle", to_string(oracle)}});
      }
    }
  }
  if (job.format == "json") {
    out << json{{"mode", "poly"}, {"cases", cases}, {"passed", passed}, {"failures", failures}}.dump() << "\n";
  } else {
    out << "poly: " << passed << "/" << cases << " exact\n";
    for (const auto& f : failures)
      out << "  mismatch " << f["poly"].get<std::string>() << ": " << f["value"].get<std::string>() << " vs "
          << f["oracle"].get<std::string>() << "\n";
  }
  return passed == cases ? 0 : 4;
}

SmoothFunction default_bump(const SimplePolytope& p) {
  std::vector<double> center(p.dim(), 0.0);
  for (const auto& v : p.vertices())
    for (std::size_t l = 0; l < p.dim(); ++l) center[l] += static_cast<double>(v.coords[l]);
  for (auto& c : center) c /= static_cast<double>(p.vertices().size());
  return SmoothFunction::gaussian_bump(center, std::vector<double>(p.dim(), 1.0), std::vector<double>(p.dim(), 2.5));
}

int verify_smooth(const JobSpec& job, std::ostream& out) {
  const SimplePolytope p = require_simple(job);
  const SmoothFunction f = job.function ? SmoothFunction::from_json(*job.function, p.dim()) : default_bump(p);
  QuadratureOptions opts;
  if (job.tol) opts.tol = *job.tol;
  const double max_defect = job.max_defect.value_or(1e-6);
  const auto reports = verify_main_theorem(p, f, job.k.value_or(3), seeds_or(job, {1, 2, 3}), opts);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.defect < max_defect;
  if (job.format == "json") {
    auto rs = json::array();
    for (const auto& r : reports) rs.push_back(r.to_json());
    out << json{{"mode", "smooth"}, {"function", f.to_json()}, {"reports", rs}, {"passed", ok}}.dump() << "\n";
  } else {
    out << "seed k lhs main_term remainder defect quad_error_estimate\n";
    for (const auto& r : reports)
      out << r.seed << " " << r.k << " " << format_double(r.lhs) << " " << format_double(r.main_term) << " "
          << format_double(r.remainder) << " " << format_double(r.defect) << " "
          << format_double(r.quad_error_estimate) << "\n";
    out << (ok ? "passed" : "FAILED") << "\n";
  }
  return ok ? 0 : 4;
}

int cmd_verify(const JobSpec& job, std::ostream& out) {
  const std::string mode = job.mode.value_or("poly");
  if (mode == "poly") return verify_poly(job, out);
  if (mode == "smooth") return verify_smooth(job, out);
  throw Error(ErrorCode::InvalidArgument, "verify mode must be poly or smooth, got '" + mode + "'");
}

int tables_bernoulli(const JobSpec& job, std::ostream& out) {
  const unsigned max = job.max.value_or(10);
  const auto b = bernoulli_numbers(max);
  auto rows = json::array();
  for (unsigned m = 1; m <= max; ++m) {
    if (job.format == "json")
      rows.push_back({{"m", m}, {"value", to_string(b[m])}});
    else
      out << m << " " << to_string(b[m]) << "\n";
  }
  if (job.format == "json") out << rows.dump() << "\n";
  return 0;
}

int tables_qvalues(const JobSpec& job, std::ostream& out) {
  const unsigned order = job.order.value_or(2);
  const unsigned max = job.max.value_or(4);
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "qvalues needs --order of at least 2");
  auto rows = json::array();
  for (unsigned a = 1; a < order; ++a) {
    const RationalAngle lambda(Rational(a, order));
    const OperatorPoly& M = M_poly(max, lambda);
    for (unsigned m = 1; m <= max; ++m) {
      const std::string value = M.coeffs[m].to_string();
      if (job.format == "json")
        rows.push_back({{"lambda", to_string(lambda.value())}, {"m", m}, {"value", value}});
      else
        out << to_string(lambda.value()) << " " << m << " " << value << "\n";
    }
  }
  if (job.format == "json") out << rows.dump() << "\n";
  return 0;
}

int tables_groups(const JobSpec& job, std::ostream& out) {
  const SimplePolytope p = require_simple(job);
  const GroupStructure groups(p);
  auto rows = json::array();
  for (std::size_t f = 0; f < p.faces().size(); ++f) {
    const auto& face = p.faces()[f];
    const std::size_t order = groups.group(f).order();
    const std::size_t flat = groups.flat(f).size();
    if (job.format == "json")
      rows.push_back({{"face", f}, {"facets", face.facets}, {"codim", face.codim()}, {"order", order}, {"flat", flat}});
    else
      out << "face " << f << " facets " << integers(face.facets) << " codim " << face.codim() << " order " << order
          << " flat " << flat << "\n";
  }
  if (job.format == "json") out << rows.dump() << "\n";
  return 0;
}

int cmd_tables(const JobSpec& job, std::ostream& out) {
  const std::string kind = job.kind.value_or("bernoulli");
  if (kind == "bernoulli") return tables_bernoulli(job, out);
  if (kind == "qvalues") return tables_qvalues(job, out);
  if (kind == "groups") return tables_groups(job, out);
  throw Error(ErrorCode::InvalidArgument, "table kind must be bernoulli, qvalues or groups, got '" + kind + "'");
}

int cmd_decompose(const JobSpec& job, std::ostream& out) {
  const SimplePolytope p = require_simple(job);
  const std::uint64_t seed = seeds_or(job, {1}).front();
  const IntVector xi = choose_polarizing_vector(p, seed);
  const auto cones = polarize(p, xi);
  if (job.format == "json") {
    auto cs = json::array();
    for (const auto& c : cones) {
      auto edges = json::array();
      for (const auto& e : c.polarized_edges) edges.push_back(rational_vector_json(e));
      cs.push_back({{"vertex", c.vertex},
                    {"apex", c.apex},
                    {"facets", c.facets},
                    {"flips", c.flips},
                    {"flip_count", c.flip_count},
                    {"sign", c.sign()},
                    {"edges", edges}});
    }
    out << json{{"seed", seed}, {"xi", xi}, {"cones", cs}}.dump() << "\n";
  } else {
    out << "xi " << integers(xi) << "\n";
    for (const auto& c : cones) {
      std::vector<std::string> edges;
      for (const auto& e : c.polarized_edges) edges.push_back(rationals(e));
      out << "vertex " << c.vertex << " apex " << integers(c.apex) << " flips " << c.flip_count << " sign "
          << (c.sign() > 0 ? "+" : "-") << " edges " << join(edges) << "\n";
    }
  }
  return 0;
}

}  // namespace

json JobSpec::to_json() const {
  json j{{"command", command}, {"format", format}};
  put(j, "polytope", polytope);
  put(j, "poly", poly);
  put(j, "function", function);
  put(j, "mode", mode);
  put(j, "kind", kind);
  put(j, "k", k);
  if (!seeds.empty()) j["seeds"] = seeds;
  put(j, "tol", tol);
  put(j, "max_defect", max_defect);
  put(j, "count", count);
  put(j, "degree", degree);
  put(j, "max", max);
  put(j, "order", order);
  if (oracle) j["oracle"] = true;
  return j;
}

JobSpec JobSpec::from_json(const json& j) {
  static const std::vector<std::string> known{"command", "format", "polytope", "poly",   "function", "mode",
                                              "kind",    "k",      "seeds",    "tol",    "max_defect", "count",
                                              "degree",  "max",    "order",    "oracle"};
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "job must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorCode::ParseError, "unknown job field \"" + key + "\"");
  JobSpec s;
  try {
    s.command = j.at("command").get<std::string>();
    if (j.contains("format")) s.format = j.at("format").get<std::string>();
    if (j.contains("polytope")) s.polytope = j.at("polytope");
    take(j, "poly", s.poly);
    if (j.contains("function")) s.function = j.at("function");
    take(j, "mode", s.mode);
    take(j, "kind", s.kind);
    take(j, "k", s.k);
    if (j.contains("seeds")) s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    take(j, "tol", s.tol);
    take(j, "max_defect", s.max_defect);
    take(j, "count", s.count);
    take(j, "degree", s.degree);
    take(j, "max", s.max);
    take(j, "order", s.order);
    if (j.contains("oracle")) s.oracle = j.at("oracle").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("job: ") + e.what());
  }
  if (s.format != "json" && s.format != "table")
    throw Error(ErrorCode::ParseError, "format must be json or table, got '" + s.format + "'");
  return s;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 3;
    case ErrorCode::QuadratureFailure:
    case ErrorCode::InternalError:
      return 4;
    default:
      return 2;
  }
}

int execute(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.command == "validate") return cmd_validate(job, out);
    if (job.command == "sum") return cmd_sum(job, out);
    if (job.command == "count") return cmd_count(job, out);
    if (job.command == "verify") return cmd_verify(job, out);
    if (job.command == "tables") return cmd_tables(job, out);
    if (job.command == "decompose") return cmd_decompose(job, out);
    throw Error(ErrorCode::ParseError, "unknown command '" + job.command + "'");
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return 4;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact weighted lattice-point sums over simple integral polytopes", "latticeem"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  JobSpec job;
  std::string job_source;
  std::string polytope;
  std::string function;
  std::string mode;
  std::string kind;
  app.add_option("--job", job_source, "job description: inline JSON or a JSON file");
  app.add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "table"}));

  auto add_polytope = [&](CLI::App* sub) {
    sub->add_option("--polytope", polytope, "polytope: JSON file, inline JSON, or [a,b]");
  };
  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", job.k, "truncation order")->check(CLI::PositiveNumber); };
  auto add_seeds = [&](CLI::App* sub) { sub->add_option("--seed", job.seeds, "polarization seeds")->expected(1, -1); };

  auto* validate_cmd = app.add_subcommand("validate", "check that a polytope is simple and integral");
  add_polytope(validate_cmd);

  auto* sum_cmd = app.add_subcommand("sum", "exact weighted lattice sum of a polynomial");
  add_polytope(sum_cmd);
  sum_cmd->add_option("--poly", job.poly, "polynomial in x1..xn");
  add_k(sum_cmd);
  sum_cmd->add_flag("--oracle", job.oracle, "compare with direct enumeration");

  auto* count_cmd = app.add_subcommand("count", "weighted and unweighted lattice point counts");
  add_polytope(count_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check the formula against enumeration");
  verify_cmd->add_option("mode", mode, "poly or smooth")->check(CLI::IsMember({"poly", "smooth"}));
  add_polytope(verify_cmd);
  verify_cmd->add_option("--function", function, "smooth function descriptor (JSON)");
  add_k(verify_cmd);
  add_seeds(verify_cmd);
  verify_cmd->add_option("--tol", job.tol, "absolute quadrature tolerance per integral");
  verify_cmd->add_option("--max-defect", job.max_defect, "largest accepted defect in smooth mode");
  verify_cmd->add_option("--count", job.count, "random polynomials per seed");
  verify_cmd->add_option("--degree", job.degree, "largest degree of the random polynomials");

  auto* tables_cmd = app.add_subcommand("tables", "exact tables");
  tables_cmd->add_option("kind", kind, "bernoulli, qvalues or groups")
      ->check(CLI::IsMember({"bernoulli", "qvalues", "groups"}));
  tables_cmd->add_option("--max", job.max, "largest index");
  tables_cmd->add_option("--order", job.order, "order of the root of unity");
  add_polytope(tables_cmd);

  auto* decompose_cmd = app.add_subcommand("decompose", "polarized cones and flip counts");
  add_polytope(decompose_cmd);
  add_seeds(decompose_cmd);

  std::vector<std::string> argv_storage{"latticeem"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 3;
  }

  if (!job_source.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "ParseError: --job cannot be combined with a subcommand\n";
      return 3;
    }
    try {
      const auto first = job_source.find_first_not_of(" \t\r\n");
      std::string text = job_source;
      if (first == std::string::npos || job_source[first] != '{') {
        std::ifstream file(job_source);
        if (!file) throw Error(ErrorCode::ParseError, "cannot read job file '" + job_source + "'");
        std::stringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
      }
      return execute(JobSpec::from_json(parse_json(text)), out, err);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return exit_code(e.code());
    }
  }
  if (app.get_subcommands().empty()) {
    out << app.help();
    return 3;
  }
  job.command = app.get_subcommands().front()->get_name();
  if (!polytope.empty()) job.polytope = polytope;
  if (!mode.empty()) job.mode = mode;
  if (!kind.empty()) job.kind = kind;
  if (!function.empty()) {
    try {
      job.function = parse_json(function);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return exit_code(e.code());
    }
  }
  return execute(job, out, err);
}

}  // namespace latticeem
