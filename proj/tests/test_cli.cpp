#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "latticeem/cli.hpp"
#include "latticeem/io.hpp"
#include "latticeem/verify.hpp"

using namespace latticeem;
using namespace latticeem::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string json_text(const HPolytope& h) { return polytope_to_json(h).dump(); }

}  // namespace

TEST(PolytopeJson, RoundTrip) {
  for (const auto& [name, h] : corpus()) EXPECT_EQ(polytope_from_json(polytope_to_json(h)).h, h) << name;
  const auto in = load_polytope(std::string_view("[2,7]"));
  EXPECT_EQ(in.h, HPolytope::interval(2, 7));
  const auto frac = polytope_from_json(nlohmann::json::parse(
      R"({"dim":2,"normals":[["1","0/3"],[0,1],[-1,-1]],"offsets":[0,0,"4/2"],"vertices":[["0","0"],["2","0"],["0","2"]]})"));
  EXPECT_EQ(frac.h, simplex2(2));
  ASSERT_TRUE(frac.vertices.has_value());
  EXPECT_NO_THROW(cross_validate_vertices(SimplePolytope(frac.h), *frac.vertices));
}

TEST(PolytopeJson, Rejections) {
  auto code_of = [](const std::string& text) {
    try {
      load_polytope(std::string_view(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InternalError;
  };
  EXPECT_EQ(code_of(R"({"dim":2,"normals":[[1,0]],"offsets":[0],"color":1})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"dim":2,"normals":[[1,0]]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"dim":1,"normals":[["1/2"]],"offsets":[0]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("{\"dim\":"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("/nonexistent/polytope.json"), ErrorCode::ParseError);
  const SimplePolytope p(simplex2());
  try {
    cross_validate_vertices(p, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(2)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Cli, IntervalSum) {
  const auto r = cli({"sum", "--polytope", "[0,5]", "--poly", "x1^3", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "325/2\noracle 325/2\nequal true\n");
}

TEST(Cli, ConstantSums) {
  EXPECT_EQ(cli({"sum", "--polytope", json_text(unit_square()), "--poly", "1"}).out, "1/1\n");
  EXPECT_EQ(cli({"sum", "--polytope", json_text(thin_triangle()), "--poly", "1"}).out, "5/4\n");
  const auto j = cli({"--format", "json", "sum", "--polytope", json_text(simplex2(2)), "--poly", "1", "--oracle"});
  EXPECT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["value"], "9/4");
  EXPECT_EQ(parsed["oracle"], "9/4");
}

TEST(Cli, Counts) {
  EXPECT_EQ(cli({"count", "--polytope", json_text(unit_square())}).out, "weighted 1/1\nunweighted 4\n");
  EXPECT_EQ(cli({"count", "--polytope", json_text(simplex2())}).out, "weighted 3/4\nunweighted 3\n");
  EXPECT_EQ(cli({"count", "--polytope", json_text(simplex2(2))}).out, "weighted 9/4\nunweighted 6\n");
}

TEST(Cli, ValidateReportsReasons) {
  const auto ok = cli({"--format", "json", "validate", "--polytope", json_text(thin_triangle())});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["valid"], true);
  HPolytope bad = unit_square();
  bad.normals.push_back({1, 0});
  bad.offsets.push_back(1);
  const auto r = cli({"--format", "json", "validate", "--polytope", json_text(bad)});
  EXPECT_EQ(r.code, 2);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["valid"], false);
  EXPECT_EQ(j["reason"], "Redundant");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"sum", "--polytope", "{\"dim\":", "--poly", "1"}).code, 3);
  EXPECT_EQ(cli({"sum", "--polytope", "[0,5]", "--poly", "x1^^2"}).code, 3);
  EXPECT_EQ(cli({"sum", "--polytope", "[0,5]"}).code, 2);
  EXPECT_EQ(cli({"sum", "--polytope", json_text(HPolytope{2, {{2, 0}, {0, 1}, {-1, -1}}, {0, 0, 1}}), "--poly", "1"}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 3);
  EXPECT_EQ(cli({}).code, 3);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"--job", "{\"command\":\"count\",\"polytope\":\"[0,3]\",\"colour\":1}"}).code, 3);
}

TEST(Cli, JobSpecRoundTrip) {
  JobSpec job;
  job.command = "verify";
  job.polytope = nlohmann::json::parse(json_text(thin_triangle()));
  job.mode = "smooth";
  job.function = nlohmann::json::parse(R"({"family":"gaussian_bump","center":[0.5,0.5],"radius":2})");
  job.k = 3;
  job.seeds = {1, 2};
  job.tol = 1e-9;
  job.format = "json";
  EXPECT_EQ(JobSpec::from_json(job.to_json()), job);
  EXPECT_THROW(JobSpec::from_json(nlohmann::json::parse(R"({"command":"sum","unknown":true})")), Error);
}

TEST(Cli, JobMatchesFlags) {
  const auto flags = cli({"count", "--polytope", "[0,6]"});
  const auto job = cli({"--job", R"({"command":"count","polytope":"[0,6]"})"});
  EXPECT_EQ(flags.code, 0);
  EXPECT_EQ(flags.out, job.out);
  const std::string path = ::testing::TempDir() + "latticeem_job.json";
  std::ofstream(path) << R"({"command":"sum","polytope":"[0,4]","poly":"x1^2"})";
  EXPECT_EQ(cli({"--job", path}).out, "22/1\n");
  std::remove(path.c_str());
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"verify", "poly", "--polytope", json_text(thin_triangle()), "--count", "4"};
  const auto a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "poly: 4/4 exact\n");
}

TEST(Cli, Tables) {
  const auto b = cli({"tables", "bernoulli", "--max", "4"});
  EXPECT_EQ(b.out, "1 -1/2\n2 1/6\n3 0/1\n4 -1/30\n");
  const auto q = cli({"--format", "json", "tables", "qvalues", "--order", "2", "--max", "4"});
  EXPECT_EQ(q.code, 0);
  const auto rows = nlohmann::json::parse(q.out);
  ASSERT_EQ(rows.size(), 4u);
  std::vector<std::string> values;
  for (const auto& r : rows) values.push_back(r["value"]);
  EXPECT_EQ(values, (std::vector<std::string>{"0/1", "1/4", "0/1", "-1/48"}));
  const auto g = cli({"--format", "json", "tables", "groups", "--polytope", json_text(thin_triangle())});
  std::vector<int> orders;
  int flat = 0;
  for (const auto& r : nlohmann::json::parse(g.out)) {
    orders.push_back(r["order"]);
    flat += r["flat"].get<int>();
  }
  EXPECT_EQ(orders, (std::vector<int>{1, 1, 1, 1, 1, 1, 2}));
  EXPECT_EQ(flat, 2);
}

TEST(Cli, DecomposeAndSmoothVerify) {
  const auto d = cli({"--format", "json", "decompose", "--polytope", json_text(unit_square()), "--seed", "3"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(nlohmann::json::parse(d.out)["cones"].size(), 4u);
  const auto v = cli({"--format", "json", "verify", "smooth", "--polytope", json_text(thin_triangle(3)), "--k", "2",
                      "--seed", "1", "--function",
                      R"({"family":"gaussian_bump","center":[1.2,2.1],"sigma":1,"radius":2.5})"});
  EXPECT_EQ(v.code, 0) << v.err;
  const auto j = nlohmann::json::parse(v.out);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(MainTheoremReport::from_json(j["reports"][0]).k, 2u);
}
