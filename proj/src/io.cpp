#include "latticeem/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include "latticeem/error.hpp"

namespace latticeem {

namespace {

Rational rational_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer or a \"p/q\" string");
}

std::int64_t integer_from_json(const nlohmann::json& j, const char* what) {
  const Rational q = rational_from_json(j, what);
  if (q.get_den() != 1) throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer, got " + to_string(q));
  if (!q.get_num().fits_slong_p()) throw Error(ErrorCode::ParseError, std::string(what) + " is out of range");
  return q.get_num().get_si();
}

}  // namespace

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

nlohmann::json rational_vector_json(const RationalVector& v) {
  auto out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

RationalVector rational_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rationals");
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x, "coordinate"));
  return out;
}

PolytopeInput polytope_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "polytope must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "dim" && key != "normals" && key != "offsets" && key != "vertices")
      throw Error(ErrorCode::ParseError, "unknown polytope field \"" + key + "\"");
  if (!j.contains("dim") || !j.contains("normals") || !j.contains("offsets"))
    throw Error(ErrorCode::ParseError, "polytope needs \"dim\", \"normals\" and \"offsets\"");
  PolytopeInput in;
  const std::int64_t dim = integer_from_json(j.at("dim"), "dim");
  if (dim < 1) throw Error(ErrorCode::ParseError, "dim must be positive");
  in.h.dim = static_cast<std::size_t>(dim);
  const auto& normals = j.at("normals");
  const auto& offsets = j.at("offsets");
  if (!normals.is_array() || !offsets.is_array())
    throw Error(ErrorCode::ParseError, "normals and offsets must be arrays");
  for (const auto& row : normals) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "each normal must be an array");
    IntVector u;
    for (const auto& x : row) u.push_back(integer_from_json(x, "normal entry"));
    in.h.normals.push_back(std::move(u));
  }
  for (const auto& x : offsets) in.h.offsets.push_back(integer_from_json(x, "offset"));
  if (j.contains("vertices")) {
    if (!j.at("vertices").is_array()) throw Error(ErrorCode::ParseError, "vertices must be an array");
    std::vector<RationalVector> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(rational_vector_from_json(v));
    in.vertices = std::move(vs);
  }
  return in;
}

nlohmann::json polytope_to_json(const HPolytope& h, const std::vector<RationalVector>* vertices) {
  nlohmann::json j;
  j["dim"] = h.dim;
  j["normals"] = h.normals;
  j["offsets"] = h.offsets;
  if (vertices) {
    auto vs = nlohmann::json::array();
    for (const auto& v : *vertices) vs.push_back(rational_vector_json(v));
    j["vertices"] = std::move(vs);
  }
  return j;
}

PolytopeInput load_polytope(std::string_view source) {
  static const std::regex interval(R"(^\s*\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]\s*$)");
  const std::string s(source);
  std::smatch m;
  if (std::regex_match(s, m, interval)) {
    PolytopeInput in;
    try {
      in.h = HPolytope::interval(std::stoll(m[1].str()), std::stoll(m[2].str()));
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::ParseError, "interval endpoint out of range");
    }
    return in;
  }
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') return polytope_from_json(parse_json(s));
  std::ifstream file(s);
  if (!file) throw Error(ErrorCode::ParseError, "cannot read polytope file '" + s + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return polytope_from_json(parse_json(buffer.str()));
}

PolytopeInput load_polytope(const nlohmann::json& source) {
  if (source.is_string()) return load_polytope(std::string_view(source.get_ref<const std::string&>()));
  return polytope_from_json(source);
}

void cross_validate_vertices(const SimplePolytope& p, const std::vector<RationalVector>& vertices) {
  std::vector<RationalVector> computed;
  for (const auto& v : p.vertices()) computed.push_back(to_rational(v.coords));
  std::vector<RationalVector> given = vertices;
  auto less = [](const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Rational& x, const Rational& y) { return x < y; });
  };
  std::sort(computed.begin(), computed.end(), less);
  std::sort(given.begin(), given.end(), less);
  if (computed != given)
    throw Error(ErrorCode::InvalidArgument, "supplied vertices differ from the vertices of the H-description");
}

}  // namespace latticeem
