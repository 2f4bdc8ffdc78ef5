#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "latticeem/polytope.hpp"

namespace latticeem {

/// Parsed polytope description, with the vertex list if one was supplied.
struct PolytopeInput {
  HPolytope h;
  std::optional<std::vector<RationalVector>> vertices;
};

/// Throws ParseError on malformed text.
nlohmann::json parse_json(std::string_view text);

/// {"dim": n, "normals": [[int...]...], "offsets": [int...], "vertices"?: [[...]...]}.
/// Integers may also be given as "p/q" strings with q = 1; vertices may be any rationals.
PolytopeInput polytope_from_json(const nlohmann::json& j);
nlohmann::json polytope_to_json(const HPolytope& h, const std::vector<RationalVector>* vertices = nullptr);

/// "[a,b]", inline JSON, or a path to a JSON file.
PolytopeInput load_polytope(std::string_view source);
/// Same, for a source that is already a JSON value (an object or an interval string).
PolytopeInput load_polytope(const nlohmann::json& source);

/// Throws InvalidArgument unless the supplied vertices are exactly the vertices of p.
void cross_validate_vertices(const SimplePolytope& p, const std::vector<RationalVector>& vertices);

nlohmann::json rational_vector_json(const RationalVector& v);
RationalVector rational_vector_from_json(const nlohmann::json& j);

}  // namespace latticeem
