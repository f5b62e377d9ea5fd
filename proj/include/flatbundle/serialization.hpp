#pragma once

#include "flatbundle/cover.hpp"
#include "flatbundle/local_formula.hpp"
#include "flatbundle/representations.hpp"
#include "flatbundle/sections.hpp"

#include <json.hpp>

#include <filesystem>
#include <string_view>
#include <vector>

namespace flatbundle {

using Json = nlohmann::ordered_json;

// Schemas (all JSON):
//   lift            {"type":"rigid","angle":"2/5" | 0.4}
//                   {"type":"pl","breakpoints":[...],"values":[...]}
//                   {"type":"moebius","matrix":[[a,b],[c,d]],"offset":k}
//                   {"type":"chain","parts":[lift, ...]}   outermost first
//   representation  {"genus":g,"generators":[lift x 2g]}
//   vertices        {"vertices":[{"n":1,"k":0}, ...]}
//   corners         {"genus":g,"corners":[turns x 4g]}
//   loop            {"samples":[turns, ...]}
//   cover           {"base_genus":g,"words":["a1 a1","b1", ...]}
// Exact rationals are strings "p/q"; floating values are JSON numbers.
// Lifts serialize the value they compute: the stored integer shift is folded
// into the angle, values or offset.

Json to_json(const Lift& f);
Lift lift_from_json(const Json& j);

Json to_json(const Representation& rep);
Representation representation_from_json(const Json& j);

Json vertices_to_json(std::span<const SingularVertex> vertices);
std::vector<SingularVertex> vertices_from_json(const Json& j);

Json to_json(const CornerData& data);
CornerData corners_from_json(const Json& j);

Json to_json(const BoundaryLoop& loop);
BoundaryLoop loop_from_json(const Json& j);

Json to_json(const CoverPresentation& cp);
// Re-verifies the presentation.
CoverPresentation cover_from_json(const Json& j);

Json to_json(const Enclosure& e);
Json to_json(const EulerResult& r);
Json to_json(const VertexSum& s);
Json to_json(const EscherReport& r);
Json to_json(const EscherVerdict& v);
Json to_json(const SullivanResult& r);
Json to_json(const DoublingReport& r);
Json to_json(const AuditReport& r);

// Parse failures become ParseError with the byte offset.
Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& path);

}  // namespace flatbundle
