#include "flatbundle/serialization.hpp"

#include <fstream>
#include <sstream>

namespace flatbundle {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::parse, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) schema_error(std::string("field \"") + key + "\" must be an array");
  return v;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema_error(std::string("field \"") + key + "\" must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    schema_error(std::string("field \"") + key + "\" out of range");
  }
  return static_cast<int>(x);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) schema_error(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& arr, const char* what) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) out.push_back(number(v, what));
  return out;
}

// Strings and integers are exact; any other number switches to floating mode.
bool exact_entry(const Json& v) { return v.is_string() || v.is_number_integer(); }

Rational rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  schema_error("expected a rational \"p/q\" or an integer");
}

Json rational_json(const Rational& r) { return format_rational(r); }

Json shifted(const std::vector<Rational>& xs, std::int64_t m) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(rational_json(x + Rational(m)));
  return out;
}

Json shifted(const std::vector<double>& xs, std::int64_t m) {
  Json out = Json::array();
  for (double x : xs) out.push_back(x + static_cast<double>(m));
  return out;
}

}  // namespace

Json to_json(const Lift& f) {
  Json j;
  switch (f.kind()) {
    case LiftKind::rigid:
      j["type"] = "rigid";
      if (auto q = f.exact_angle()) {
        j["angle"] = rational_json(*q);
      } else {
        j["angle"] = f.angle();
      }
      break;
    case LiftKind::piecewise_linear: {
      const auto& d = f.pl_data();
      j["type"] = "pl";
      if (d.exact()) {
        Json bps = Json::array();
        for (const auto& x : *d.exact_breakpoints) bps.push_back(rational_json(x));
        j["breakpoints"] = std::move(bps);
        j["values"] = shifted(*d.exact_values, f.shift());
      } else {
        j["breakpoints"] = d.breakpoints;
        j["values"] = shifted(d.values, f.shift());
      }
      break;
    }
    case LiftKind::moebius: {
      const auto& d = f.moebius_data();
      j["type"] = "moebius";
      j["matrix"] = {{d.matrix.a, d.matrix.b}, {d.matrix.c, d.matrix.d}};
      j["offset"] = d.offset + f.shift();
      break;
    }
    case LiftKind::chain: {
      j["type"] = "chain";
      Json parts = Json::array();
      for (const Lift& p : f.chain_parts()) parts.push_back(to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

Lift lift_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string()) schema_error("lift type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "rigid") {
    const Json& a = field(j, "angle");
    if (exact_entry(a)) return Lift::rigid(rational(a));
    return Lift::rigid(number(a, "rigid angle"));
  }
  if (t == "pl") {
    const Json& bps = array_field(j, "breakpoints");
    const Json& vals = array_field(j, "values");
    const bool exact = std::all_of(bps.begin(), bps.end(), exact_entry) &&
                       std::all_of(vals.begin(), vals.end(), exact_entry);
    if (exact) {
      std::vector<Rational> xs, vs;
      for (const Json& v : bps) xs.push_back(rational(v));
      for (const Json& v : vals) vs.push_back(rational(v));
      return Lift::piecewise_linear(std::move(xs), std::move(vs));
    }
    return Lift::piecewise_linear(numbers(bps, "breakpoint"), numbers(vals, "value"));
  }
  if (t == "moebius") {
    const Json& m = array_field(j, "matrix");
    if (m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2) {
      schema_error("moebius matrix must be [[a,b],[c,d]]");
    }
    const Matrix2 mat{number(m[0][0], "matrix entry"), number(m[0][1], "matrix entry"),
                      number(m[1][0], "matrix entry"), number(m[1][1], "matrix entry")};
    if (!j.contains("offset")) return boundary_action(mat);
    const Json& off = j["offset"];
    if (!off.is_number_integer()) schema_error("moebius offset must be an integer");
    return Lift::moebius(mat, off.get<std::int64_t>());
  }
  if (t == "chain") {
    const Json& parts = array_field(j, "parts");
    if (parts.empty()) schema_error("chain needs at least one part");
    ComposeLimits limits;
    limits.max_chain_depth = std::max(limits.max_chain_depth, parts.size());
    Lift out = lift_from_json(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      out = compose(out, lift_from_json(parts[i]), limits);
    }
    return out;
  }
  schema_error("unknown lift type \"" + t + "\"");
}

Json to_json(const Representation& rep) {
  Json gens = Json::array();
  for (const Lift& f : rep.generators) gens.push_back(to_json(f));
  return Json{{"genus", rep.genus}, {"generators", std::move(gens)}};
}

Representation representation_from_json(const Json& j) {
  const int genus = int_field(j, "genus");
  std::vector<Lift> gens;
  for (const Json& g : array_field(j, "generators")) gens.push_back(lift_from_json(g));
  return Representation(genus, std::move(gens));
}

Json vertices_to_json(std::span<const SingularVertex> vertices) {
  Json arr = Json::array();
  for (const auto& v : vertices) arr.push_back({{"n", v.n}, {"k", v.k}});
  return Json{{"vertices", std::move(arr)}};
}

std::vector<SingularVertex> vertices_from_json(const Json& j) {
  std::vector<SingularVertex> out;
  for (const Json& v : array_field(j, "vertices")) {
    const int n = int_field(v, "n");
    const int k = int_field(v, "k");
    if (n < 0 || k < 0) schema_error("vertex sheet counts must be non-negative");
    out.push_back({static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k)});
  }
  return out;
}

Json to_json(const CornerData& data) {
  return Json{{"genus", data.genus}, {"corners", data.corners}};
}

CornerData corners_from_json(const Json& j) {
  return CornerData(int_field(j, "genus"), numbers(array_field(j, "corners"), "corner"));
}

Json to_json(const BoundaryLoop& loop) { return Json{{"samples", loop.samples}}; }

BoundaryLoop loop_from_json(const Json& j) {
  return BoundaryLoop(numbers(array_field(j, "samples"), "sample"));
}

Json to_json(const CoverPresentation& cp) {
  Json words = Json::array();
  for (const Word& w : cp.words) words.push_back(format_word(w));
  return Json{{"base_genus", cp.base_genus}, {"words", std::move(words)}};
}

CoverPresentation cover_from_json(const Json& j) {
  CoverPresentation cp;
  cp.base_genus = int_field(j, "base_genus");
  if (cp.base_genus < 1) throw Error(ErrorCode::invalid_genus, "base genus must be at least 1");
  cp.cover_genus = 2 * cp.base_genus - 1;
  for (const Json& w : array_field(j, "words")) {
    if (!w.is_string()) schema_error("cover words must be strings");
    cp.words.push_back(parse_word(w.get<std::string>(), cp.base_genus));
  }
  verify(cp);
  return cp;
}

Json to_json(const Enclosure& e) { return Json::array({e.lo, e.hi}); }

Json to_json(const EulerResult& r) {
  return Json{{"euler", r.euler},
              {"deviation", r.deviation},
              {"f0", r.f0},
              {"rotation_enclosure", to_json(r.enclosure)}};
}

Json to_json(const VertexSum& s) {
  return Json{{"total", format_rational(s.total)}, {"integral", s.integral}};
}

Json to_json(const EscherReport& r) {
  Json j{{"genus", r.genus},
         {"mode", r.mode.kind == EscherMode::Kind::exhaustive ? "exhaustive" : "sampled"},
         {"orders_checked", r.orders_checked},
         {"unsat", r.unsat},
         {"sat", r.sat},
         {"passed", r.passed()}};
  if (r.mode.kind == EscherMode::Kind::sampled) {
    j["samples"] = r.mode.samples;
    j["seed"] = r.mode.seed;
  }
  if (r.first_sat_order) j["first_sat_order"] = *r.first_sat_order;
  return j;
}

Json to_json(const EscherVerdict& v) {
  Json j{{"satisfiable", v.satisfiable}, {"covering_arc", v.covering_arc}};
  if (v.witness_gap) j["witness_gap"] = *v.witness_gap;
  return j;
}

Json to_json(const SullivanResult& r) {
  return Json{{"degree", r.degree}, {"total_length", r.total_length}};
}

Json to_json(const DoublingReport& r) {
  return Json{{"base_genus", r.base_genus},   {"cover_genus", r.cover_genus},
              {"euler", r.euler},             {"cover_euler", r.cover_euler},
              {"cover_bound", r.cover_bound}, {"doubled", r.doubled},
              {"within_bound", r.within_bound}, {"passed", r.passed()}};
}

Json to_json(const AuditReport& r) {
  Json entries = Json::array();
  for (const AuditEntry& e : r.entries) {
    Json item{{"family", e.family}, {"label", e.label}};
    item["euler"] = e.euler ? Json(*e.euler) : Json(nullptr);
    item["deviation"] = e.deviation;
    if (!e.error.empty()) item["error"] = e.error;
    entries.push_back(std::move(item));
  }
  Json j{{"genus", r.genus},
         {"bound", r.bound},
         {"representations", r.entries.size()},
         {"violations", r.violations},
         {"failures", r.failures},
         {"max_abs_euler", r.max_abs_euler},
         {"bound_attained", r.bound_attained},
         {"passed", r.passed()}};
  if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
  j["entries"] = std::move(entries);
  return j;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::invalid_argument, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

}  // namespace flatbundle
