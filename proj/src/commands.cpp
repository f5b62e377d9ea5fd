#include "flatbundle/commands.hpp"

#include "flatbundle/cover.hpp"
#include "flatbundle/random.hpp"
#include "flatbundle/sections.hpp"
#include "flatbundle/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace flatbundle {

void RunConfig::validate() const {
  if (!(relator_tol > 0.0) || !(rot_tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tolerances must be positive");
  }
  if (rot_budget < 1 || trials < 1) {
    throw Error(ErrorCode::invalid_argument, "budgets and trial counts must be at least 1");
  }
  if (escher && escher->kind == EscherMode::Kind::sampled && escher->samples < 1) {
    throw Error(ErrorCode::invalid_argument, "sampled mode needs at least one sample");
  }
}

EulerOptions RunConfig::euler_options() const {
  EulerOptions o;
  o.relator_tol = relator_tol;
  o.rot_tol = rot_tol;
  o.rot_budget = rot_budget;
  return o;
}

EscherMode parse_escher_mode(std::string_view text) {
  EscherMode mode;
  if (text == "exhaustive") return mode;
  constexpr std::string_view prefix = "sampled:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && end == digits.data() + digits.size() && n >= 1) {
      mode.kind = EscherMode::Kind::sampled;
      mode.samples = n;
      return mode;
    }
  }
  throw Error(ErrorCode::invalid_argument,
              "mode must be \"exhaustive\" or \"sampled:N\" with N >= 1, got \"" +
                  std::string(text) + "\"");
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// One report, two renderings.
struct Report {
  Json machine;
  std::ostringstream human;
  bool passed = true;
};

CommandResult finish(const RunConfig& config, Report& r) {
  CommandResult out;
  out.exit_code = r.passed ? exit_code::ok : exit_code::failed;
  out.output = config.format == OutputFormat::machine ? r.machine.dump(2) + "\n" : r.human.str();
  return out;
}

CommandResult guarded(const RunConfig& config, const std::function<CommandResult()>& body) {
  CommandResult fail;
  try {
    config.validate();
    return body();
  } catch (const Error& e) {
    fail.exit_code = is_input_error(e.code()) ? exit_code::invalid_input : exit_code::failed;
    fail.error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    fail.exit_code = exit_code::failed;
    fail.error = std::string("internal: ") + e.what();
  }
  return fail;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!(out << text)) {
    throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  }
}

EscherMode resolve_escher_mode(int genus, const RunConfig& config) {
  EscherMode mode;
  if (config.escher) {
    mode = *config.escher;
  } else if (4 * genus > kMaxExhaustiveSheets) {
    mode.kind = EscherMode::Kind::sampled;
    mode.samples = 1000;
  }
  mode.seed = config.seed;
  if (mode.kind == EscherMode::Kind::exhaustive && 4 * genus > kMaxExhaustiveSheets) {
    throw Error(ErrorCode::invalid_argument,
                "exhaustive Escher check is limited to 4g <= " +
                    std::to_string(kMaxExhaustiveSheets) + "; use --mode sampled:N");
  }
  return mode;
}

std::string describe(const EscherReport& r) {
  std::string s = r.mode.kind == EscherMode::Kind::exhaustive ? "exhaustive" : "sampled";
  return s + ", " + std::to_string(r.orders_checked) + " circular orders, " +
         std::to_string(r.unsat) + " UNSAT, " + std::to_string(r.sat) + " SAT";
}

void require_genus(int genus) {
  if (genus < 1) throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
}

}  // namespace

CommandResult cmd_euler_rep(const std::filesystem::path& rep_file, const RunConfig& config) {
  return guarded(config, [&] {
    const Representation rep = representation_from_json(read_json_file(rep_file));
    const EulerResult res = euler_number(rep, config.euler_options());
    Report r;
    r.machine = Json{{"genus", rep.genus}};
    r.machine.update(to_json(res));
    r.human << "genus " << rep.genus << "\n"
            << "euler " << res.euler << "\n"
            << "relator deviation " << num(res.deviation) << "\n"
            << "rotation enclosure [" << num(res.enclosure.lo) << ", " << num(res.enclosure.hi)
            << "]\n";
    return finish(config, r);
  });
}

CommandResult cmd_euler_vertices(const std::filesystem::path& vertex_file,
                                 const RunConfig& config) {
  return guarded(config, [&] {
    const auto vertices = vertices_from_json(read_json_file(vertex_file));
    const VertexSum sum = euler_from_vertices(vertices);
    Report r;
    r.machine = Json{{"vertices", vertices.size()}};
    r.machine.update(to_json(sum));
    r.human << format_rational(sum.total) << (sum.integral ? " (integral)" : " (non-integral)")
            << "\n";
    return finish(config, r);
  });
}

CommandResult cmd_fuchsian(int genus, const std::optional<std::filesystem::path>& out_file,
                           const RunConfig& config) {
  return guarded(config, [&] {
    const RegularPolygon poly = regular_polygon(genus);
    const Representation rep = fuchsian_representation(genus);
    const EulerResult res = euler_number(rep, config.euler_options());
    const Json rep_json = to_json(rep);
    if (out_file) write_file(*out_file, rep_json.dump(2) + "\n");
    const std::int64_t bound = 2 * static_cast<std::int64_t>(genus) - 2;
    Report r;
    r.passed = std::abs(res.euler) == bound;
    r.machine = Json{{"genus", genus},
                     {"polygon",
                      {{"sides", poly.sides},
                       {"vertex_angle", poly.vertex_angle},
                       {"circumradius", poly.circumradius},
                       {"inradius", poly.inradius}}},
                     {"bound", bound},
                     {"result", to_json(res)},
                     {"representation", rep_json}};
    r.human << "regular " << poly.sides << "-gon: vertex angle " << num(poly.vertex_angle)
            << ", circumradius " << num(poly.circumradius) << ", inradius "
            << num(poly.inradius) << "\n"
            << "euler " << res.euler << " (2g - 2 = " << bound << "), relator deviation "
            << num(res.deviation) << "\n";
    if (out_file) r.human << "representation written to " << out_file->string() << "\n";
    return finish(config, r);
  });
}

CommandResult cmd_sullivan(const std::filesystem::path& corners_file, const RunConfig& config) {
  return guarded(config, [&] {
    const CornerData data = corners_from_json(read_json_file(corners_file));
    const SullivanResult res = sullivan_degree(data);
    Report r;
    r.machine = Json{{"genus", data.genus}, {"bound", 2 * data.genus - 1}};
    r.machine.update(to_json(res));
    r.human << "degree " << res.degree << " (bound 2g - 1 = " << 2 * data.genus - 1
            << "), loop length " << num(res.total_length) << " turns\n";
    return finish(config, r);
  });
}

CommandResult cmd_escher(int genus, const RunConfig& config) {
  return guarded(config, [&] {
    require_genus(genus);
    const EscherMode mode = resolve_escher_mode(genus, config);
    const EscherReport rep = escher_exhaust(genus, mode);
    std::vector<int> natural(static_cast<std::size_t>(4 * genus));
    std::iota(natural.begin(), natural.end(), 1);
    const EscherVerdict cert = escher_check(SheetCircle::from_bordered(natural));
    Report r;
    r.passed = rep.passed();
    r.machine = to_json(rep);
    r.machine["certificate"] = {{"order", natural}, {"verdict", to_json(cert)}};
    r.human << "genus " << genus << ": " << describe(rep) << " ... " << pass_fail(r.passed)
            << "\n"
            << "certificate for f1 .. f" << 4 * genus << " in order:";
    for (std::size_t j = 0; j < cert.covering_arc.size(); ++j) {
      r.human << " gap" << j + 1 << "<-arc" << cert.covering_arc[j];
    }
    r.human << "\n";
    return finish(config, r);
  });
}

CommandResult cmd_cover(const std::filesystem::path& rep_file, const RunConfig& config) {
  return guarded(config, [&] {
    const Representation rep = representation_from_json(read_json_file(rep_file));
    const DoublingReport d = doubling_audit(rep, config.euler_options());
    Report r;
    r.passed = d.passed();
    r.machine = to_json(d);
    r.machine["presentation"] = to_json(double_cover_presentation(rep.genus));
    r.human << "base genus " << d.base_genus << ", euler " << d.euler << "\n"
            << "cover genus " << d.cover_genus << ", euler " << d.cover_euler
            << " (2 x base: " << (d.doubled ? "yes" : "no") << ", bound " << d.cover_bound
            << ": " << (d.within_bound ? "within" : "exceeded") << ")\n";
    return finish(config, r);
  });
}

CommandResult cmd_prove_mw(int genus, const RunConfig& config) {
  return guarded(config, [&] {
    require_genus(genus);
    const EscherMode mode = resolve_escher_mode(genus, config);
    const std::int64_t target = 2 * static_cast<std::int64_t>(genus) - 2;
    const std::int64_t excluded = target + 1;
    Report r;
    r.machine = Json{{"genus", genus}, {"bound", target}};
    Json steps = Json::array();
    r.human << "Euler bound replay for genus " << genus << ": |e| <= " << target << "\n";

    auto step = [&](const char* name, bool ok, Json detail, const std::string& line) {
      detail["step"] = name;
      detail["passed"] = ok;
      steps.push_back(std::move(detail));
      r.passed = r.passed && ok;
      r.human << "[" << steps.size() << "] " << line << " ... " << pass_fail(ok) << "\n";
    };

    {
      const auto census = d2_census(genus);
      const VertexSum sum = euler_from_vertices(census);
      const bool ok = census.size() == census_size(genus) &&
                      sum.total == Rational(census_max_sum(genus));
      Json d{{"vertices", census.size()}, {"weight", "1/6"}, {"sum", format_rational(sum.total)}};
      step("census", ok, std::move(d),
           "vertex census: " + std::to_string(census.size()) + " vertices of weight 1/6 sum to " +
               format_rational(sum.total) + ", so |e| <= " + std::to_string(excluded));
    }
    {
      const EscherReport rep = escher_exhaust(genus, mode);
      step("escher", rep.passed(), to_json(rep),
           "escher order: " + describe(rep) + "; |e| = " + std::to_string(excluded) +
               " excluded");
    }
    {
      std::vector<std::pair<std::string, Representation>> reps;
      if (genus >= 2) reps.emplace_back("fuchsian", fuchsian_representation(genus));
      std::mt19937_64 rng(trial_seed(config.seed, 0x636f766572, static_cast<std::uint64_t>(genus)));
      reps.emplace_back("abelian", random_abelian_representation(genus, rng));
      const std::int64_t cover_bound = 2 * (2 * static_cast<std::int64_t>(genus) - 1) - 2;
      bool ok = 2 * excluded > cover_bound;
      Json cases = Json::array();
      std::string line = "double cover:";
      for (const auto& [name, rep] : reps) {
        const DoublingReport d = doubling_audit(rep, config.euler_options());
        ok = ok && d.passed();
        Json c = to_json(d);
        c["family"] = name;
        cases.push_back(std::move(c));
        line += " " + name + " " + std::to_string(d.euler) + " -> " +
                std::to_string(d.cover_euler) + ";";
      }
      line += " |e| = " + std::to_string(excluded) + " would double to " +
              std::to_string(2 * excluded) + " > " + std::to_string(cover_bound);
      step("doubling", ok, Json{{"cover_bound", cover_bound}, {"cases", std::move(cases)}}, line);
    }
    {
      AuditOptions opts;
      opts.trials = config.trials;
      opts.seed = config.seed;
      opts.euler = config.euler_options();
      const AuditReport audit = mw_audit(genus, opts);
      const bool ok = audit.passed() && (genus < 2 || audit.bound_attained);
      step("audit", ok, to_json(audit),
           "audit: " + std::to_string(audit.entries.size()) + " representations, max |e| = " +
               std::to_string(audit.max_abs_euler) + " (bound " + std::to_string(target) +
               (audit.bound_attained ? ", attained" : "") + "), " +
               std::to_string(audit.violations) + " violations, " +
               std::to_string(audit.failures) + " failures");
    }
    r.machine["steps"] = std::move(steps);
    r.machine["passed"] = r.passed;
    r.human << "result: " << pass_fail(r.passed) << "\n";
    return finish(config, r);
  });
}

}  // namespace flatbundle
