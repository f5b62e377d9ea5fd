#include "flatbundle/flatbundle.h"

#include "flatbundle/commands.hpp"
#include "flatbundle/group_words.hpp"
#include "flatbundle/local_formula.hpp"
#include "flatbundle/serialization.hpp"

#include <cstring>
#include <new>

struct fb_lift {
  flatbundle::Lift value;
};

struct fb_representation {
  flatbundle::Representation value;
};

namespace {

using namespace flatbundle;

thread_local std::string last_error;

static_assert(FB_ERR_INVALID_ARGUMENT == static_cast<int>(ErrorCode::invalid_argument) + 1);
static_assert(FB_ERR_AUDIT_FAILURE == static_cast<int>(ErrorCode::audit_failure) + 1);

fb_status status_of(ErrorCode code) {
  // fb_status lists the error codes in declaration order after FB_OK
  return static_cast<fb_status>(static_cast<int>(code) + 1);
}

template <class Body>
fb_status guard(Body&& body) {
  last_error.clear();
  try {
    body();
    return FB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FB_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FB_ERR_UNKNOWN;
  }
}

fb_status null_pointer() {
  last_error = "null pointer argument";
  return FB_ERR_NULL_POINTER;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RunConfig to_run_config(const fb_config* c) {
  RunConfig r;
  if (!c) return r;
  r.relator_tol = c->relator_tol;
  r.rot_tol = c->rot_tol;
  r.rot_budget = c->rot_budget;
  r.seed = c->seed;
  r.format = c->format == FB_FORMAT_MACHINE ? OutputFormat::machine : OutputFormat::human;
  r.trials = c->trials;
  if (c->escher_mode == FB_ESCHER_EXHAUSTIVE) {
    r.escher = EscherMode{};
  } else if (c->escher_mode == FB_ESCHER_SAMPLED) {
    EscherMode m;
    m.kind = EscherMode::Kind::sampled;
    m.samples = c->escher_samples;
    r.escher = m;
  }
  return r;
}

int deliver(const CommandResult& res, char** output, char** error) {
  last_error = res.error;
  try {
    if (output) *output = copy_string(res.output);
    if (error) *error = copy_string(res.error);
  } catch (const std::bad_alloc&) {
    if (output && *output) {
      std::free(*output);
      *output = nullptr;
    }
    last_error = "out of memory";
    return exit_code::failed;
  }
  return res.exit_code;
}

template <class Fn>
int command(char** output, char** error, Fn&& fn) {
  if (output) *output = nullptr;
  if (error) *error = nullptr;
  try {
    return deliver(fn(), output, error);
  } catch (const std::exception& e) {
    // commands trap their own errors; this only sees allocation failures
    last_error = e.what();
    return exit_code::failed;
  }
}

}  // namespace

extern "C" {

void fb_config_default(fb_config* config) {
  if (!config) return;
  const RunConfig d;
  config->relator_tol = d.relator_tol;
  config->rot_tol = d.rot_tol;
  config->rot_budget = d.rot_budget;
  config->seed = d.seed;
  config->format = FB_FORMAT_HUMAN;
  config->escher_mode = FB_ESCHER_AUTO;
  config->escher_samples = 1000;
  config->trials = d.trials;
}

const char* fb_last_error(void) { return last_error.c_str(); }

const char* fb_status_name(fb_status status) {
  switch (status) {
    case FB_OK: return "ok";
    case FB_ERR_NULL_POINTER: return "null-pointer";
    case FB_ERR_OUT_OF_MEMORY: return "out-of-memory";
    case FB_ERR_UNKNOWN: return "unknown";
    default: break;
  }
  if (status > FB_OK && status <= FB_ERR_AUDIT_FAILURE) {
    return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
  }
  return "invalid-status";
}

void fb_string_free(char* s) { std::free(s); }

fb_status fb_lift_rigid(const char* rational_angle, fb_lift** out) {
  if (!rational_angle || !out) return null_pointer();
  return guard([&] { *out = new fb_lift{Lift::rigid(parse_rational(rational_angle))}; });
}

fb_status fb_lift_rigid_double(double angle, fb_lift** out) {
  if (!out) return null_pointer();
  return guard([&] { *out = new fb_lift{Lift::rigid(angle)}; });
}

fb_status fb_lift_pl(const double* breakpoints, const double* values, size_t count,
                     fb_lift** out) {
  if (!out || (count > 0 && (!breakpoints || !values))) return null_pointer();
  return guard([&] {
    *out = new fb_lift{Lift::piecewise_linear(std::vector<double>(breakpoints, breakpoints + count),
                                              std::vector<double>(values, values + count))};
  });
}

fb_status fb_lift_moebius(double a, double b, double c, double d, fb_lift** out) {
  if (!out) return null_pointer();
  return guard([&] { *out = new fb_lift{boundary_action(Matrix2{a, b, c, d})}; });
}

fb_status fb_lift_from_json(const char* json, fb_lift** out) {
  if (!json || !out) return null_pointer();
  return guard([&] { *out = new fb_lift{lift_from_json(parse_json(json))}; });
}

fb_status fb_lift_to_json(const fb_lift* f, char** out) {
  if (!f || !out) return null_pointer();
  return guard([&] { *out = copy_string(to_json(f->value).dump()); });
}

fb_status fb_lift_compose(const fb_lift* f, const fb_lift* g, fb_lift** out) {
  if (!f || !g || !out) return null_pointer();
  return guard([&] { *out = new fb_lift{compose(f->value, g->value)}; });
}

fb_status fb_lift_invert(const fb_lift* f, fb_lift** out) {
  if (!f || !out) return null_pointer();
  return guard([&] { *out = new fb_lift{invert(f->value)}; });
}

fb_status fb_lift_eval(const fb_lift* f, double x, double* out) {
  if (!f || !out) return null_pointer();
  return guard([&] { *out = f->value(x); });
}

fb_status fb_lift_rotation_number(const fb_lift* f, double tol, uint64_t budget, double* lo,
                                  double* hi) {
  if (!f || !lo || !hi) return null_pointer();
  return guard([&] {
    try {
      const Enclosure e = rotation_number(f->value, tol, budget);
      *lo = e.lo;
      *hi = e.hi;
    } catch (const BudgetExhausted& e) {
      *lo = e.best().lo;
      *hi = e.best().hi;
      throw;
    }
  });
}

void fb_lift_free(fb_lift* f) { delete f; }

fb_status fb_representation_from_json(const char* json, fb_representation** out) {
  if (!json || !out) return null_pointer();
  return guard([&] { *out = new fb_representation{representation_from_json(parse_json(json))}; });
}

fb_status fb_representation_fuchsian(int genus, fb_representation** out) {
  if (!out) return null_pointer();
  return guard([&] { *out = new fb_representation{fuchsian_representation(genus)}; });
}

fb_status fb_representation_to_json(const fb_representation* rep, char** out) {
  if (!rep || !out) return null_pointer();
  return guard([&] { *out = copy_string(to_json(rep->value).dump()); });
}

int fb_representation_genus(const fb_representation* rep) { return rep ? rep->value.genus : 0; }

fb_status fb_euler_number(const fb_representation* rep, const fb_config* config, int64_t* euler,
                          double* deviation) {
  if (!rep || !euler) return null_pointer();
  return guard([&] {
    const RunConfig rc = to_run_config(config);
    rc.validate();
    const EulerResult r = euler_number(rep->value, rc.euler_options());
    *euler = r.euler;
    if (deviation) *deviation = r.deviation;
  });
}

void fb_representation_free(fb_representation* rep) { delete rep; }

fb_status fb_word_is_trivial(const char* word, int genus, int* trivial) {
  if (!word || !trivial) return null_pointer();
  return guard([&] { *trivial = is_trivial(parse_word(word, genus), genus) ? 1 : 0; });
}

fb_status fb_vertex_weight(uint32_t n, uint32_t k, char** out) {
  if (!out) return null_pointer();
  return guard([&] { *out = copy_string(format_rational(weight(SingularVertex{n, k}))); });
}

int fb_cmd_euler_rep(const char* rep_file, const fb_config* config, char** output,
                     char** error) {
  if (!rep_file) return (null_pointer(), exit_code::invalid_input);
  return command(output, error, [&] { return cmd_euler_rep(rep_file, to_run_config(config)); });
}

int fb_cmd_euler_vertices(const char* vertex_file, const fb_config* config, char** output,
                          char** error) {
  if (!vertex_file) return (null_pointer(), exit_code::invalid_input);
  return command(output, error,
                 [&] { return cmd_euler_vertices(vertex_file, to_run_config(config)); });
}

int fb_cmd_fuchsian(int genus, const char* out_file, const fb_config* config, char** output,
                    char** error) {
  return command(output, error, [&] {
    std::optional<std::filesystem::path> path;
    if (out_file) path = out_file;
    return cmd_fuchsian(genus, path, to_run_config(config));
  });
}

int fb_cmd_sullivan(const char* corners_file, const fb_config* config, char** output,
                    char** error) {
  if (!corners_file) return (null_pointer(), exit_code::invalid_input);
  return command(output, error,
                 [&] { return cmd_sullivan(corners_file, to_run_config(config)); });
}

int fb_cmd_escher(int genus, const fb_config* config, char** output, char** error) {
  return command(output, error, [&] { return cmd_escher(genus, to_run_config(config)); });
}

int fb_cmd_cover(const char* rep_file, const fb_config* config, char** output, char** error) {
  if (!rep_file) return (null_pointer(), exit_code::invalid_input);
  return command(output, error, [&] { return cmd_cover(rep_file, to_run_config(config)); });
}

int fb_cmd_prove_mw(int genus, const fb_config* config, char** output, char** error) {
  return command(output, error, [&] { return cmd_prove_mw(genus, to_run_config(config)); });
}

}  // extern "C"
