#ifndef FLATBUNDLE_FLATBUNDLE_H
#define FLATBUNDLE_FLATBUNDLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define FB_API __attribute__((visibility("default")))
#else
#define FB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fb_lift fb_lift;
typedef struct fb_representation fb_representation;

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_INVALID_ARGUMENT,
  FB_ERR_PARSE,
  FB_ERR_INVALID_GENUS,
  FB_ERR_INVALID_MATRIX,
  FB_ERR_COMPLEXITY_BUDGET,
  FB_ERR_BUDGET_EXHAUSTED,
  FB_ERR_AMBIGUOUS_ARC,
  FB_ERR_SAMPLING_GAP,
  FB_ERR_GENUS_MISMATCH,
  FB_ERR_WORD_TOO_LONG,
  FB_ERR_DEGENERATE_VERTEX,
  FB_ERR_NOT_A_REPRESENTATION,
  FB_ERR_AMBIGUOUS_INTEGER,
  FB_ERR_INTERNAL_CONSISTENCY,
  FB_ERR_THEOREM_VIOLATION,
  FB_ERR_AUDIT_FAILURE,
  FB_ERR_NULL_POINTER,
  FB_ERR_OUT_OF_MEMORY,
  FB_ERR_UNKNOWN
} fb_status;

typedef enum fb_format { FB_FORMAT_HUMAN = 0, FB_FORMAT_MACHINE = 1 } fb_format;

typedef enum fb_escher_mode {
  FB_ESCHER_AUTO = 0, /* exhaustive when 4g <= 8, else 1000 samples */
  FB_ESCHER_EXHAUSTIVE = 1,
  FB_ESCHER_SAMPLED = 2
} fb_escher_mode;

typedef struct fb_config {
  double relator_tol;
  double rot_tol;
  uint64_t rot_budget;
  uint64_t seed;
  fb_format format;
  fb_escher_mode escher_mode;
  size_t escher_samples;
  size_t trials;
} fb_config;

FB_API void fb_config_default(fb_config* config);

/* Message of the last failure on the calling thread ("" if none). */
FB_API const char* fb_last_error(void);
FB_API const char* fb_status_name(fb_status status);
/* Releases strings returned through char** out parameters. */
FB_API void fb_string_free(char* s);

/* Lifts. Angles and points are in turns. */
FB_API fb_status fb_lift_rigid(const char* rational_angle, fb_lift** out);
FB_API fb_status fb_lift_rigid_double(double angle, fb_lift** out);
FB_API fb_status fb_lift_pl(const double* breakpoints, const double* values, size_t count,
                            fb_lift** out);
FB_API fb_status fb_lift_moebius(double a, double b, double c, double d, fb_lift** out);
FB_API fb_status fb_lift_from_json(const char* json, fb_lift** out);
FB_API fb_status fb_lift_to_json(const fb_lift* f, char** out);
FB_API fb_status fb_lift_compose(const fb_lift* f, const fb_lift* g, fb_lift** out);
FB_API fb_status fb_lift_invert(const fb_lift* f, fb_lift** out);
FB_API fb_status fb_lift_eval(const fb_lift* f, double x, double* out);
FB_API fb_status fb_lift_rotation_number(const fb_lift* f, double tol, uint64_t budget,
                                         double* lo, double* hi);
FB_API void fb_lift_free(fb_lift* f);

/* Representations. */
FB_API fb_status fb_representation_from_json(const char* json, fb_representation** out);
FB_API fb_status fb_representation_fuchsian(int genus, fb_representation** out);
FB_API fb_status fb_representation_to_json(const fb_representation* rep, char** out);
FB_API int fb_representation_genus(const fb_representation* rep);
FB_API fb_status fb_euler_number(const fb_representation* rep, const fb_config* config,
                                 int64_t* euler, double* deviation);
FB_API void fb_representation_free(fb_representation* rep);

/* Words and vertex weights. */
FB_API fb_status fb_word_is_trivial(const char* word, int genus, int* trivial);
FB_API fb_status fb_vertex_weight(uint32_t n, uint32_t k, char** out);

/* Commands. Each returns the process exit code (0 ok, 1 failed check,
   2 invalid input); *output and *error receive newly allocated strings. */
FB_API int fb_cmd_euler_rep(const char* rep_file, const fb_config* config, char** output,
                            char** error);
FB_API int fb_cmd_euler_vertices(const char* vertex_file, const fb_config* config,
                                 char** output, char** error);
FB_API int fb_cmd_fuchsian(int genus, const char* out_file, const fb_config* config,
                           char** output, char** error);
FB_API int fb_cmd_sullivan(const char* corners_file, const fb_config* config, char** output,
                           char** error);
FB_API int fb_cmd_escher(int genus, const fb_config* config, char** output, char** error);
FB_API int fb_cmd_cover(const char* rep_file, const fb_config* config, char** output,
                        char** error);
FB_API int fb_cmd_prove_mw(int genus, const fb_config* config, char** output, char** error);

#ifdef __cplusplus
}
#endif

#endif
