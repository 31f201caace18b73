#ifndef TVB_TVB_H
#define TVB_TVB_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define TVB_API __attribute__((visibility("default")))
#else
#define TVB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvb_status {
  TVB_OK = 0,
  TVB_INVALID_ARGUMENT = 1,
  TVB_PARSE = 2,
  TVB_VALIDATION = 3,
  TVB_OUT_OF_SCOPE = 4,
  TVB_FIELD_MISMATCH = 5,
  TVB_UNSUPPORTED = 6,
  TVB_IO = 7,
  TVB_INTERNAL = 99
} tvb_status;

typedef enum tvb_format { TVB_FORMAT_TEXT = 0, TVB_FORMAT_JSON = 1 } tvb_format;

typedef struct tvb_options {
  tvb_format format;
  uint64_t seed;
  uint32_t budget;
  int has_characteristic; /* nonzero: characteristic overrides/must match the input */
  uint64_t characteristic;
} tvb_options;

/* Defaults: text, seed 1, budget 5, characteristic taken from the input. */
TVB_API void tvb_options_init(tvb_options* opts);

/* Parsed fan or bundle file. */
typedef struct tvb_input tvb_input;

TVB_API tvb_status tvb_input_load(const char* path, const tvb_options* opts, tvb_input** out);
TVB_API tvb_status tvb_input_parse(const char* text, const tvb_options* opts, tvb_input** out);
TVB_API void tvb_input_free(tvb_input* in);

/* Every report function stores a heap string in *report (free it with
 * tvb_string_free). `has_errors` is set when the report lists validation
 * errors; verdicts never count. */
TVB_API tvb_status tvb_validate(const tvb_input* in, const tvb_options* opts, char** report, int* has_errors);
TVB_API tvb_status tvb_cox(const tvb_input* in, const tvb_options* opts, char** report);
TVB_API tvb_status tvb_mds(const tvb_input* in, const tvb_options* opts, char** report);
/* position: "general", "very-general", "collinear" or "on-rnc". */
TVB_API tvb_status tvb_mds_params(size_t rank, size_t points, const char* position,
                                  const tvb_options* opts, char** report);
TVB_API tvb_status tvb_effcone(const tvb_input* in, const tvb_options* opts, char** report);
TVB_API tvb_status tvb_orbit_class(const tvb_input* in, const char* form, const tvb_options* opts,
                                   char** report);

/* dim/rank of 0 select the example's default; fan_path may be NULL. */
TVB_API tvb_status tvb_example(const char* name, size_t dim, size_t rank, const char* fan_path,
                               const tvb_options* opts, char** report, int* has_errors);

/* Input re-serialized as a bundle (or fan) file. */
TVB_API tvb_status tvb_input_to_json(const tvb_input* in, char** out);

TVB_API void tvb_string_free(char* s);
/* Message of the last failure on this thread; empty after success. */
TVB_API const char* tvb_last_error(void);
TVB_API const char* tvb_status_name(tvb_status status);

#ifdef __cplusplus
}
#endif

#endif
