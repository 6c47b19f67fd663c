#ifndef GRADVAL_H
#define GRADVAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GV_API __declspec(dllexport)
#else
#define GV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Module errors keep the numbering of the C++ core. */
typedef enum gv_status {
  GV_OK = 0,
  GV_ERR_NULL_ARGUMENT = 1,
  GV_ERR_UNKNOWN_COMMAND = 2,
  GV_ERR_OUT_OF_MEMORY = 3,
  GV_ERR_INTERNAL = 4,

  GV_ERR_SINGULAR_LATTICE = 10,
  GV_ERR_DIMENSION_MISMATCH,
  GV_ERR_AMBIENT_MISMATCH,
  GV_ERR_INFINITE_INDEX,
  GV_ERR_NOT_A_SUBGROUP,
  GV_ERR_NOT_IN_GROUP,
  GV_ERR_BOUND_TOO_SMALL,
  GV_ERR_DEPENDENT_GENERATORS,
  GV_ERR_NOT_POINTED,
  GV_ERR_INVALID_EXTENSION,
  GV_ERR_NON_POSITIVE_VALUE,
  GV_ERR_SINGULAR_BLOCK,
  GV_ERR_NOT_ALONG_VALUATION,
  GV_ERR_INDEX_ERROR,
  GV_ERR_NOT_TRIANGULAR_FORM,
  GV_ERR_NO_NONNEGATIVE_LIFT,
  GV_ERR_STEP_BOUND_EXCEEDED,
  GV_ERR_INDEX_HYPOTHESIS_FAILED,
  GV_ERR_QUOTIENT_HYPOTHESIS_FAILED,
  GV_ERR_ZERO_ELEMENT,
  GV_ERR_GRADING_VIOLATION,
  GV_ERR_NEGATIVE_QUERY,
  GV_ERR_NOT_A_SUBSEMIGROUP,
  GV_ERR_NON_POSITIVE_GENERATOR,
  GV_ERR_NON_INCREASING_TAIL,
  GV_ERR_INCONSISTENT,
  GV_ERR_CHAR_MISMATCH,
  GV_ERR_MISSING_INDEX,
  GV_ERR_INVALID_RECORD,
  GV_ERR_PARSE_ERROR,
  GV_ERR_SCHEMA_ERROR,
  GV_ERR_REPLAY_MISMATCH
} gv_status;

typedef struct gv_result gv_result;
typedef struct gv_matrix gv_matrix;

typedef struct gv_options {
  int has_box_bound;
  int64_t box_bound;
  int has_seed;
  uint64_t seed;
  /* Trace JSON to re-verify instead of running the command; may be NULL. */
  const char *replay;
  size_t replay_len;
} gv_options;

GV_API const char *gv_version(void);
GV_API const char *gv_status_name(gv_status status);
/* Message of the last failing call on this thread; "" when none. */
GV_API const char *gv_last_error(void);

/* Names of the subcommands, NULL-terminated. */
GV_API const char *const *gv_commands(void);

/*
 * Runs a subcommand on JSON input. Returns GV_OK whenever a report was
 * produced, including reports of failed checks; inspect the result's exit
 * code and status. options may be NULL.
 */
GV_API gv_status gv_run(const char *command, const char *input, size_t input_len,
                        const gv_options *options, gv_result **out);

/* 0 success, 1 failed check or module error, 2 usage or parse error. */
GV_API int gv_result_exit_code(const gv_result *result);
/* First module error of the run, GV_OK when none. */
GV_API gv_status gv_result_status(const gv_result *result);
GV_API const char *gv_result_json(const gv_result *result);
GV_API size_t gv_result_json_len(const gv_result *result);
GV_API const char *gv_result_summary(const gv_result *result);
GV_API void gv_result_free(gv_result *result);

/* Integer matrices given as JSON arrays of rows. */
GV_API gv_status gv_matrix_from_json(const char *json, size_t len, gv_matrix **out);
GV_API size_t gv_matrix_rows(const gv_matrix *m);
GV_API size_t gv_matrix_cols(const gv_matrix *m);
/* Decimal |det| of a square nonsingular matrix; free with gv_string_free. */
GV_API gv_status gv_matrix_lattice_index(const gv_matrix *m, char **out);
/* {"U","D","V","diagonal"}; free with gv_string_free. */
GV_API gv_status gv_matrix_smith_json(const gv_matrix *m, char **out);
GV_API void gv_matrix_free(gv_matrix *m);

GV_API void gv_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif
