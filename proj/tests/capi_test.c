/* Exercises the C API from plain C. */
#include "gradval/gradval.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                          \
  do {                                                                        \
    if (!(cond)) {                                                            \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, __LINE__, \
              #cond);                                                         \
      ++failures;                                                             \
    }                                                                         \
  } while (0)

static void run_commands(void) {
  const char *snf_in = "{\"matrix\": [[\"2\", \"4\"], [\"6\", \"8\"]]}";
  gv_result *res = NULL;
  EXPECT(gv_run("snf", snf_in, strlen(snf_in), NULL, &res) == GV_OK);
  EXPECT(gv_result_exit_code(res) == 0);
  EXPECT(gv_result_status(res) == GV_OK);
  EXPECT(strstr(gv_result_json(res), "\"diagonal\"") != NULL);
  EXPECT(strstr(gv_result_json(res), "\"input_sha256\"") != NULL);
  EXPECT(gv_result_json_len(res) == strlen(gv_result_json(res)));
  gv_result_free(res);

  const char *bad = "{\"matrix\": [[1, 2]";
  EXPECT(gv_run("snf", bad, strlen(bad), NULL, &res) == GV_OK);
  EXPECT(gv_result_exit_code(res) == 2);
  EXPECT(gv_result_status(res) == GV_ERR_PARSE_ERROR);
  EXPECT(strstr(gv_result_json(res), "parse error at byte") != NULL);
  gv_result_free(res);

  /* Unknown records fail as module errors with a path. */
  const char *ledger = "{\"records\": [{\"N\": \"7\", \"e\": \"2\", \"f\": \"3\", \"p\": \"0\"}]}";
  EXPECT(gv_run("ledger", ledger, strlen(ledger), NULL, &res) == GV_OK);
  EXPECT(gv_result_exit_code(res) == 1);
  EXPECT(gv_result_status(res) == GV_ERR_INVALID_RECORD);
  EXPECT(strstr(gv_result_json(res), "/records/0") != NULL);
  gv_result_free(res);

  EXPECT(gv_run("nonsense", "", 0, NULL, &res) == GV_ERR_UNKNOWN_COMMAND);
  EXPECT(res == NULL);
  EXPECT(strlen(gv_last_error()) > 0);
  EXPECT(gv_run(NULL, "", 0, NULL, &res) == GV_ERR_NULL_ARGUMENT);
}

static void round_trip(void) {
  const char *ext =
      "{\"blocks\": {\"r\": 2, \"t\": [2, 1], \"s\": [1, 1]},"
      " \"A\": [[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"1\"],[\"0\",\"0\",\"2\"]],"
      " \"y_values\": [[\"1\",\"0\"],[\"2\",\"1\"],[\"0\",\"1\"]]}";
  gv_result *mono = NULL, *replay = NULL;
  EXPECT(gv_run("monomialize", ext, strlen(ext), NULL, &mono) == GV_OK);
  EXPECT(gv_result_exit_code(mono) == 0);

  gv_options opts;
  memset(&opts, 0, sizeof opts);
  opts.replay = gv_result_json(mono);
  opts.replay_len = gv_result_json_len(mono);
  EXPECT(gv_run("pipeline", NULL, 0, &opts, &replay) == GV_OK);
  EXPECT(gv_result_exit_code(replay) == 0);
  gv_result_free(replay);
  gv_result_free(mono);
}

static void matrices(void) {
  const char *text = "[[\"2\", \"0\"], [\"0\", \"3\"]]";
  gv_matrix *m = NULL;
  char *s = NULL;
  EXPECT(gv_matrix_from_json(text, strlen(text), &m) == GV_OK);
  EXPECT(gv_matrix_rows(m) == 2 && gv_matrix_cols(m) == 2);
  EXPECT(gv_matrix_lattice_index(m, &s) == GV_OK);
  EXPECT(s && strcmp(s, "6") == 0);
  gv_string_free(s);
  EXPECT(gv_matrix_smith_json(m, &s) == GV_OK);
  EXPECT(s && strstr(s, "\"diagonal\":[\"1\",\"6\"]") != NULL);
  gv_string_free(s);
  gv_matrix_free(m);

  const char *singular = "[[\"1\", \"2\"], [\"2\", \"4\"]]";
  EXPECT(gv_matrix_from_json(singular, strlen(singular), &m) == GV_OK);
  EXPECT(gv_matrix_lattice_index(m, &s) == GV_ERR_SINGULAR_LATTICE);
  EXPECT(s == NULL);
  EXPECT(strcmp(gv_status_name(GV_ERR_SINGULAR_LATTICE), "SingularLattice") == 0);
  gv_matrix_free(m);

  EXPECT(gv_matrix_from_json("[[1, 2], [3]]", 13, &m) == GV_ERR_SCHEMA_ERROR);
  EXPECT(m == NULL);
}

int main(void) {
  const char *const *names = gv_commands();
  int count = 0;
  while (names[count])
    ++count;
  EXPECT(count == 7);
  run_commands();
  round_trip();
  matrices();
  if (failures)
    fprintf(stderr, "%d expectation(s) failed\n", failures);
  else
    printf("capi_test: all expectations met\n");
  return failures ? 1 : 0;
}
