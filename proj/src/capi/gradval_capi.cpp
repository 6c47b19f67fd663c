#include "gradval/gradval.h"

#include "gradval/commands.hpp"
#include "gradval/error.hpp"
#include "gradval/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

struct gv_result {
  gradval::CommandResult r;
};

struct gv_matrix {
  gradval::ExactMatrix m;
};

namespace {

thread_local std::string last_error;

gv_status record(gv_status s, const std::string &message) {
  last_error = message;
  return s;
}

gv_status from_error(const gradval::Error &e) {
  return record(static_cast<gv_status>(static_cast<int>(e.code())), e.what());
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out)
    std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into status codes.
template <typename F> gv_status guarded(F &&fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const gradval::Error &e) {
    return from_error(e);
  } catch (const std::bad_alloc &) {
    return record(GV_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception &e) {
    return record(GV_ERR_INTERNAL, e.what());
  }
}

} // namespace

extern "C" {

const char *gv_version(void) { return "1.0.0"; }

const char *gv_status_name(gv_status status) {
  switch (status) {
  case GV_OK:
    return "Ok";
  case GV_ERR_NULL_ARGUMENT:
    return "NullArgument";
  case GV_ERR_UNKNOWN_COMMAND:
    return "UnknownCommand";
  case GV_ERR_OUT_OF_MEMORY:
    return "OutOfMemory";
  case GV_ERR_INTERNAL:
    return "Internal";
  default:
    break;
  }
  const int code = static_cast<int>(status);
  if (code >= static_cast<int>(GV_ERR_SINGULAR_LATTICE) &&
      code <= static_cast<int>(GV_ERR_REPLAY_MISMATCH))
    return gradval::code_name(static_cast<gradval::ErrorCode>(code)).data();
  return "Unknown";
}

const char *gv_last_error(void) { return last_error.c_str(); }

const char *const *gv_commands(void) {
  static const std::vector<const char *> names = [] {
    std::vector<const char *> out;
    for (const auto &n : gradval::command_names())
      out.push_back(n.c_str());
    out.push_back(nullptr);
    return out;
  }();
  return names.data();
}

gv_status gv_run(const char *command, const char *input, size_t input_len,
                 const gv_options *options, gv_result **out) {
  if (!command || !out || (!input && input_len > 0))
    return record(GV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto &names = gradval::command_names();
    if (std::find(names.begin(), names.end(), command) == names.end())
      return record(GV_ERR_UNKNOWN_COMMAND, std::string("unknown command ") + command);
    gradval::CommandOptions opts;
    if (options) {
      if (options->has_box_bound)
        opts.box_bound = gradval::Int(std::to_string(options->box_bound));
      if (options->has_seed)
        opts.seed = options->seed;
      if (options->replay)
        opts.replay = std::string(options->replay, options->replay_len);
    }
    auto *res = new gv_result{gradval::run_command(
        command, std::string_view(input ? input : "", input_len), opts)};
    *out = res;
    return GV_OK;
  });
}

int gv_result_exit_code(const gv_result *result) { return result ? result->r.exit_code : 2; }

gv_status gv_result_status(const gv_result *result) {
  return result ? static_cast<gv_status>(result->r.error_code) : GV_ERR_NULL_ARGUMENT;
}

const char *gv_result_json(const gv_result *result) {
  return result ? result->r.json.c_str() : "";
}

size_t gv_result_json_len(const gv_result *result) { return result ? result->r.json.size() : 0; }

const char *gv_result_summary(const gv_result *result) {
  return result ? result->r.summary.c_str() : "";
}

void gv_result_free(gv_result *result) { delete result; }

gv_status gv_matrix_from_json(const char *json, size_t len, gv_matrix **out) {
  if (!json || !out)
    return record(GV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = gradval::io::matrix_from(gradval::io::parse(std::string_view(json, len)));
    *out = new gv_matrix{std::move(m)};
    return GV_OK;
  });
}

size_t gv_matrix_rows(const gv_matrix *m) { return m ? m->m.rows() : 0; }
size_t gv_matrix_cols(const gv_matrix *m) { return m ? m->m.cols() : 0; }

gv_status gv_matrix_lattice_index(const gv_matrix *m, char **out) {
  if (!m || !out)
    return record(GV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (!m->m.square())
      return record(GV_ERR_DIMENSION_MISMATCH, "matrix is not square");
    *out = copy_string(gradval::to_string(gradval::lattice_index(m->m)));
    return *out ? GV_OK : record(GV_ERR_OUT_OF_MEMORY, "out of memory");
  });
}

gv_status gv_matrix_smith_json(const gv_matrix *m, char **out) {
  if (!m || !out)
    return record(GV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto snf = gradval::smith_normal_form(m->m);
    gradval::io::json j = {{"U", gradval::io::to_json(snf.U)},
                           {"D", gradval::io::to_json(snf.D)},
                           {"V", gradval::io::to_json(snf.V)},
                           {"diagonal", gradval::io::to_json(snf.diagonal())}};
    *out = copy_string(j.dump());
    return *out ? GV_OK : record(GV_ERR_OUT_OF_MEMORY, "out of memory");
  });
}

void gv_matrix_free(gv_matrix *m) { delete m; }

void gv_string_free(char *s) { std::free(s); }

} // extern "C"
