// Command-line front end over the C API.
#include "gradval/gradval.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#ifndef GRADVAL_SCENARIO_DIR
#define GRADVAL_SCENARIO_DIR "scenarios"
#endif

namespace fs = std::filesystem;

namespace {

struct Args {
  std::string input;
  std::string in;
  std::string scenario;
  std::string out;
  std::string replay;
  std::optional<std::int64_t> box_bound;
  std::optional<std::uint64_t> seed;
  bool json_only = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream &is) {
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string read_file(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  if (!f)
    throw InputError("cannot read " + p.string());
  return slurp(f);
}

// Scenario names resolve against the working directory first, then the
// bundled corpus.
fs::path resolve_scenario(const std::string &name) {
  for (fs::path p : {fs::path(name), fs::path(GRADVAL_SCENARIO_DIR) / name,
                     fs::path(GRADVAL_SCENARIO_DIR) / (name + ".json")})
    if (fs::is_regular_file(p))
      return p;
  throw InputError("no scenario named " + name);
}

std::string read_input(const Args &a) {
  int sources = !a.input.empty() + !a.in.empty() + !a.scenario.empty();
  if (sources > 1)
    throw InputError("give at most one of FILE, --in, --scenario");
  if (!a.scenario.empty())
    return read_file(resolve_scenario(a.scenario));
  const std::string &path = !a.in.empty() ? a.in : a.input;
  if (path.empty() || path == "-")
    return slurp(std::cin);
  return read_file(path);
}

int run(const std::string &command, const Args &a) {
  std::string input, replay;
  try {
    if (!a.replay.empty())
      replay = read_file(a.replay);
    else
      input = read_input(a);
  } catch (const InputError &e) {
    std::cerr << "gradval: " << e.what() << '\n';
    return 2;
  }

  gv_options opts{};
  if (a.box_bound) {
    opts.has_box_bound = 1;
    opts.box_bound = *a.box_bound;
  }
  if (a.seed) {
    opts.has_seed = 1;
    opts.seed = *a.seed;
  }
  if (!a.replay.empty()) {
    opts.replay = replay.data();
    opts.replay_len = replay.size();
  }

  gv_result *res = nullptr;
  gv_status st = gv_run(command.c_str(), input.data(), input.size(), &opts, &res);
  if (st != GV_OK) {
    std::cerr << "gradval: " << gv_status_name(st) << ": " << gv_last_error() << '\n';
    return 2;
  }
  int code = gv_result_exit_code(res);
  std::string_view json(gv_result_json(res), gv_result_json_len(res));
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    f << json;
    if (!f) {
      std::cerr << "gradval: cannot write " << a.out << '\n';
      code = 2;
    }
  } else {
    std::cout << json;
  }
  if (!a.json_only)
    std::cerr << gv_result_summary(res);
  gv_result_free(res);
  return code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact lattice, monomialization and graded-decomposition toolkit"};
  app.set_version_flag("--version", gv_version());
  app.require_subcommand(1);

  Args args;
  std::string chosen;
  for (const char *const *name = gv_commands(); *name; ++name) {
    auto *sub = app.add_subcommand(*name, std::string("run the ") + *name + " command");
    sub->add_option("file", args.input, "input JSON file ('-' for standard input)");
    sub->add_option("--in", args.in, "input JSON file");
    sub->add_option("--scenario", args.scenario, "scenario file or bundled scenario name");
    sub->add_option("--out", args.out, "write the JSON report here instead of standard output");
    sub->add_option("--replay", args.replay, "re-verify a monomialization trace file");
    sub->add_option("--box-bound", args.box_bound, "edge of the decomposition check box")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", args.seed, "seed for generator scenarios");
    sub->add_flag("--json", args.json_only, "suppress the summary on standard error");
    sub->callback([&chosen, sub] { chosen = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  return run(chosen, args);
}
