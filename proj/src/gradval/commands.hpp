#pragma once

#include "gradval/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradval {

struct CommandOptions {
  std::optional<Int> box_bound;
  std::optional<std::uint64_t> seed;
  // Contents of a trace file to re-verify instead of running the command.
  std::optional<std::string> replay;
};

/// Outcome of one subcommand. exit_code: 0 success, 1 failed check or
/// module error, 2 usage or parse error. error_code is the numeric module
/// code of the first error (0 when none).
struct CommandResult {
  int exit_code = 0;
  int error_code = 0;
  std::string json;
  std::string summary;
};

const std::vector<std::string> &command_names();

/// Never throws; every failure becomes a report.
CommandResult run_command(std::string_view command, std::string_view input,
                          const CommandOptions &options = {});

std::string sha256_hex(std::string_view bytes);

/// Largest box edge used by default in decomposition checks of dimension n.
Int capped_box_bound(const Int &requested, std::size_t n);

} // namespace gradval
