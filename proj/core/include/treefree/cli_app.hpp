#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace treefree {

// Run configuration shared by every subcommand.
struct RunConfig {
  bool exact = true;
  double epsilon = 1e-9;
  unsigned threads = 1;
  bool json = false;
  std::uint64_t seed = 0;
  bool verify = false;
  bool merge_duplicates = false;
  std::optional<std::string> base_label;
};

// The command line tool, callable in-process. `args` excludes the program
// name. Exit codes: 0 affirmative, 1 negative result or violation,
// 2 malformed input. Output is byte-deterministic for a given argument
// vector and input files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treefree
