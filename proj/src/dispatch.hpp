#pragma once

// Command dispatcher shared by the C API and the CLI: spec JSON in, report
// JSON out. Reports are deterministic for fixed (input, seed, tolerances).

#include <string>
#include <vector>

#include "json_io.hpp"

namespace opdf {

struct RunOptions {
  std::optional<int> n;
  std::optional<int> level;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;  // overrides psd_tol and contraction_tol
};

RunOptions options_from_json(const std::string& options_json);

struct RunResult {
  int status = 0;  // 0 ok; 1 internal; 2 parse; 3 validation; 4 consistency
  std::string verdict;
  std::string report_json;  // always populated, carries the error on failure
};

const std::vector<std::string>& command_list();

RunResult run_command(const std::string& command, const std::string& spec_json,
                      const RunOptions& options);

}  // namespace opdf
