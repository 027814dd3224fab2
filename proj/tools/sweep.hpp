#pragma once

#include <cstddef>
#include <string>

#include "commands.hpp"

namespace kzcli {

struct SweepSummary {
  std::size_t cells = 0;
  std::size_t computed = 0;
  std::size_t cached = 0;
  std::size_t failed = 0;
};

/// Runs every grid entry ({command, params, char, seed}) not yet present in
/// `out_path` and appends the new records in sorted key order. Failing
/// entries are written with a "failed" flag. Throws CliError for unreadable
/// grid or output files.
SweepSummary run_sweep(const std::string& grid_path, const std::string& out_path, const ExecOptions& opts);

}  // namespace kzcli
