#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "record.hpp"

namespace kzcli {

/// An error carrying the process exit code: 1 for internal invariant
/// failures, 2 for invalid input.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

/// A computation request, as given on the command line or in a grid file.
struct CommandSpec {
  std::string command;
  json params = json::object();
  std::uint32_t field_char = 0;
  std::optional<std::uint64_t> seed;
};

struct ExecOptions {
  std::uint64_t budget = 10'000'000;
  unsigned threads = 1;
};

/// Validates parameter names and fills in defaults, so that equal requests
/// have equal keys. Throws CliError.
CommandSpec normalize(const CommandSpec& spec);

/// Runs a normalized request. Throws CliError.
ResultRecord execute(const CommandSpec& spec, const ExecOptions& opts);

}  // namespace kzcli
