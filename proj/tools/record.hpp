#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace kzcli {

using json = nlohmann::json;

struct Cell {
  std::optional<int> i;
  int d = 0;
  std::optional<int> e;
  std::uint64_t dim = 0;
};

/// One line of output. Keys are serialized in sorted order, so records with
/// equal content are byte-identical.
struct ResultRecord {
  static constexpr int kSchemaVersion = 1;

  std::string command;
  json params = json::object();
  std::uint32_t field_char = 0;
  std::vector<Cell> cells;
  std::vector<std::string> flags;
  std::uint64_t elapsed_ms = 0;
  std::optional<std::uint64_t> seed;
};

json to_json(const ResultRecord& r);
/// Throws std::invalid_argument on a malformed or wrong-version record.
ResultRecord record_from_json(const json& j);

/// Identity of a computation: (command, params, field_char, seed).
std::string record_key(const std::string& command, const json& params, std::uint32_t field_char,
                       const std::optional<std::uint64_t>& seed);
inline std::string record_key(const ResultRecord& r) {
  return record_key(r.command, r.params, r.field_char, r.seed);
}

std::string to_jsonl(const ResultRecord& r);
std::string csv_header();
/// One row per cell; a record without cells gives one row with empty cell fields.
std::string to_csv_rows(const ResultRecord& r);

}  // namespace kzcli
