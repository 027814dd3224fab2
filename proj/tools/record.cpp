#include "record.hpp"

#include <sstream>
#include <stdexcept>

namespace kzcli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

json to_json(const ResultRecord& r) {
  json cells = json::array();
  for (const Cell& c : r.cells) {
    cells.push_back({{"i", c.i ? json(*c.i) : json(nullptr)},
                     {"d", c.d},
                     {"e", c.e ? json(*c.e) : json(nullptr)},
                     {"dim", c.dim}});
  }
  return {{"schema_version", ResultRecord::kSchemaVersion},
          {"command", r.command},
          {"params", r.params},
          {"field_char", r.field_char},
          {"cells", cells},
          {"flags", r.flags},
          {"elapsed_ms", r.elapsed_ms},
          {"seed", r.seed ? json(*r.seed) : json(nullptr)}};
}

ResultRecord record_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != ResultRecord::kSchemaVersion)
      throw std::invalid_argument("unsupported schema_version");
    ResultRecord r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.field_char = j.at("field_char").get<std::uint32_t>();
    for (const json& c : j.at("cells")) {
      Cell cell;
      if (!c.at("i").is_null()) cell.i = c.at("i").get<int>();
      cell.d = c.at("d").get<int>();
      if (!c.at("e").is_null()) cell.e = c.at("e").get<int>();
      cell.dim = c.at("dim").get<std::uint64_t>();
      r.cells.push_back(cell);
    }
    r.flags = j.at("flags").get<std::vector<std::string>>();
    r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

std::string record_key(const std::string& command, const json& params, std::uint32_t field_char,
                       const std::optional<std::uint64_t>& seed) {
  return json{command, params, field_char, seed ? json(*seed) : json(nullptr)}.dump();
}

std::string to_jsonl(const ResultRecord& r) { return to_json(r).dump() + "\n"; }

std::string csv_header() { return "command,params,field_char,seed,i,d,e,dim,flags\n"; }

std::string to_csv_rows(const ResultRecord& r) {
  std::ostringstream flags;
  for (std::size_t k = 0; k < r.flags.size(); ++k) flags << (k ? ";" : "") << r.flags[k];
  const std::string prefix = csv_field(r.command) + "," + csv_field(r.params.dump()) + "," +
                             std::to_string(r.field_char) + "," + opt_str(r.seed) + ",";
  const std::string suffix = "," + csv_field(flags.str()) + "\n";
  if (r.cells.empty()) return prefix + ",,," + suffix;
  std::string out;
  for (const Cell& c : r.cells)
    out += prefix + opt_str(c.i) + "," + std::to_string(c.d) + "," + opt_str(c.e) + "," + std::to_string(c.dim) +
           suffix;
  return out;
}

}  // namespace kzcli
