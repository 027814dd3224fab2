#include "sweep.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

namespace kzcli {
namespace {

struct Job {
  CommandSpec spec;
  std::string error;  // set when the entry could not be normalized
};

CommandSpec parse_entry(const json& j) {
  if (!j.is_object()) throw CliError(2, "grid entries must be objects");
  CommandSpec s;
  if (!j.contains("command") || !j["command"].is_string()) throw CliError(2, "grid entry without a command");
  s.command = j["command"].get<std::string>();
  if (j.contains("params")) s.params = j["params"];
  if (j.contains("char")) {
    if (!j["char"].is_number_unsigned()) throw CliError(2, "grid entry 'char' must be a nonnegative integer");
    s.field_char = j["char"].get<std::uint32_t>();
  }
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_unsigned()) throw CliError(2, "grid entry 'seed' must be a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  return s;
}

std::set<std::string> existing_keys(const std::string& out_path) {
  std::set<std::string> keys;
  std::ifstream in(out_path);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    try {
      keys.insert(record_key(record_from_json(json::parse(line))));
    } catch (const std::exception& e) {
      throw CliError(2, out_path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return keys;
}

ResultRecord failed_record(const CommandSpec& s, const std::string& message) {
  ResultRecord r;
  r.command = s.command;
  r.params = s.params;
  r.field_char = s.field_char;
  r.seed = s.seed;
  r.flags = {"failed", "error:" + message};
  return r;
}

}  // namespace

SweepSummary run_sweep(const std::string& grid_path, const std::string& out_path, const ExecOptions& opts) {
  std::ifstream gin(grid_path);
  if (!gin) throw CliError(2, "cannot open grid file " + grid_path);
  json grid;
  try {
    grid = json::parse(gin);
  } catch (const json::exception& e) {
    throw CliError(2, "grid file " + grid_path + ": " + e.what());
  }
  if (!grid.is_array()) throw CliError(2, "grid file must hold a JSON list");

  std::map<std::string, Job> jobs;
  for (const json& entry : grid) {
    Job job{parse_entry(entry), {}};
    try {
      job.spec = normalize(job.spec);
    } catch (const CliError& e) {
      job.error = e.what();
    }
    jobs.emplace(record_key(job.spec.command, job.spec.params, job.spec.field_char, job.spec.seed), std::move(job));
  }

  SweepSummary summary;
  summary.cells = jobs.size();
  const std::set<std::string> done = existing_keys(out_path);
  std::vector<const Job*> pending;
  for (const auto& [key, job] : jobs) {
    if (done.count(key))
      ++summary.cached;
    else
      pending.push_back(&job);
  }

  std::ofstream out(out_path, std::ios::app);
  if (!out) throw CliError(2, "cannot open " + out_path);

  std::vector<std::string> lines(pending.size());
  std::vector<bool> ready(pending.size(), false);
  std::vector<bool> failed(pending.size(), false);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  const ExecOptions inner{opts.budget, 1};

  const auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pending.size();) {
      const Job& job = *pending[k];
      ResultRecord r;
      bool bad = !job.error.empty();
      if (bad) {
        r = failed_record(job.spec, job.error);
      } else {
        try {
          r = execute(job.spec, inner);
        } catch (const std::exception& e) {
          r = failed_record(job.spec, e.what());
          bad = true;
        }
      }
      std::lock_guard lock(mu);
      lines[k] = to_jsonl(r);
      failed[k] = bad;
      ready[k] = true;
      cv.notify_all();
    }
  };

  const unsigned t = std::max(1u, opts.threads);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < t && k < pending.size(); ++k) pool.emplace_back(work);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return ready[k]; });
    out << lines[k];
    out.flush();
    ++summary.computed;
    if (failed[k]) ++summary.failed;
  }
  for (auto& th : pool) th.join();
  return summary;
}

}  // namespace kzcli
