#include "commands.hpp"

#include <koszul/koszul.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <memory>
#include <set>
#include <thread>
#include <vector>

namespace kzcli {
namespace {

void check(kz_status s) {
  switch (s) {
    case KZ_OK: return;
    case KZ_INPUT_ERROR:
    case KZ_RANGE_ERROR:
    case KZ_NULL_ARGUMENT:
    case KZ_BUDGET_EXCEEDED: throw CliError(2, std::string(kz_status_name(s)) + ": " + kz_last_error());
    default: throw CliError(1, std::string(kz_status_name(s)) + ": " + kz_last_error());
  }
}

struct InstanceDeleter {
  void operator()(kz_instance* p) const { kz_instance_free(p); }
};
struct CarpetDeleter {
  void operator()(kz_carpet* p) const { kz_carpet_free(p); }
};
using InstancePtr = std::unique_ptr<kz_instance, InstanceDeleter>;
using CarpetPtr = std::unique_ptr<kz_carpet, CarpetDeleter>;

InstancePtr load_instance(const std::string& path) {
  kz_instance* p = nullptr;
  check(kz_instance_load(path.c_str(), &p));
  return InstancePtr(p);
}

kz_instance_info info_of(const kz_instance* inst) {
  kz_instance_info info;
  check(kz_instance_get_info(inst, &info));
  return info;
}

/// Evaluates fn(0..n-1) on up to `threads` threads; the first error by index
/// is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      try {
        out[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < t; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

long long get_int(const json& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end()) throw CliError(2, std::string("missing parameter '") + key + "'");
  if (!it->is_number_integer()) throw CliError(2, std::string("parameter '") + key + "' must be an integer");
  return it->get<long long>();
}

int get_small(const json& params, const char* key) {
  const long long v = get_int(params, key);
  if (v < -1'000'000 || v > 1'000'000) throw CliError(2, std::string("parameter '") + key + "' out of range");
  return static_cast<int>(v);
}

std::size_t get_size(const json& params, const char* key) {
  const long long v = get_int(params, key);
  if (v < 0) throw CliError(2, std::string("parameter '") + key + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

void set_default(json& params, const char* key, const json& value) {
  if (!params.contains(key)) params[key] = value;
}

void allow_only(const json& params, std::initializer_list<const char*> keys) {
  if (!params.is_object()) throw CliError(2, "params must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : params.items())
    if (!allowed.count(k)) throw CliError(2, "unknown parameter '" + k + "'");
}

/// Instance given either by a K-file or by (n1, n2, m) and a seed.
void normalize_instance_params(CommandSpec& s, std::initializer_list<const char*> extra_keys) {
  std::vector<const char*> keys(extra_keys);
  for (const char* k : {"n1", "n2", "m"}) keys.push_back(k);
  const bool from_file = s.params.contains("k_file");
  if (from_file) keys.push_back("k_file");
  for (const auto& [k, v] : s.params.items())
    if (std::find_if(keys.begin(), keys.end(), [&](const char* a) { return k == a; }) == keys.end())
      throw CliError(2, "unknown parameter '" + k + "'");
  if (from_file) {
    if (!s.params["k_file"].is_string()) throw CliError(2, "parameter 'k_file' must be a path");
    if (s.seed) throw CliError(2, "a seed cannot be combined with a K-file");
    const kz_instance_info info = info_of(load_instance(s.params["k_file"].get<std::string>()).get());
    if (s.field_char != 0 && s.field_char != info.characteristic)
      throw CliError(2, "characteristic differs from the K-file");
    s.field_char = info.characteristic;
    for (const auto& [k, v] : {std::pair{"n1", info.n1}, std::pair{"n2", info.n2}, std::pair{"m", info.m}}) {
      if (s.params.contains(k) && get_int(s.params, k) != static_cast<long long>(v))
        throw CliError(2, std::string("parameter '") + k + "' differs from the K-file");
      s.params[k] = v;
    }
    return;
  }
  const std::size_t n1 = get_size(s.params, "n1"), n2 = get_size(s.params, "n2");
  set_default(s.params, "m", 2 * (n1 + n2) >= 4 ? 2 * (n1 + n2) - 4 : 0);
  get_size(s.params, "m");
  if (!s.seed) s.seed = 1;
}

InstancePtr make_instance(const CommandSpec& s) {
  if (s.params.contains("k_file")) return load_instance(s.params["k_file"].get<std::string>());
  kz_instance* p = nullptr;
  check(kz_instance_random(get_size(s.params, "n1"), get_size(s.params, "n2"), get_size(s.params, "m"), s.field_char,
                           *s.seed, &p));
  return InstancePtr(p);
}

std::string cell_tag(int d, int e) { return "(" + std::to_string(d) + "," + std::to_string(e) + ")"; }

void run_w_dim(const CommandSpec& s, const ExecOptions& opts, ResultRecord& r) {
  const InstancePtr inst = make_instance(s);
  const kz_instance_info info = info_of(inst.get());
  const int dmax = get_small(s.params, "dmax"), emax = get_small(s.params, "emax");
  std::vector<std::pair<int, int>> cells;
  for (int d = 0; d <= dmax; ++d)
    for (int e = 0; e <= emax; ++e) cells.emplace_back(d, e);
  const auto dims = parallel_map<kz_cell>(cells.size(), opts.threads, [&](std::size_t k) {
    kz_cell c;
    check(kz_w_dim(inst.get(), cells[k].first, cells[k].second, &c));
    return c;
  });
  if (info.redraws > 0) r.flags.push_back("redraws:" + std::to_string(info.redraws));
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto [d, e] = cells[k];
    r.cells.push_back(Cell{std::nullopt, d, e, dims[k].w_dim});
    if (d > static_cast<int>(info.n2) - 2 || e > static_cast<int>(info.n1) - 2) continue;
    kz_closed_form cf;
    check(kz_closed_form_chi(info.n1, info.n2, d, e, &cf));
    if (cf.anomaly) r.flags.push_back("FormulaAnomaly" + cell_tag(d, e));
  }
}

void run_weyman(const CommandSpec& s, const ExecOptions& opts, ResultRecord& r) {
  const int u = get_small(s.params, "u"), v = get_small(s.params, "v");
  kz_instance* p = nullptr;
  check(kz_instance_weyman(u, v, s.field_char, &p));
  const InstancePtr inst(p);
  int applies = 0;
  check(kz_weyman_theorem_applies(u, v, s.field_char, &applies));
  const int dmax = get_small(s.params, "dmax"), emax = get_small(s.params, "emax");
  std::vector<std::pair<int, int>> cells;
  for (int d = 0; d <= dmax; ++d)
    for (int e = 0; e <= emax; ++e) cells.emplace_back(d, e);
  const auto dims = parallel_map<std::size_t>(cells.size(), opts.threads, [&](std::size_t k) {
    kz_cell c;
    check(kz_w_dim(inst.get(), cells[k].first, cells[k].second, &c));
    return c.w_dim;
  });
  if (applies) r.flags.push_back("vanishing_theorem_applies");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto [d, e] = cells[k];
    r.cells.push_back(Cell{std::nullopt, d, e, dims[k]});
    if (applies && d >= v && e >= u && dims[k] != 0) r.flags.push_back("VanishingViolation" + cell_tag(d, e));
  }
}

void run_carpet(const CommandSpec& s, const ExecOptions& opts, ResultRecord& r) {
  const int a = get_small(s.params, "a"), b = get_small(s.params, "b"), imax = get_small(s.params, "imax");
  const bool bigraded = s.params["bigraded"].get<bool>();
  kz_carpet* p = nullptr;
  check(kz_carpet_new(a, b, s.field_char, &p));
  const CarpetPtr carpet(p);
  if (imax < 1 || imax > a + b - 1) throw CliError(2, "imax must lie in 1..a+b-1");
  std::vector<Cell> cells;
  for (int i = 1; i <= imax; ++i)
    for (int j = i + 1; j <= i + 2; ++j) {
      if (!bigraded) {
        cells.push_back(Cell{i, j, std::nullopt, 0});
        continue;
      }
      for (int d = 0; d <= j; ++d) cells.push_back(Cell{i, d, j - d, 0});
    }
  const auto dims = parallel_map<std::size_t>(cells.size(), opts.threads, [&](std::size_t k) {
    std::size_t v = 0;
    const Cell& c = cells[k];
    if (c.e)
      check(kz_carpet_tor_A(carpet.get(), *c.i, c.d, *c.e, &v));
    else
      check(kz_carpet_tor_A_total(carpet.get(), *c.i, c.d, &v));
    return v;
  });
  for (std::size_t k = 0; k < cells.size(); ++k) cells[k].dim = dims[k];
  r.cells = std::move(cells);
}

void run_hilbert(const CommandSpec& s, ResultRecord& r) {
  const int a = get_small(s.params, "a"), b = get_small(s.params, "b"), nmax = get_small(s.params, "nmax");
  if (nmax < 0) throw CliError(2, "nmax must be nonnegative");
  std::vector<std::uint64_t> dims(static_cast<std::size_t>(nmax) + 1);
  std::vector<long long> num(dims.size());
  check(kz_hilbert_A(a, b, nmax, dims.data(), num.data()));
  std::string numerator = "numerator:";
  for (int n = 0; n <= nmax; ++n) {
    r.cells.push_back(Cell{std::nullopt, n, std::nullopt, dims[static_cast<std::size_t>(n)]});
    numerator += (n ? "," : "") + std::to_string(num[static_cast<std::size_t>(n)]);
  }
  r.flags.push_back(numerator);
}

void run_secant(const CommandSpec& s, const ExecOptions& opts, ResultRecord& r) {
  const InstancePtr inst = make_instance(s);
  kz_secant res;
  check(kz_secant_condition(inst.get(), opts.budget, &res));
  r.flags.push_back(res.holds ? "secant_condition:true" : "secant_condition:false");
  r.flags.push_back(res.enumerated ? "method:enumeration" : "method:dimension");
  if (res.has_min_rank) r.flags.push_back("min_rank:" + std::to_string(res.min_rank));
}

}  // namespace

CommandSpec normalize(const CommandSpec& spec) {
  CommandSpec s = spec;
  if (s.params.is_null()) s.params = json::object();
  if (!s.params.is_object()) throw CliError(2, "params must be an object");
  if (s.command == "w-dim") {
    normalize_instance_params(s, {"dmax", "emax"});
    set_default(s.params, "dmax", static_cast<long long>(get_size(s.params, "n2")) - 2);
    set_default(s.params, "emax", static_cast<long long>(get_size(s.params, "n1")) - 2);
    get_small(s.params, "dmax");
    get_small(s.params, "emax");
  } else if (s.command == "secant") {
    normalize_instance_params(s, {});
  } else if (s.command == "weyman") {
    allow_only(s.params, {"u", "v", "dmax", "emax"});
    set_default(s.params, "dmax", get_small(s.params, "v") + 2);
    set_default(s.params, "emax", get_small(s.params, "u") + 2);
    get_small(s.params, "dmax");
    get_small(s.params, "emax");
    s.seed.reset();
  } else if (s.command == "carpet") {
    allow_only(s.params, {"a", "b", "imax", "bigraded"});
    set_default(s.params, "imax", get_small(s.params, "a") + get_small(s.params, "b") - 1);
    set_default(s.params, "bigraded", false);
    get_small(s.params, "imax");
    if (!s.params["bigraded"].is_boolean()) throw CliError(2, "parameter 'bigraded' must be a boolean");
    s.seed.reset();
  } else if (s.command == "hilbert") {
    allow_only(s.params, {"a", "b", "nmax"});
    set_default(s.params, "nmax", 6);
    get_small(s.params, "a");
    get_small(s.params, "b");
    get_small(s.params, "nmax");
    if (s.field_char != 0) throw CliError(2, "hilbert is computed in characteristic 0");
    s.seed.reset();
  } else {
    throw CliError(2, "unknown command '" + s.command + "'");
  }
  return s;
}

ResultRecord execute(const CommandSpec& s, const ExecOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  r.command = s.command;
  r.params = s.params;
  r.field_char = s.field_char;
  r.seed = s.seed;
  if (s.command == "w-dim")
    run_w_dim(s, opts, r);
  else if (s.command == "weyman")
    run_weyman(s, opts, r);
  else if (s.command == "carpet")
    run_carpet(s, opts, r);
  else if (s.command == "hilbert")
    run_hilbert(s, r);
  else if (s.command == "secant")
    run_secant(s, opts, r);
  else
    throw CliError(2, "unknown command '" + s.command + "'");
  r.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return r;
}

}  // namespace kzcli
