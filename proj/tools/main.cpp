#include <koszul/koszul.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "record.hpp"
#include "sweep.hpp"

using namespace kzcli;

namespace {

struct Globals {
  std::string format = "jsonl";
  std::string out;
  std::uint64_t budget = 10'000'000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

class Writer {
 public:
  explicit Writer(const Globals& g) : csv_(g.format == "csv") {
    if (g.out.empty()) return;
    const bool fresh = !std::filesystem::exists(g.out) || std::filesystem::file_size(g.out) == 0;
    file_.open(g.out, std::ios::app);
    if (!file_) throw CliError(2, "cannot open " + g.out);
    header_written_ = !fresh;
  }

  void write(const ResultRecord& r) {
    std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    if (csv_ && !header_written_) {
      os << csv_header();
      header_written_ = true;
    }
    os << (csv_ ? to_csv_rows(r) : to_jsonl(r));
    os.flush();
  }

 private:
  bool csv_;
  bool header_written_ = false;
  std::ofstream file_;
};

template <class T>
void put(json& params, const char* key, const std::optional<T>& v) {
  if (v) params[key] = *v;
}

int run_verify(const Globals& g, const std::optional<int>& only) {
  Writer w(g);
  const bool to_file = !g.out.empty();
  bool all = true;
  const int first = only.value_or(1), last = only.value_or(kz_acceptance_count());
  for (int id = first; id <= last; ++id) {
    kz_criterion* c = nullptr;
    if (kz_acceptance_run(id, g.budget, &c) != KZ_OK) throw CliError(2, kz_last_error());
    const bool passed = kz_criterion_passed(c);
    all = all && passed;
    std::printf("%s [%d] %s (%zu checks, %.1f s)\n", passed ? "PASS" : "FAIL", id, kz_criterion_title(c),
                kz_criterion_checks(c), kz_criterion_seconds(c));
    ResultRecord r;
    r.command = "verify";
    r.params = {{"criterion", id}};
    r.flags.push_back(passed ? "pass" : "fail");
    for (std::size_t k = 0; k < kz_criterion_failure_count(c); ++k) {
      std::printf("    failed: %s\n", kz_criterion_failure(c, k));
      r.flags.push_back(std::string("failure:") + kz_criterion_failure(c, k));
    }
    for (std::size_t k = 0; k < kz_criterion_finding_count(c); ++k) {
      std::printf("    finding: %s\n", kz_criterion_finding(c, k));
      r.flags.push_back(std::string("finding:") + kz_criterion_finding(c, k));
    }
    r.elapsed_ms = static_cast<std::uint64_t>(kz_criterion_seconds(c) * 1000.0);
    std::fflush(stdout);
    kz_criterion_free(c);
    if (to_file) w.write(r);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul modules, Weyman modules and K3 carpet syzygies"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--out", g.out, "Append records to this file instead of stdout");
  app.add_option("--budget", g.budget, "Enumeration budget for rank searches");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::optional<long long> n1, n2, m, dmax, emax, u, v, a, b, imax, nmax;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> k_file;
  std::uint32_t field_char = 0;
  bool bigraded = false;
  std::optional<int> only;
  std::string grid_file;

  auto* wdim = app.add_subcommand("w-dim", "Dimensions of W(V, K) on a bidegree grid");
  wdim->add_option("--n1", n1);
  wdim->add_option("--n2", n2);
  wdim->add_option("--m", m, "dim K (default 2(n1+n2)-4)");
  wdim->add_option("--seed", seed, "Seed of the random K (default 1)");
  wdim->add_option("--k-file", k_file, "Read K from a file");
  wdim->add_option("--char", field_char, "0 or a prime");
  wdim->add_option("--dmax", dmax);
  wdim->add_option("--emax", emax);

  auto* weyman = app.add_subcommand("weyman", "Dimensions of the Weyman module W^(u+1,v+1)");
  weyman->add_option("--u", u)->required();
  weyman->add_option("--v", v)->required();
  weyman->add_option("--char", field_char, "0 or a prime");
  weyman->add_option("--dmax", dmax);
  weyman->add_option("--emax", emax);

  auto* carpet = app.add_subcommand("carpet", "Betti numbers of the K3 carpet");
  carpet->add_option("--a", a)->required();
  carpet->add_option("--b", b)->required();
  carpet->add_option("--char", field_char, "0 or a prime");
  carpet->add_option("--imax", imax, "Largest homological degree (default a+b-1)");
  carpet->add_flag("--bigraded", bigraded, "Report bigraded cells");

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of the K3 carpet");
  hilbert->add_option("--a", a)->required();
  hilbert->add_option("--b", b)->required();
  hilbert->add_option("--nmax", nmax, "Largest degree (default 6)");

  auto* secant = app.add_subcommand("secant", "Secant condition for K^perp");
  secant->add_option("--n1", n1);
  secant->add_option("--n2", n2);
  secant->add_option("--m", m, "dim K (default 2(n1+n2)-4)");
  secant->add_option("--seed", seed, "Seed of the random K (default 1)");
  secant->add_option("--k-file", k_file, "Read K from a file");
  secant->add_option("--char", field_char, "A prime");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--only", only, "Run a single criterion");

  auto* sweep = app.add_subcommand("sweep", "Run a grid of computations with resume");
  sweep->add_option("--grid-file", grid_file, "JSON list of {command, params, char, seed}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(g, only);

    if (sweep->parsed()) {
      if (g.out.empty()) throw CliError(2, "sweep requires --out");
      if (g.format != "jsonl") throw CliError(2, "sweep writes JSONL only");
      const SweepSummary s = run_sweep(grid_file, g.out, ExecOptions{g.budget, g.threads});
      std::fprintf(stderr, "sweep: %zu cells, %zu computed, %zu cached, %zu failed\n", s.cells, s.computed, s.cached,
                   s.failed);
      return 0;
    }

    CommandSpec spec;
    spec.field_char = field_char;
    spec.seed = seed;
    json& p = spec.params;
    if (wdim->parsed() || secant->parsed()) {
      spec.command = wdim->parsed() ? "w-dim" : "secant";
      put(p, "n1", n1);
      put(p, "n2", n2);
      put(p, "m", m);
      put(p, "k_file", k_file);
      put(p, "dmax", dmax);
      put(p, "emax", emax);
    } else if (weyman->parsed()) {
      spec.command = "weyman";
      put(p, "u", u);
      put(p, "v", v);
      put(p, "dmax", dmax);
      put(p, "emax", emax);
    } else if (carpet->parsed()) {
      spec.command = "carpet";
      put(p, "a", a);
      put(p, "b", b);
      put(p, "imax", imax);
      p["bigraded"] = bigraded;
    } else if (hilbert->parsed()) {
      spec.command = "hilbert";
      put(p, "a", a);
      put(p, "b", b);
      put(p, "nmax", nmax);
    }
    Writer w(g);
    w.write(execute(normalize(spec), ExecOptions{g.budget, g.threads}));
    return 0;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
