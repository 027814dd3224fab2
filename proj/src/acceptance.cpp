#include "koszul/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

#include "koszul/carpet.hpp"
#include "koszul/errors.hpp"
#include "koszul/koszul_module.hpp"
#include "koszul/multilinear.hpp"
#include "koszul/weyman.hpp"

namespace koszul {
namespace {

constexpr std::size_t kMaxFailures = 20;

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

std::string field_name(FieldSpec f) { return f.is_rational() ? "QQ" : cat("GF(", f.characteristic(), ")"); }

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  bool check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) fail(what);
    return ok;
  }
  void fail(const std::string& what) {
    ++failed_;
    if (r_.failures.size() < kMaxFailures) r_.failures.push_back(what);
  }
  void finding(const std::string& what) { r_.findings.push_back(what); }
  std::size_t failed() const { return failed_; }

 private:
  CriterionResult& r_;
  std::size_t failed_ = 0;
};

/// Carpets shared between criteria of one run.
class CarpetPool {
 public:
  const Carpet& get(int a, int b, FieldSpec f) {
    auto& slot = pool_[{a, b, f.characteristic()}];
    if (!slot) slot = std::make_unique<Carpet>(CarpetInstance(a, b, f));
    return *slot;
  }

 private:
  std::map<std::tuple<int, int, std::uint32_t>, std::unique_ptr<Carpet>> pool_;
};

struct Context {
  AcceptanceOptions opts;
  CarpetPool carpets;
};

const std::vector<std::pair<int, int>> kCarpetGrid = {{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}};

std::vector<FieldSpec> vanishing_fields(int a, int b) {
  std::vector<FieldSpec> out{FieldSpec::rationals()};
  for (std::uint32_t p : {2u, 3u})
    if (p >= static_cast<std::uint32_t>(std::min(a, b))) out.emplace_back(p);
  out.emplace_back(5);
  out.emplace_back(7);
  return out;
}

void carpet_vanishing(Context& ctx, Recorder& rec) {
  for (const auto& [a, b] : kCarpetGrid)
    for (FieldSpec f : vanishing_fields(a, b)) {
      const Carpet& c = ctx.carpets.get(a, b, f);
      for (int i = 0; i < std::min(a, b); ++i) {
        const std::size_t v = c.tor_A_total(i, i + 2);
        rec.check(v == 0, cat("(a,b)=(", a, ",", b, ") ", field_name(f), ": Tor_", i, "(A)_", i + 2, " = ", v));
      }
    }
}

using BigradedTable = std::map<std::pair<int, BiDegree>, std::size_t>;

BigradedTable quadratic_strand(const Carpet& c, int imax) {
  BigradedTable t;
  for (int i = 0; i < imax; ++i)
    for (int d = 0; d <= i + 2; ++d) t[{i, BiDegree{d, i + 2 - d}}] = c.tor_A(i, BiDegree{d, i + 2 - d});
  return t;
}

void char_two_failure(Context& ctx, Recorder& rec) {
  const FieldSpec f(2);
  const BigradedTable first = quadratic_strand(ctx.carpets.get(3, 3, f), 3);
  const Carpet fresh(CarpetInstance(3, 3, f));
  const BigradedTable second = quadratic_strand(fresh, 3);

  std::size_t nonzero = 0;
  for (const auto& [key, v] : first) {
    if (v != 0) {
      ++nonzero;
      rec.finding(cat("Tor_", key.first, "(A)_(", key.second.d, ",", key.second.e, ") = ", v, " over GF(2)"));
    }
  }
  rec.check(nonzero > 0, "no nonzero Tor_i(A)_(i+2) for i < 3 over GF(2)");
  rec.check(first == second, "bigraded values differ between two independent runs");

  const BigradedTable baseline_nonzero = {{{2, BiDegree{2, 2}}, 3}};
  for (const auto& [key, v] : first) {
    const auto it = baseline_nonzero.find(key);
    const std::size_t expected = it == baseline_nonzero.end() ? 0 : it->second;
    rec.check(v == expected, cat("Tor_", key.first, "(A)_(", key.second.d, ",", key.second.e, ") = ", v,
                                 ", baseline ", expected));
  }
}

void weyman_cross_check(Context& ctx, Recorder& rec) {
  const std::vector<FieldSpec> fields{FieldSpec::rationals(), FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7)};
  for (const auto& [a, b] : kCarpetGrid)
    for (FieldSpec f : fields) {
      const Carpet& c = ctx.carpets.get(a, b, f);
      for (int u = 0; u <= a - 1; ++u)
        for (int v = 0; v <= b - 1; ++v) {
          if (u + v >= a + b - 1) continue;
          const WeymanCrossCheck x = c.cross_check_weyman(u, v);
          rec.check(x.agree(), cat("(a,b)=(", a, ",", b, ") ", field_name(f), " (u,v)=(", u, ",", v,
                                   "): carpet ", x.carpet, " vs Weyman ", x.weyman));
        }
    }
}

void hilbert_series(Recorder& rec) {
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    const std::string tag = cat("(a,b)=(", a, ",", b, ")");
    try {
      const HilbertA h = hilbert_A(a, b, 6);
      for (int n = 1; n <= 6; ++n) {
        const auto expected = static_cast<std::uint64_t>(n * n * (a + b) + 2);
        rec.check(h.dims[static_cast<std::size_t>(n)] == expected,
                  cat(tag, ": dim A_", n, " = ", h.dims[static_cast<std::size_t>(n)], ", expected ", expected));
      }
      const std::vector<long long> num{1, a + b - 1, a + b - 1, 1, 0, 0, 0};
      rec.check(h.numerator == num, cat(tag, ": numerator coefficients differ"));
    } catch (const InvariantViolation& e) {
      rec.fail(cat(tag, ": ", e.what()));
    }
  }
}

void koszul_hilbert_function(Context& ctx, Recorder& rec) {
  const std::vector<std::pair<std::size_t, std::size_t>> sizes{{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
  for (const auto& [n1, n2] : sizes)
    for (FieldSpec f : {FieldSpec::rationals(), FieldSpec(101)}) {
      const std::size_t m = 2 * (n1 + n2) - 4;
      std::uint64_t seed = 1;
      KoszulInstance inst = random_K(n1, n2, m, f, seed);
      const std::string tag = cat("(n1,n2)=(", n1, ",", n2, ") ", field_name(f));
      if (!f.is_rational()) {
        try {
          while (!secant_condition(inst, ctx.opts.budget).holds && seed < 20) {
            rec.finding(cat(tag, ": seed ", seed, " fails the secant condition, redrawn"));
            inst = random_K(n1, n2, m, f, ++seed);
          }
        } catch (const BudgetExceeded&) {
          rec.finding(cat(tag, ": secant check over budget, genericity judged by the corner cell"));
        }
      }
      for (int d = 0; d <= static_cast<int>(n2) - 2; ++d)
        for (int e = 0; e <= static_cast<int>(n1) - 2; ++e) {
          const CellResult cell = w_dim(inst, BiDegree{d, e});
          rec.check(static_cast<long long>(cell.w_dim) == cell.chi,
                    cat(tag, " seed ", seed, " (", d, ",", e, "): w_dim ", cell.w_dim, " vs chi ", cell.chi));
          const ClosedFormChi cf = closed_form_chi(n1, n2, BiDegree{d, e});
          if (cf.anomaly)
            rec.finding(cat("FormulaAnomaly ", tag, " (", d, ",", e, "): closed form ", cf.value.get_str(),
                            " vs chi ", cf.euler_chi));
        }
      const VanishingCheck corner = vanishing_check(inst);
      rec.check(corner.corner_zero, cat(tag, " seed ", seed, ": corner dim ", corner.corner_dim));
    }
}

void weyman_vanishing(Recorder& rec) {
  for (int u = 0; u <= 4; ++u)
    for (int v = 0; u + v <= 4; ++v) {
      const int n1 = u + 2, n2 = v + 2;
      std::vector<FieldSpec> fields{FieldSpec::rationals()};
      for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u})
        if (static_cast<int>(p) >= n1 + n2 - 3) fields.emplace_back(p);
      for (FieldSpec f : fields) {
        const WeymanInstance w = weyman_instance(u, v, f);
        for (int d = n2 - 2; d <= n2; ++d)
          for (int e = n1 - 2; e <= n1; ++e) {
            const std::size_t dim = weyman_cell(w, BiDegree{d, e}).w_dim;
            rec.check(dim == 0, cat("(u,v)=(", u, ",", v, ") ", field_name(f), " (", d, ",", e, "): dim ", dim));
          }
      }
    }
}

void ker_psi_ranks(Context& ctx, Recorder& rec) {
  for (const auto& [u, v] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 2}})
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const std::string tag = cat("(u,v)=(", u, ",", v, ") GF(", p, ")");
      if (static_cast<int>(p) > std::min(u, v)) {
        const KerPsiCheck k = ker_psi_rank_check(u, v, p, ctx.opts.budget);
        rec.check(!k.min_rank || *k.min_rank >= 3,
                  cat(tag, ": min rank ", k.min_rank ? std::to_string(*k.min_rank) : "none"));
      } else {
        const FieldSpec f(p);
        const Vector w = char_p_witness(u, v, p);
        rec.check(psi_kernel(u, v, f).contains(w), cat(tag, ": witness outside ker psi"));
        const std::size_t r = tensor_rank(w, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1, f);
        rec.check(r == 2, cat(tag, ": witness rank ", r));
      }
    }
}

void secant_oracle(Context& ctx, Recorder& rec) {
  const FieldSpec f(3);
  const KoszulInstance trace = trace_kernel_instance(3, f);
  rec.check(trace.m() == 8, cat("trace-kernel m = ", trace.m()));
  rec.check(secant_condition(trace, ctx.opts.budget).holds, "trace-kernel: secant condition false");
  rec.check(vanishing_check(trace).corner_zero, "trace-kernel: corner nonzero");

  const KoszulInstance r1 = rank_one_perp_instance(3, 3, f);
  rec.check(!secant_condition(r1, ctx.opts.budget).holds, "rank-one-perp: secant condition true");
  rec.check(!vanishing_check(r1).corner_zero, "rank-one-perp: corner zero");

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const KoszulInstance k = random_K(3, 3, 7, f, seed);
    rec.check(!secant_condition(k, ctx.opts.budget).holds, cat("m = 7, seed ", seed, ": secant condition true"));
  }
}

void scroll_resolution(Context& ctx, Recorder& rec) {
  const FieldSpec qq = FieldSpec::rationals();
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    const Carpet& c = ctx.carpets.get(a, b, qq);
    for (int i = 1; i <= a + b - 1; ++i) {
      const ScrollTorCheck s = c.scroll_tor_check(i);
      rec.check(s.holds, cat("(a,b)=(", a, ",", b, ") i=", i, ": Tor_i(B) linear ", s.linear, " (expected ",
                             s.expected_linear, "), quadratic ", s.quadratic));
    }
  }
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}}) {
    const Carpet& c = ctx.carpets.get(a, b, qq);
    for (int u = 0; u <= a - 1; ++u)
      for (int v = 0; v <= b - 1 && u + v <= 3; ++v) {
        const BiDegree deg{u + 1, v + 1};
        const std::string tag = cat("(a,b)=(", a, ",", b, ") (u,v)=(", u, ",", v, ")");
        const std::size_t ti = c.koszul_tor(ModuleKind::I, u + v, deg).dim;
        rec.check(ti == ideal_tor_dim(a, b, u, v), cat(tag, ": Tor(I) ", ti, " vs ", ideal_tor_dim(a, b, u, v)));
        const std::size_t to = c.koszul_tor(ModuleKind::Omega, u + v, deg).dim;
        rec.check(to == canonical_tor_dim(a, b, u, v),
                  cat(tag, ": Tor(Omega) ", to, " vs ", canonical_tor_dim(a, b, u, v)));
        const std::size_t small = w_dim(delta_instance(u, v, qq), BiDegree{a - 1 - u, b - 1 - v}).w_dim;
        rec.check(to == small, cat(tag, ": Tor(Omega) ", to, " vs small-K module ", small));
      }
  }
}

void structure_maps(Recorder& rec) {
  const FieldSpec qq = FieldSpec::rationals();
  for (FieldSpec f : {qq, FieldSpec(3)})
    for (int u = 0; u <= 3; ++u)
      for (int v = 0; v <= 3; ++v)
        for (int w = 0; w <= 3; ++w) {
          const std::string tag = cat(field_name(f), " (", u, ",", v, ",", w, ")");
          const auto lhs = compose(tensor(comult_div(u, v, f), identity_map(SpaceExpr::div_u(w), f)),
                                   comult_div(u + v, w, f));
          const auto rhs = compose(tensor(identity_map(SpaceExpr::div_u(u), f), comult_div(v, w, f)),
                                   comult_div(u, v + w, f));
          rec.check(lhs.matrix == rhs.matrix, cat("divided power coassociativity ", tag));
          const auto e = SpaceExpr::sym_u(5);
          const auto lw = compose(tensor(comult_wedge(u, v, e, f), identity_map(SpaceExpr::wedge(w, e), f)),
                                  comult_wedge(u + v, w, e, f));
          const auto rw = compose(tensor(identity_map(SpaceExpr::wedge(u, e), f), comult_wedge(v, w, e, f)),
                                  comult_wedge(u, v + w, e, f));
          rec.check(lw.matrix == rw.matrix, cat("exterior coassociativity ", tag));
        }

  for (FieldSpec f : {qq, FieldSpec(2), FieldSpec(5)})
    for (int u = 0; u <= 6; ++u)
      for (int v = 0; v <= 6; ++v) {
        const std::string tag = cat(field_name(f), " (", u, ",", v, ")");
        rec.check(comult_div(u, v, f).matrix == mult_sym(u, v, f).matrix.transpose(),
                  cat("comultiplication is not the transpose of multiplication ", tag));
        if (u < 2 || v < 2) continue;
        for (int t = 1; t <= 2; ++t)
          rec.check((mult_sym(u, v, f).matrix * iota_power(u, v, t, f).matrix).is_zero(),
                    cat("mu o iota^", t, " nonzero ", tag));
        rec.check(iota_power(u, v, 1, f).matrix.transpose() == -iota_dual(u, v, f).matrix,
                  cat("iota transpose duality ", tag));
        rec.check(weyman_K(u, v, f) == psi_kernel(u, v, f).annihilator(), cat("K is not the annihilator ", tag));
      }

  for (FieldSpec f : {qq, FieldSpec(2), FieldSpec(3), FieldSpec(5)})
    for (int u = 0; u <= 4; ++u)
      for (int v = 0; v <= 4; ++v) {
        const TwoStepCheck t = two_step_check(u, v, f);
        rec.check(t.holds, cat("two-step ", field_name(f), " (", u, ",", v, "): image ", t.image_dim, ", quotient ",
                               t.quotient_dim));
      }

  for (FieldSpec f : {qq, FieldSpec(2), FieldSpec(3), FieldSpec(7)})
    for (int d = 1; d <= 4; ++d)
      for (int i = 1; i <= 4; ++i) {
        const std::string tag = cat(field_name(f), " d=", d, " i=", i);
        const LinMap h = hermite_iso(d, i, f);
        if (!rec.check(h.domain.dim() == h.codomain.dim() && rank(h.matrix) == h.domain.dim(),
                       cat("Hermite map not invertible ", tag)))
          continue;
        rec.check(h.matrix * unipotent_action(h.domain, f) == unipotent_action(h.codomain, f) * h.matrix,
                  cat("Hermite map not equivariant ", tag));
        const Basis bd(h.domain), bc(h.codomain);
        bool weights_ok = true;
        for (const auto& en : h.matrix.entries())
          weights_ok = weights_ok && x_weight(h.codomain, bc[en.row]) == x_weight(h.domain, bd[en.col]) + i * (i - 1) / 2;
        rec.check(weights_ok, cat("Hermite map shifts weights wrongly ", tag));
      }

  for (FieldSpec f : {qq, FieldSpec(7)})
    for (int d = 1; d <= 3; ++d)
      for (int e = 0; e <= 5; ++e) {
        const auto E = SpaceExpr::sym_u(e);
        const auto split = tensor(comult_div(d - 1, 1, f), comult_wedge(d - 1, 1, E, f));
        const auto reorder = permute_factors(
            {SpaceExpr::div_u(d - 1), SpaceExpr::div_u(1), SpaceExpr::wedge(d - 1, E), SpaceExpr::wedge(1, E)},
            {0, 2, 1, 3}, f);
        const Matrix mult = kron(Matrix::identity(f, SpaceExpr::div_u(d - 1).dim() * SpaceExpr::wedge(d - 1, E).dim()),
                                 mult_sym(1, e, f).matrix);
        const Matrix lhs = kron(nu(d - 1, e, f).matrix, Matrix::identity(f, static_cast<std::size_t>(e) + 2)) * mult *
                           reorder.matrix * split.matrix;
        const Matrix rhs = comult_wedge(d - 1, 1, SpaceExpr::sym_u(e + 1), f).matrix * nu(d, e, f).matrix;
        rec.check(lhs == rhs, cat("nu square does not commute ", field_name(f), " d=", d, " e=", e));
      }

  for (const auto& [n1, n2] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}}) {
    const int n = static_cast<int>(n1 + n2);
    for (int r = 1; r <= n - 4; ++r)
      rec.check(bott_vanishing_check(n1, n2, r).all_vanish,
                cat("cohomology does not vanish for (", n1, ",", n2, ") r=", r));
  }
  const BottCheck top = bott_vanishing_check(3, 3, 3);
  const bool witness = std::any_of(top.witnesses.begin(), top.witnesses.end(), [](const BottWitness& w) {
    return w.i == -3 && w.j == -3 && w.q == 4 && w.dim == 1;
  });
  rec.check(!top.all_vanish && witness, "missing the O(-3,-3) witness with h^4 = 1 for (3,3) r=3");
}

void genus_five(Context& ctx, Recorder& rec) {
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec(2), FieldSpec(3), FieldSpec(5)}) {
    const Carpet& c = ctx.carpets.get(2, 2, f);
    const std::string tag = field_name(f);
    const std::size_t b12 = c.tor_A_total(1, 2);
    rec.check(b12 == 3, cat(tag, ": beta_12 = ", b12));
    for (const BiDegree deg : {BiDegree{2, 0}, BiDegree{1, 1}, BiDegree{0, 2}}) {
      const std::size_t v = c.tor_A(1, deg);
      rec.check(v == 1, cat(tag, ": Tor_1(A)_(", deg.d, ",", deg.e, ") = ", v));
    }
    const std::size_t b13 = c.tor_A_total(1, 3);
    rec.check(b13 == 0, cat(tag, ": beta_13 = ", b13));
  }
}

void run(int id, Context& ctx, Recorder& rec) {
  switch (id) {
    case 1: return carpet_vanishing(ctx, rec);
    case 2: return char_two_failure(ctx, rec);
    case 3: return weyman_cross_check(ctx, rec);
    case 4: return hilbert_series(rec);
    case 5: return koszul_hilbert_function(ctx, rec);
    case 6: return weyman_vanishing(rec);
    case 7: return ker_psi_ranks(ctx, rec);
    case 8: return secant_oracle(ctx, rec);
    case 9: return scroll_resolution(ctx, rec);
    case 10: return structure_maps(rec);
    case 11: return genus_five(ctx, rec);
    default: throw RangeError(cat("no acceptance criterion ", id));
  }
}

CriterionResult run_in(int id, Context& ctx) {
  CriterionResult r;
  r.id = id;
  r.title = acceptance_title(id);
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    run(id, ctx, rec);
  } catch (const std::exception& e) {
    rec.fail(cat("exception: ", e.what()));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = rec.failed() == 0 && r.checks > 0;
  return r;
}

}  // namespace

std::string acceptance_title(int id) {
  switch (id) {
    case 1: return "carpet vanishing Tor_i(A)_(i+2) = 0 for i < min(a,b)";
    case 2: return "carpet (3,3) over GF(2) has nonzero Tor_i(A)_(i+2)";
    case 3: return "carpet Tor(A) agrees with Weyman modules";
    case 4: return "Hilbert series of the carpet";
    case 5: return "Koszul module Hilbert function for m = 2n-4";
    case 6: return "Weyman module vanishing";
    case 7: return "rank of tensors in ker psi";
    case 8: return "secant condition oracle";
    case 9: return "scroll resolution and Tor(I), Tor(Omega) dimensions";
    case 10: return "structure map identities";
    case 11: return "genus 5 carpet Betti numbers";
    default: throw RangeError(cat("no acceptance criterion ", id));
  }
}

CriterionResult run_acceptance_criterion(int id, const AcceptanceOptions& opts) {
  acceptance_title(id);
  Context ctx{opts, {}};
  return run_in(id, ctx);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx{opts, {}};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) {
    out.push_back(run_in(id, ctx));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace koszul
