#include "koszul/koszul.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "koszul/acceptance.hpp"
#include "koszul/carpet.hpp"
#include "koszul/errors.hpp"
#include "koszul/koszul_module.hpp"
#include "koszul/weyman.hpp"

struct kz_instance {
  koszul::KoszulInstance inst;
};

struct kz_carpet {
  koszul::Carpet carpet;
  explicit kz_carpet(koszul::CarpetInstance ci) : carpet(std::move(ci)) {}
};

struct kz_criterion {
  koszul::CriterionResult result;
};

namespace {

thread_local std::string last_error;

kz_status fail(kz_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
kz_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return KZ_OK;
  } catch (const koszul::RangeError& e) {
    return fail(KZ_RANGE_ERROR, e.what());
  } catch (const koszul::InputError& e) {
    return fail(KZ_INPUT_ERROR, e.what());
  } catch (const koszul::ComplexError& e) {
    return fail(KZ_COMPLEX_ERROR, e.what());
  } catch (const koszul::LiftError& e) {
    return fail(KZ_LIFT_ERROR, e.what());
  } catch (const koszul::InvariantViolation& e) {
    return fail(KZ_INVARIANT_VIOLATION, e.what());
  } catch (const koszul::BudgetExceeded& e) {
    return fail(KZ_BUDGET_EXCEEDED, e.what());
  } catch (const std::exception& e) {
    return fail(KZ_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(KZ_INTERNAL_ERROR, "unknown exception");
  }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

kz_status null_argument() { return fail(KZ_NULL_ARGUMENT, "null argument"); }

koszul::ModuleKind to_kind(kz_module m) {
  switch (m) {
    case KZ_MODULE_R: return koszul::ModuleKind::R;
    case KZ_MODULE_B: return koszul::ModuleKind::B;
    case KZ_MODULE_I: return koszul::ModuleKind::I;
    case KZ_MODULE_OMEGA: return koszul::ModuleKind::Omega;
  }
  throw koszul::InputError("unknown module kind");
}

template <class Make>
kz_status make_instance(kz_instance** out, Make&& make) {
  if (any_null(out)) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new kz_instance{make()}; });
}

}  // namespace

extern "C" {

const char* kz_last_error(void) { return last_error.c_str(); }

const char* kz_status_name(kz_status status) {
  switch (status) {
    case KZ_OK: return "ok";
    case KZ_INPUT_ERROR: return "input error";
    case KZ_RANGE_ERROR: return "range error";
    case KZ_COMPLEX_ERROR: return "complex error";
    case KZ_INVARIANT_VIOLATION: return "invariant violation";
    case KZ_LIFT_ERROR: return "lift error";
    case KZ_BUDGET_EXCEEDED: return "budget exceeded";
    case KZ_NULL_ARGUMENT: return "null argument";
    case KZ_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

kz_status kz_instance_random(size_t n1, size_t n2, size_t m, uint32_t characteristic, uint64_t seed,
                             kz_instance** out) {
  return make_instance(out, [&] { return koszul::random_K(n1, n2, m, koszul::FieldSpec(characteristic), seed); });
}

kz_status kz_instance_parse(const char* text, kz_instance** out) {
  if (any_null(text)) return null_argument();
  return make_instance(out, [&] {
    std::istringstream in(text);
    return koszul::parse_k_file(in);
  });
}

kz_status kz_instance_load(const char* path, kz_instance** out) {
  if (any_null(path)) return null_argument();
  return make_instance(out, [&] {
    std::ifstream in(path);
    if (!in) throw koszul::InputError(std::string("cannot open ") + path);
    return koszul::parse_k_file(in);
  });
}

kz_status kz_instance_trace_kernel(size_t n, uint32_t characteristic, kz_instance** out) {
  return make_instance(out, [&] { return koszul::trace_kernel_instance(n, koszul::FieldSpec(characteristic)); });
}

kz_status kz_instance_rank_one_perp(size_t n1, size_t n2, uint32_t characteristic, kz_instance** out) {
  return make_instance(out,
                       [&] { return koszul::rank_one_perp_instance(n1, n2, koszul::FieldSpec(characteristic)); });
}

kz_status kz_instance_weyman(int u, int v, uint32_t characteristic, kz_instance** out) {
  return make_instance(out, [&] { return koszul::weyman_instance(u, v, koszul::FieldSpec(characteristic)).inst; });
}

kz_status kz_instance_delta(int u, int v, uint32_t characteristic, kz_instance** out) {
  return make_instance(out, [&] { return koszul::delta_instance(u, v, koszul::FieldSpec(characteristic)); });
}

void kz_instance_free(kz_instance* inst) { delete inst; }

kz_status kz_instance_get_info(const kz_instance* inst, kz_instance_info* out) {
  if (any_null(inst, out)) return null_argument();
  const auto& k = inst->inst;
  *out = kz_instance_info{k.n1, k.n2, k.m(), k.field.characteristic(), k.redraws};
  return KZ_OK;
}

kz_status kz_w_dim(const kz_instance* inst, int d, int e, kz_cell* out) {
  if (any_null(inst, out)) return null_argument();
  return guarded([&] {
    const koszul::CellResult c = koszul::w_dim(inst->inst, koszul::BiDegree{d, e});
    *out = kz_cell{c.w_dim, c.chi, c.rank_alpha, c.nullity_beta};
  });
}

kz_status kz_closed_form_chi(size_t n1, size_t n2, int d, int e, kz_closed_form* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    const koszul::ClosedFormChi c = koszul::closed_form_chi(n1, n2, koszul::BiDegree{d, e});
    const std::string v = c.value.get_str();
    if (v.size() >= sizeof(out->value)) throw koszul::InvariantViolation("closed form value too long");
    std::memset(out->value, 0, sizeof(out->value));
    std::memcpy(out->value, v.data(), v.size());
    out->integral = c.integral;
    out->euler_chi = c.euler_chi;
    out->anomaly = c.anomaly;
  });
}

kz_status kz_vanishing_check(const kz_instance* inst, kz_vanishing* out) {
  if (any_null(inst, out)) return null_argument();
  return guarded([&] {
    const koszul::VanishingCheck v = koszul::vanishing_check(inst->inst);
    *out = kz_vanishing{v.corner_zero, v.corner.d, v.corner.e, v.corner_dim};
  });
}

kz_status kz_secant_condition(const kz_instance* inst, uint64_t budget, kz_secant* out) {
  if (any_null(inst, out)) return null_argument();
  return guarded([&] {
    const koszul::SecantResult s = koszul::secant_condition(inst->inst, budget);
    *out = kz_secant{s.holds, s.method == "enumeration", s.min_rank.has_value(), s.min_rank.value_or(0)};
  });
}

kz_status kz_weyman_dim(int u, int v, uint32_t characteristic, int d, int e, size_t* out) {
  if (any_null(out)) return null_argument();
  return guarded(
      [&] { *out = koszul::weyman_dim(u, v, koszul::FieldSpec(characteristic), koszul::BiDegree{d, e}); });
}

kz_status kz_weyman_theorem_applies(int u, int v, uint32_t characteristic, int* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] { *out = koszul::weyman_theorem_applies(u, v, koszul::FieldSpec(characteristic)); });
}

kz_status kz_carpet_new(int a, int b, uint32_t characteristic, kz_carpet** out) {
  if (any_null(out)) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new kz_carpet(koszul::CarpetInstance(a, b, koszul::FieldSpec(characteristic))); });
}

void kz_carpet_free(kz_carpet* carpet) { delete carpet; }

kz_status kz_carpet_tor(const kz_carpet* carpet, kz_module kind, int i, int d, int e, size_t* out) {
  if (any_null(carpet, out)) return null_argument();
  return guarded([&] { *out = carpet->carpet.koszul_tor(to_kind(kind), i, koszul::BiDegree{d, e}).dim; });
}

kz_status kz_carpet_tor_total(const kz_carpet* carpet, kz_module kind, int i, int total, size_t* out) {
  if (any_null(carpet, out)) return null_argument();
  return guarded([&] { *out = carpet->carpet.koszul_tor_total(to_kind(kind), i, total); });
}

kz_status kz_carpet_tor_A(const kz_carpet* carpet, int i, int d, int e, size_t* out) {
  if (any_null(carpet, out)) return null_argument();
  return guarded([&] { *out = carpet->carpet.tor_A(i, koszul::BiDegree{d, e}); });
}

kz_status kz_carpet_tor_A_total(const kz_carpet* carpet, int i, int total, size_t* out) {
  if (any_null(carpet, out)) return null_argument();
  return guarded([&] { *out = carpet->carpet.tor_A_total(i, total); });
}

kz_status kz_carpet_cross_check_weyman(const kz_carpet* carpet, int u, int v, size_t* carpet_dim,
                                       size_t* weyman_dim) {
  if (any_null(carpet, carpet_dim, weyman_dim)) return null_argument();
  return guarded([&] {
    const koszul::WeymanCrossCheck x = carpet->carpet.cross_check_weyman(u, v);
    *carpet_dim = x.carpet;
    *weyman_dim = x.weyman;
  });
}

kz_status kz_hilbert_A(int a, int b, int nmax, uint64_t* dims, long long* numerator) {
  if (any_null(dims, numerator)) return null_argument();
  return guarded([&] {
    const koszul::HilbertA h = koszul::hilbert_A(a, b, nmax);
    for (std::size_t n = 0; n < h.dims.size(); ++n) {
      dims[n] = h.dims[n];
      numerator[n] = h.numerator[n];
    }
  });
}

int kz_acceptance_count(void) { return koszul::kAcceptanceCriteria; }

kz_status kz_acceptance_run(int id, uint64_t budget, kz_criterion** out) {
  if (any_null(out)) return null_argument();
  *out = nullptr;
  return guarded([&] {
    koszul::AcceptanceOptions opts;
    opts.budget = budget;
    *out = new kz_criterion{koszul::run_acceptance_criterion(id, opts)};
  });
}

void kz_criterion_free(kz_criterion* c) { delete c; }
int kz_criterion_passed(const kz_criterion* c) { return c && c->result.passed; }
const char* kz_criterion_title(const kz_criterion* c) { return c ? c->result.title.c_str() : ""; }
size_t kz_criterion_checks(const kz_criterion* c) { return c ? c->result.checks : 0; }
double kz_criterion_seconds(const kz_criterion* c) { return c ? c->result.seconds : 0.0; }
size_t kz_criterion_failure_count(const kz_criterion* c) { return c ? c->result.failures.size() : 0; }
const char* kz_criterion_failure(const kz_criterion* c, size_t k) {
  return c && k < c->result.failures.size() ? c->result.failures[k].c_str() : nullptr;
}
size_t kz_criterion_finding_count(const kz_criterion* c) { return c ? c->result.findings.size() : 0; }
const char* kz_criterion_finding(const kz_criterion* c, size_t k) {
  return c && k < c->result.findings.size() ? c->result.findings[k].c_str() : nullptr;
}

}  // extern "C"
