#ifndef KOSZUL_KOSZUL_H
#define KOSZUL_KOSZUL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KZ_API __declspec(dllexport)
#else
#define KZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kz_status {
  KZ_OK = 0,
  KZ_INPUT_ERROR = 1,
  KZ_RANGE_ERROR = 2,
  KZ_COMPLEX_ERROR = 3,
  KZ_INVARIANT_VIOLATION = 4,
  KZ_LIFT_ERROR = 5,
  KZ_BUDGET_EXCEEDED = 6,
  KZ_NULL_ARGUMENT = 7,
  KZ_INTERNAL_ERROR = 8
} kz_status;

/* Message of the last failed call on the calling thread ("" if none). */
KZ_API const char* kz_last_error(void);
KZ_API const char* kz_status_name(kz_status status);

/* Characteristic 0 selects the rationals; otherwise a prime below 2^31. */

/* ---- Koszul modules W(V, K) with K inside k^n1 (x) k^n2 ---- */

typedef struct kz_instance kz_instance;

typedef struct kz_instance_info {
  size_t n1;
  size_t n2;
  size_t m;
  uint32_t characteristic;
  size_t redraws;
} kz_instance_info;

KZ_API kz_status kz_instance_random(size_t n1, size_t n2, size_t m, uint32_t characteristic, uint64_t seed,
                                    kz_instance** out);
/* Text in the K-file format: "n1 n2 p m" followed by m rows of n1*n2 integers. */
KZ_API kz_status kz_instance_parse(const char* text, kz_instance** out);
KZ_API kz_status kz_instance_load(const char* path, kz_instance** out);
KZ_API kz_status kz_instance_trace_kernel(size_t n, uint32_t characteristic, kz_instance** out);
KZ_API kz_status kz_instance_rank_one_perp(size_t n1, size_t n2, uint32_t characteristic, kz_instance** out);
/* The Weyman module W^(u+1,v+1) and the instance with K the comultiplication image. */
KZ_API kz_status kz_instance_weyman(int u, int v, uint32_t characteristic, kz_instance** out);
KZ_API kz_status kz_instance_delta(int u, int v, uint32_t characteristic, kz_instance** out);
KZ_API void kz_instance_free(kz_instance* inst);
KZ_API kz_status kz_instance_get_info(const kz_instance* inst, kz_instance_info* out);

typedef struct kz_cell {
  size_t w_dim;
  long long chi;
  size_t rank_alpha;
  size_t nullity_beta;
} kz_cell;

KZ_API kz_status kz_w_dim(const kz_instance* inst, int d, int e, kz_cell* out);

typedef struct kz_closed_form {
  /* Value of the closed formula as "p/q" or "p"; NUL-terminated. */
  char value[64];
  int integral;
  long long euler_chi;
  int anomaly;
} kz_closed_form;

/* Defined for d <= n2 - 2, e <= n1 - 2 (KZ_RANGE_ERROR otherwise). */
KZ_API kz_status kz_closed_form_chi(size_t n1, size_t n2, int d, int e, kz_closed_form* out);

typedef struct kz_vanishing {
  int corner_zero;
  int corner_d;
  int corner_e;
  size_t corner_dim;
} kz_vanishing;

KZ_API kz_status kz_vanishing_check(const kz_instance* inst, kz_vanishing* out);

typedef struct kz_secant {
  int holds;
  /* 0: decided by dimension count, 1: by enumeration. */
  int enumerated;
  int has_min_rank;
  size_t min_rank;
} kz_secant;

KZ_API kz_status kz_secant_condition(const kz_instance* inst, uint64_t budget, kz_secant* out);

/* ---- Weyman modules ---- */

KZ_API kz_status kz_weyman_dim(int u, int v, uint32_t characteristic, int d, int e, size_t* out);
KZ_API kz_status kz_weyman_theorem_applies(int u, int v, uint32_t characteristic, int* out);

/* ---- K3 carpets ---- */

typedef struct kz_carpet kz_carpet;

typedef enum kz_module { KZ_MODULE_R = 0, KZ_MODULE_B = 1, KZ_MODULE_I = 2, KZ_MODULE_OMEGA = 3 } kz_module;

/* Carpets cache their results; every query is safe to call concurrently. */
KZ_API kz_status kz_carpet_new(int a, int b, uint32_t characteristic, kz_carpet** out);
KZ_API void kz_carpet_free(kz_carpet* carpet);
KZ_API kz_status kz_carpet_tor(const kz_carpet* carpet, kz_module kind, int i, int d, int e, size_t* out);
KZ_API kz_status kz_carpet_tor_total(const kz_carpet* carpet, kz_module kind, int i, int total, size_t* out);
KZ_API kz_status kz_carpet_tor_A(const kz_carpet* carpet, int i, int d, int e, size_t* out);
KZ_API kz_status kz_carpet_tor_A_total(const kz_carpet* carpet, int i, int total, size_t* out);
KZ_API kz_status kz_carpet_cross_check_weyman(const kz_carpet* carpet, int u, int v, size_t* carpet_dim,
                                              size_t* weyman_dim);

/* dims and numerator must hold nmax + 1 entries each. */
KZ_API kz_status kz_hilbert_A(int a, int b, int nmax, uint64_t* dims, long long* numerator);

/* ---- acceptance suite ---- */

typedef struct kz_criterion kz_criterion;

KZ_API int kz_acceptance_count(void);
/* Runs criterion `id` in 1..kz_acceptance_count(). */
KZ_API kz_status kz_acceptance_run(int id, uint64_t budget, kz_criterion** out);
KZ_API void kz_criterion_free(kz_criterion* c);
KZ_API int kz_criterion_passed(const kz_criterion* c);
KZ_API const char* kz_criterion_title(const kz_criterion* c);
KZ_API size_t kz_criterion_checks(const kz_criterion* c);
KZ_API double kz_criterion_seconds(const kz_criterion* c);
KZ_API size_t kz_criterion_failure_count(const kz_criterion* c);
KZ_API const char* kz_criterion_failure(const kz_criterion* c, size_t k);
KZ_API size_t kz_criterion_finding_count(const kz_criterion* c);
KZ_API const char* kz_criterion_finding(const kz_criterion* c, size_t k);

#ifdef __cplusplus
}
#endif

#endif
