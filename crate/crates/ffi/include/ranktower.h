#ifndef RANKTOWER_H
#define RANKTOWER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  RT_STATUS_OK = 0,
  RT_STATUS_NULL_POINTER = 1,
  RT_STATUS_INVALID_UTF8 = 2,
  RT_STATUS_PARSE = 3,
  RT_STATUS_INVALID_INPUT = 4,
  RT_STATUS_VALIDATION_FAILED = 5,
  RT_STATUS_EQUAL_PRIMES = 6,
  RT_STATUS_RAMIFIED_PRIME = 7,
  RT_STATUS_NOT_TOTALLY_SPLIT = 8,
  RT_STATUS_DISCRIMINANT_DIVISIBLE = 9,
  RT_STATUS_SEARCH_EXHAUSTED = 10,
  RT_STATUS_TORSION_HYPOTHESIS_UNMET = 11,
  RT_STATUS_PLAN_NOT_INFLATED = 12,
  RT_STATUS_ARITHMETIC = 13,
  RT_STATUS_PANIC = 99,
} RtStatus;

/**
 * Opaque bound certificate.
 */
typedef struct RtCertificate RtCertificate;

/**
 * Opaque tower plan.
 */
typedef struct RtPlan RtPlan;

/**
 * Parameters for `rt_plan_new`. Zero means "default" for `n`, `d`, `m`,
 * `conductor` (p) and `s0` (no fine Selmer data); `nilpotent_s = 0`
 * selects the abelian Γ = Z_p^d.
 */
typedef struct {
  uint64_t ell;
  uint64_t p;
  uint64_t n;
  uint64_t d;
  uint64_t m;
  uint64_t nilpotent_s;
  uint64_t conductor;
  /**
   * Defining polynomial of F over Q(ζ_c) when m > 2, or NULL.
   */
  const char *poly;
  /**
   * Class number of F and number of primes of F above p (m > 2 with
   * `poly`; 0 = unknown, which fails the base-field checklist).
   */
  uint64_t class_number;
  uint64_t primes_above_p;
  uint64_t s0;
  bool apply_reserve;
} RtPlanParams;

typedef struct {
  uint64_t e;
  uint64_t f;
  uint64_t g;
} RtSplitting;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable description of the last failure on this thread. The
 * pointer stays valid until the next call into this library on the same
 * thread.
 */
const char *rt_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rt_string_free(char *s);

/**
 * Builds and validates a tower plan.
 *
 * # Safety
 * `params` and `out` must be valid pointers; `params->poly` must be NULL
 * or a NUL-terminated string.
 */
RtStatus rt_plan_new(const RtPlanParams *params, RtPlan **out);

/**
 * Plan of an embedded worked example ("example1", "example2", "example3").
 *
 * # Safety
 * `example` must be a NUL-terminated string and `out` a valid pointer.
 */
RtStatus rt_plan_from_example(const char *example, RtPlan **out);

/**
 * # Safety
 * `plan` must be NULL or a handle from `rt_plan_new` / `rt_plan_from_example`.
 */
void rt_plan_free(RtPlan *plan);

/**
 * Number of primes selected for α.
 *
 * # Safety
 * `plan` must be a live handle.
 */
size_t rt_plan_prime_count(const RtPlan *plan);

/**
 * α as a decimal string.
 *
 * # Safety
 * `plan` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_plan_alpha(const RtPlan *plan, char **out);

/**
 * t as a decimal string.
 *
 * # Safety
 * `plan` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_plan_t(const RtPlan *plan, char **out);

/**
 * The plan as a versioned JSON document.
 *
 * # Safety
 * `plan` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_plan_to_json(const RtPlan *plan, char **out);

/**
 * Certificate for layers 0..=n_max. Fine Selmer columns are filled when
 * the plan declares s0; `dim_a` is the dimension of the abelian variety.
 *
 * # Safety
 * `plan` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_certificate_new(const RtPlan *plan,
                            uint64_t dim_a,
                            uint32_t n_max,
                            RtCertificate **out);

/**
 * # Safety
 * `cert` must be NULL or a handle from `rt_certificate_new`.
 */
void rt_certificate_free(RtCertificate *cert);

/**
 * Number of rows (n_max + 1).
 *
 * # Safety
 * `cert` must be a live handle.
 */
size_t rt_certificate_row_count(const RtCertificate *cert);

/**
 * Class-group ℓ-rank lower bound at row `n`, as a decimal string.
 *
 * # Safety
 * `cert` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_certificate_class_rank(const RtCertificate *cert, uint32_t n, char **out);

/**
 * # Safety
 * `cert` must be a live handle and `out` a valid pointer.
 */
RtStatus rt_certificate_to_json(const RtCertificate *cert, char **out);

/**
 * Decomposition of q in Q(ζ_m).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
RtStatus rt_split(uint64_t q, uint64_t m, RtSplitting *out);

/**
 * Multiplies `count` factors in Q(ζ_conductor). `*passed` is set to 1
 * when the product is exactly `prime`; `*out_json` receives the report.
 *
 * # Safety
 * `factors` must point to `count` NUL-terminated strings; `passed` and
 * `out_json` must be valid pointers.
 */
RtStatus rt_verify_factorization(uint64_t conductor,
                                 uint64_t prime,
                                 const char *const *factors,
                                 size_t count,
                                 int32_t *passed,
                                 char **out_json);

/**
 * Reproduces a worked example. `*passed` is 1 when no hard check failed.
 *
 * # Safety
 * `example` must be a NUL-terminated string; `passed` and `out_json`
 * must be valid pointers.
 */
RtStatus rt_reproduce(const char *example, uint32_t n_max, int32_t *passed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKTOWER_H */
