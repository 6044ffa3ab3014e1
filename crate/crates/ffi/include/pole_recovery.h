#ifndef POLE_RECOVERY_H
#define POLE_RECOVERY_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Catalog test functions.
 */
typedef enum PrFunction {
  /**
   * Uses `param` as the exponent q.
   */
  PR_FUNCTION_F1 = 1,
  PR_FUNCTION_F2 = 2,
  PR_FUNCTION_F3 = 3,
  /**
   * Uses `param` as the pole strength eta.
   */
  PR_FUNCTION_F4 = 4,
  PR_FUNCTION_F5 = 5,
} PrFunction;

/**
 * Status codes.
 */
typedef enum PrStatus {
  PR_STATUS_OK = 0,
  /**
   * No plateau was found; the input may be analytic.
   */
  PR_STATUS_NO_POLE = 1,
  PR_STATUS_INVALID_ARGUMENT = 2,
  PR_STATUS_NULL_POINTER = 3,
  /**
   * Domain, overflow, quadrature or node-on-pole failures.
   */
  PR_STATUS_NUMERICAL = 4,
  PR_STATUS_IO = 5,
  PR_STATUS_PARSE = 6,
  PR_STATUS_PANIC = 7,
} PrStatus;

/**
 * A recovered pole with its residue.
 */
typedef struct PrEstimate PrEstimate;

/**
 * Sample values at the nodes N = 0..=n0.
 */
typedef struct PrSamples PrSamples;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call on the same thread.
 */
const char *pr_last_error(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *pr_version(void);

/**
 * Builds samples from `len` values `re[i] + i im[i]`, node i.
 *
 * # Safety
 * `re` and `im` must point to `len` doubles; `out` must be writable.
 */
enum PrStatus pr_samples_new(const double *re,
                             const double *im,
                             size_t len,
                             struct PrSamples **out);

/**
 * Samples a catalog function at N = 0..=n0. `param` is q for F1 and eta
 * for F4 and is ignored otherwise.
 *
 * # Safety
 * `out` must be writable.
 */
enum PrStatus pr_samples_catalog(enum PrFunction function,
                                 double param,
                                 size_t n0,
                                 struct PrSamples **out);

/**
 * Reads a `.csv` (`N,re,im`) or `.json` sample file.
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string; `out` must be writable.
 */
enum PrStatus pr_samples_load(const char *path, struct PrSamples **out);

/**
 * Multiplies each sample by a seeded factor in [1 - epsilon, 1 + epsilon].
 *
 * # Safety
 * `s` must come from this library; `out` must be writable.
 */
enum PrStatus pr_samples_perturb(const struct PrSamples *s,
                                 double epsilon,
                                 uint64_t seed,
                                 struct PrSamples **out);

/**
 * Number of nodes, n0 + 1. Zero for NULL.
 *
 * # Safety
 * `s` must be NULL or come from this library.
 */
size_t pr_samples_len(const struct PrSamples *s);

/**
 * # Safety
 * `s` must be NULL or come from this library, and not be used afterwards.
 */
void pr_samples_free(struct PrSamples *s);

/**
 * Recovers the pole. `w_p_percent <= 0` selects the default band for the
 * noise level `epsilon`. Returns `NoPole` when no plateau exists; `out` is
 * then set to NULL.
 *
 * # Safety
 * `s` must come from this library; `out` must be writable.
 */
enum PrStatus pr_recover(const struct PrSamples *s,
                         double epsilon,
                         double w_p_percent,
                         struct PrEstimate **out);

/**
 * Pole position and residue.
 *
 * # Safety
 * `e` must come from this library; the four outputs must be writable.
 */
enum PrStatus pr_estimate_get(const struct PrEstimate *e,
                              double *z_re,
                              double *z_im,
                              double *r_re,
                              double *r_im);

/**
 * Spread of the position and residue ranges, per component.
 *
 * # Safety
 * `e` must come from this library; `out` must hold 4 doubles
 * (z re, z im, R re, R im).
 */
enum PrStatus pr_estimate_std(const struct PrEstimate *e, double *out);

/**
 * # Safety
 * `e` must be NULL or come from this library, and not be used afterwards.
 */
void pr_estimate_free(struct PrEstimate *e);

/**
 * Reconstructs every sample from the others and reports the relative RMS
 * error at the truncation in `0..=m_max` minimizing it. `e` may be NULL
 * for the analytic form.
 *
 * # Safety
 * `s` must come from this library, `e` NULL or from this library; the
 * outputs must be writable.
 */
enum PrStatus pr_reconstruction_delta(const struct PrSamples *s,
                                      const struct PrEstimate *e,
                                      size_t m_max,
                                      double *delta,
                                      size_t *m_t);

/**
 * Value at real `x` (node N sits at x = N) from the expansion truncated
 * at `m`. `e` may be NULL.
 *
 * # Safety
 * As for [`pr_reconstruction_delta`].
 */
enum PrStatus pr_interpolate(const struct PrSamples *s,
                             const struct PrEstimate *e,
                             size_t m,
                             double x,
                             double *re,
                             double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLE_RECOVERY_H */
