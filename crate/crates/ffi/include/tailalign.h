#ifndef TAILALIGN_H
#define TAILALIGN_H

/* Generated from the tailalign-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum TaStatus {
  // The call succeeded.
  TA_STATUS_OK = 0,
  // A required pointer argument was null.
  TA_STATUS_NULL_POINTER = 1,
  // An argument was out of range or otherwise invalid.
  TA_STATUS_INVALID_ARGUMENT = 2,
  // A numeric computation failed (overflow, underflow, or degenerate input).
  TA_STATUS_NUMERIC_FAILURE = 3,
} TaStatus;

// How raw scores are mapped into the unit interval when building a pool.
typedef enum TaNormalization {
  // Clamp each score into [0, 1].
  TA_NORMALIZATION_CLAMP01 = 0,
  // Affine map of the pool's [min, max] range onto [0, 1].
  TA_NORMALIZATION_MIN_MAX = 1,
  // Divide by the `r_max` argument.
  TA_NORMALIZATION_DIVIDE_RMAX = 2,
} TaNormalization;

// Selection-weight family.
typedef enum TaPolicy {
  // Hard argmax of the proxy reward.
  TA_POLICY_BON = 0,
  // Exponential re-weighting `exp(r/lambda)`.
  TA_POLICY_SBON = 1,
  // Affine re-weighting `1 + r/lambda`.
  TA_POLICY_ITP_AFFINE = 2,
  // Shifted-relu re-weighting `max(r - lambda, 0)`.
  TA_POLICY_ITP_RELU = 3,
  // Alpha-exponential re-weighting interpolating between Sbon and ItpAffine;
  // requires `alpha` in [1, 2].
  TA_POLICY_BOT = 4,
} TaPolicy;

// Opaque candidate pool: normalized proxy rewards for one prompt.
typedef struct TaPool TaPool;

// Additive decomposition of the selection-regret proxy.
typedef struct TaRegretBreakdown {
  // Finite-sample concentration term.
  double sampling_error;
  // Re-weighting distortion multiplier (scaled by the reward error inside `total`).
  double distortion;
  // Expected proxy-reward improvement of the re-weighted law over uniform.
  double gain;
  // `sampling_error + epsilon * distortion - gain`.
  double total;
} TaRegretBreakdown;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string; never null, never freed.
const char *ta_version(void);

// Copies the calling thread's most recent error message into `buf`.
//
// Returns the full message length in bytes (excluding the NUL terminator). When
// `buf` is non-null and `cap > 0`, up to `cap - 1` bytes are copied and the result
// is always NUL-terminated. A zero return means no error has been recorded.
//
// # Safety
// `buf` must either be null or point to at least `cap` writable bytes.
size_t ta_last_error(char *buf, size_t cap);

// Builds a candidate pool from `len` raw scores, normalizing them into [0, 1].
//
// `r_max` is consulted only for `TA_NORMALIZATION_DIVIDE_RMAX` and must then be
// positive. On success `*out` owns the pool; release it with [`ta_pool_free`].
//
// # Safety
// `scores` must point to `len` readable doubles and `out` to a writable pointer slot.
enum TaStatus ta_pool_new(const double *scores,
                          size_t len,
                          enum TaNormalization normalization,
                          double r_max,
                          struct TaPool **out);

// Number of candidates in the pool; zero if `pool` is null.
//
// # Safety
// `pool` must be null or a live handle from [`ta_pool_new`].
size_t ta_pool_len(const struct TaPool *pool);

// Releases a pool handle. Null is a no-op; a handle must not be freed twice.
//
// # Safety
// `pool` must be null or a live handle from [`ta_pool_new`], not used afterwards.
void ta_pool_free(struct TaPool *pool);

// Estimates the pool's upper-tail index from the order statistics of `1 - reward`.
//
// `cutoff_k = 0` selects the default `floor(sqrt(n))` rule. On success writes the
// estimate to `*out_kappa_hat` and the cutoff actually used to `*out_cutoff`.
//
// # Safety
// `pool` must be a live handle; out-pointers must be writable or null (skipped).
enum TaStatus ta_hill_estimate(const struct TaPool *pool,
                               size_t cutoff_k,
                               double *out_kappa_hat,
                               size_t *out_cutoff);

// Maps a tail-index estimate to an interpolation order via
// `alpha = 1 + kappa_hat / (kappa_hat + kappa0)`.
//
// # Safety
// `out_alpha` must be writable.
enum TaStatus ta_alpha_from_kappa(double kappa_hat, double kappa0, double *out_alpha);

// Computes the policy's selection probabilities over the pool.
//
// `out_probs` must have room for `ta_pool_len(pool)` doubles; they are written in
// candidate order and sum to 1. `lambda` is ignored by `TA_POLICY_BON`; `alpha` is
// consulted only by `TA_POLICY_BOT`.
//
// # Safety
// `pool` must be a live handle and `out_probs` writable for the pool length.
enum TaStatus ta_selection_probabilities(const struct TaPool *pool,
                                         enum TaPolicy policy,
                                         double lambda,
                                         double alpha,
                                         double *out_probs);

// Samples one candidate index from the policy's selection distribution.
//
// The draw is a deterministic function of the pool, the policy parameters, and
// `seed`.
//
// # Safety
// `pool` must be a live handle and `out_index` writable.
enum TaStatus ta_select(const struct TaPool *pool,
                        enum TaPolicy policy,
                        double lambda,
                        double alpha,
                        uint64_t seed,
                        size_t *out_index);

// Runs the full tail-adaptive pipeline: estimate the pool's tail index, map it to
// an interpolation order through the pivot `kappa0`, re-weight, and sample.
//
// Writes the sampled candidate index, the tail estimate, and the order actually
// used. For single-candidate pools no estimation happens and `kappa_hat`/`alpha`
// are set to NaN.
//
// # Safety
// `pool` must be a live handle; out-pointers must be writable or null (skipped).
enum TaStatus ta_select_adaptive(const struct TaPool *pool,
                                 double lambda,
                                 double kappa0,
                                 uint64_t seed,
                                 size_t *out_index,
                                 double *out_kappa_hat,
                                 double *out_alpha);

// Evaluates the deterministic regret proxy for one configuration.
//
// `kappa` is the tail index of the reward law, `lambda` the steering temperature,
// `n` the candidate budget, and `epsilon` the reward-error magnitude. `alpha` is
// consulted only by `TA_POLICY_BOT`, where it must lie in (1, 2].
//
// # Safety
// `out` must be writable.
enum TaStatus ta_regret_proxy(enum TaPolicy policy,
                              double kappa,
                              double lambda,
                              double alpha,
                              uint64_t n,
                              double epsilon,
                              struct TaRegretBreakdown *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAILALIGN_H */
