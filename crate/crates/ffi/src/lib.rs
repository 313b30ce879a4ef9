//! C ABI over the tail-adaptive selection library.
//!
//! Every function returns a [`TaStatus`] code and writes results through out-pointers;
//! candidate pools travel as opaque [`TaPool`] handles created by [`ta_pool_new`] and
//! released by [`ta_pool_free`]. A human-readable description of the most recent
//! failure on the calling thread is available through [`ta_last_error`].
//!
//! All randomness is deterministic: sampling functions take an explicit `seed` and
//! derive a private stream from it, so equal inputs and seeds reproduce equal
//! selections across processes and platforms.
//!
//! The companion header `include/tailalign.h` is generated from this file.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use tailalign::numerics::BetaTail;
use tailalign::policies::{
    bot_select_pipeline, normalize_rewards, selection_distribution, CandidatePool, ItpVariant,
    NormalizationMode, PolicySpec, RawScore,
};
use tailalign::regret::{regret_proxy, RegretFamily, RegretInputs};
use tailalign::tail::{default_cutoff, hill_estimate, map_alpha, PivotConfig, TailEstimate};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range or otherwise invalid.
    InvalidArgument = 2,
    /// A numeric computation failed (overflow, underflow, or degenerate input).
    NumericFailure = 3,
}

/// Selection-weight family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaPolicy {
    /// Hard argmax of the proxy reward.
    Bon = 0,
    /// Exponential re-weighting `exp(r/lambda)`.
    Sbon = 1,
    /// Affine re-weighting `1 + r/lambda`.
    ItpAffine = 2,
    /// Shifted-relu re-weighting `max(r - lambda, 0)`.
    ItpRelu = 3,
    /// Alpha-exponential re-weighting interpolating between Sbon and ItpAffine;
    /// requires `alpha` in [1, 2].
    Bot = 4,
}

/// How raw scores are mapped into the unit interval when building a pool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaNormalization {
    /// Clamp each score into [0, 1].
    Clamp01 = 0,
    /// Affine map of the pool's [min, max] range onto [0, 1].
    MinMax = 1,
    /// Divide by the `r_max` argument.
    DivideRmax = 2,
}

/// Additive decomposition of the selection-regret proxy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaRegretBreakdown {
    /// Finite-sample concentration term.
    pub sampling_error: f64,
    /// Re-weighting distortion multiplier (scaled by the reward error inside `total`).
    pub distortion: f64,
    /// Expected proxy-reward improvement of the re-weighted law over uniform.
    pub gain: f64,
    /// `sampling_error + epsilon * distortion - gain`.
    pub total: f64,
}

/// Opaque candidate pool: normalized proxy rewards for one prompt.
pub struct TaPool {
    inner: CandidatePool,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(message: &str) {
    LAST_ERROR.with(|slot| {
        let mut slot = slot.borrow_mut();
        slot.clear();
        slot.extend_from_slice(message.as_bytes());
    });
}

fn fail(status: TaStatus, message: impl AsRef<str>) -> TaStatus {
    set_last_error(message.as_ref());
    status
}

/// Runs `body` with panics converted into `NumericFailure` so unwinding never
/// crosses the ABI boundary.
fn guarded(body: impl FnOnce() -> TaStatus) -> TaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            fail(TaStatus::NumericFailure, format!("internal panic: {message}"))
        }
    }
}

/// Library version as a static NUL-terminated string; never null, never freed.
#[no_mangle]
pub extern "C" fn ta_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the calling thread's most recent error message into `buf`.
///
/// Returns the full message length in bytes (excluding the NUL terminator). When
/// `buf` is non-null and `cap > 0`, up to `cap - 1` bytes are copied and the result
/// is always NUL-terminated. A zero return means no error has been recorded.
///
/// # Safety
/// `buf` must either be null or point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ta_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        if !buf.is_null() && cap > 0 {
            let n = slot.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(slot.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        slot.len()
    })
}

/// Builds a candidate pool from `len` raw scores, normalizing them into [0, 1].
///
/// `r_max` is consulted only for `TA_NORMALIZATION_DIVIDE_RMAX` and must then be
/// positive. On success `*out` owns the pool; release it with [`ta_pool_free`].
///
/// # Safety
/// `scores` must point to `len` readable doubles and `out` to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ta_pool_new(
    scores: *const f64,
    len: usize,
    normalization: TaNormalization,
    r_max: f64,
    out: *mut *mut TaPool,
) -> TaStatus {
    guarded(|| {
        if scores.is_null() || out.is_null() {
            return fail(TaStatus::NullPointer, "scores and out must be non-null");
        }
        if len == 0 {
            return fail(TaStatus::InvalidArgument, "a pool needs at least one score");
        }
        let raw: Vec<RawScore> = std::slice::from_raw_parts(scores, len)
            .iter()
            .enumerate()
            .map(|(i, &score)| RawScore::new(format!("c{i}"), score))
            .collect();
        let mode = match normalization {
            TaNormalization::Clamp01 => NormalizationMode::Clamp01,
            TaNormalization::MinMax => NormalizationMode::MinMax,
            TaNormalization::DivideRmax => NormalizationMode::DivideRmax(r_max),
        };
        match normalize_rewards("pool", &raw, mode) {
            Ok(pool) => {
                *out = Box::into_raw(Box::new(TaPool { inner: pool }));
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::InvalidArgument, err.to_string()),
        }
    })
}

/// Number of candidates in the pool; zero if `pool` is null.
///
/// # Safety
/// `pool` must be null or a live handle from [`ta_pool_new`].
#[no_mangle]
pub unsafe extern "C" fn ta_pool_len(pool: *const TaPool) -> usize {
    if pool.is_null() {
        return 0;
    }
    (*pool).inner.len()
}

/// Releases a pool handle. Null is a no-op; a handle must not be freed twice.
///
/// # Safety
/// `pool` must be null or a live handle from [`ta_pool_new`], not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ta_pool_free(pool: *mut TaPool) {
    if !pool.is_null() {
        drop(Box::from_raw(pool));
    }
}

/// Estimates the pool's upper-tail index from the order statistics of `1 - reward`.
///
/// `cutoff_k = 0` selects the default `floor(sqrt(n))` rule. On success writes the
/// estimate to `*out_kappa_hat` and the cutoff actually used to `*out_cutoff`.
///
/// # Safety
/// `pool` must be a live handle; out-pointers must be writable or null (skipped).
#[no_mangle]
pub unsafe extern "C" fn ta_hill_estimate(
    pool: *const TaPool,
    cutoff_k: usize,
    out_kappa_hat: *mut f64,
    out_cutoff: *mut usize,
) -> TaStatus {
    guarded(|| {
        if pool.is_null() {
            return fail(TaStatus::NullPointer, "pool must be non-null");
        }
        let rewards = (*pool).inner.proxy_rewards();
        let cutoff = if cutoff_k == 0 {
            default_cutoff(rewards.len())
        } else {
            cutoff_k
        };
        match hill_estimate(&rewards, cutoff) {
            Ok(estimate) => {
                if !out_kappa_hat.is_null() {
                    *out_kappa_hat = estimate.kappa_hat();
                }
                if !out_cutoff.is_null() {
                    *out_cutoff = estimate.cutoff_k();
                }
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::NumericFailure, err.to_string()),
        }
    })
}

/// Maps a tail-index estimate to an interpolation order via
/// `alpha = 1 + kappa_hat / (kappa_hat + kappa0)`.
///
/// # Safety
/// `out_alpha` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_alpha_from_kappa(
    kappa_hat: f64,
    kappa0: f64,
    out_alpha: *mut f64,
) -> TaStatus {
    guarded(|| {
        if out_alpha.is_null() {
            return fail(TaStatus::NullPointer, "out_alpha must be non-null");
        }
        let pivot = match PivotConfig::explicit(kappa0) {
            Ok(pivot) => pivot,
            Err(err) => return fail(TaStatus::InvalidArgument, err.to_string()),
        };
        match map_alpha(kappa_hat, pivot) {
            Ok(alpha) => {
                *out_alpha = alpha;
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::InvalidArgument, err.to_string()),
        }
    })
}

fn build_spec(policy: TaPolicy, lambda: f64, alpha: f64) -> Result<PolicySpec, String> {
    match policy {
        TaPolicy::Bon => Ok(PolicySpec::bon()),
        TaPolicy::Sbon => PolicySpec::sbon(lambda).map_err(|e| e.to_string()),
        TaPolicy::ItpAffine => {
            PolicySpec::itp(lambda, ItpVariant::Affine).map_err(|e| e.to_string())
        }
        TaPolicy::ItpRelu => PolicySpec::itp(lambda, ItpVariant::Relu).map_err(|e| e.to_string()),
        TaPolicy::Bot => PolicySpec::bot(lambda, alpha).map_err(|e| e.to_string()),
    }
}

/// Computes the policy's selection probabilities over the pool.
///
/// `out_probs` must have room for `ta_pool_len(pool)` doubles; they are written in
/// candidate order and sum to 1. `lambda` is ignored by `TA_POLICY_BON`; `alpha` is
/// consulted only by `TA_POLICY_BOT`.
///
/// # Safety
/// `pool` must be a live handle and `out_probs` writable for the pool length.
#[no_mangle]
pub unsafe extern "C" fn ta_selection_probabilities(
    pool: *const TaPool,
    policy: TaPolicy,
    lambda: f64,
    alpha: f64,
    out_probs: *mut f64,
) -> TaStatus {
    guarded(|| {
        if pool.is_null() || out_probs.is_null() {
            return fail(TaStatus::NullPointer, "pool and out_probs must be non-null");
        }
        let spec = match build_spec(policy, lambda, alpha) {
            Ok(spec) => spec,
            Err(message) => return fail(TaStatus::InvalidArgument, message),
        };
        match selection_distribution(&spec, &(*pool).inner) {
            Ok(distribution) => {
                let probs = distribution.probs().probs();
                std::ptr::copy_nonoverlapping(probs.as_ptr(), out_probs, probs.len());
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::NumericFailure, err.to_string()),
        }
    })
}

/// Samples one candidate index from the policy's selection distribution.
///
/// The draw is a deterministic function of the pool, the policy parameters, and
/// `seed`.
///
/// # Safety
/// `pool` must be a live handle and `out_index` writable.
#[no_mangle]
pub unsafe extern "C" fn ta_select(
    pool: *const TaPool,
    policy: TaPolicy,
    lambda: f64,
    alpha: f64,
    seed: u64,
    out_index: *mut usize,
) -> TaStatus {
    guarded(|| {
        if pool.is_null() || out_index.is_null() {
            return fail(TaStatus::NullPointer, "pool and out_index must be non-null");
        }
        let spec = match build_spec(policy, lambda, alpha) {
            Ok(spec) => spec,
            Err(message) => return fail(TaStatus::InvalidArgument, message),
        };
        match selection_distribution(&spec, &(*pool).inner) {
            Ok(distribution) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                *out_index = distribution.probs().sample_index(&mut rng);
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::NumericFailure, err.to_string()),
        }
    })
}

/// Runs the full tail-adaptive pipeline: estimate the pool's tail index, map it to
/// an interpolation order through the pivot `kappa0`, re-weight, and sample.
///
/// Writes the sampled candidate index, the tail estimate, and the order actually
/// used. For single-candidate pools no estimation happens and `kappa_hat`/`alpha`
/// are set to NaN.
///
/// # Safety
/// `pool` must be a live handle; out-pointers must be writable or null (skipped).
#[no_mangle]
pub unsafe extern "C" fn ta_select_adaptive(
    pool: *const TaPool,
    lambda: f64,
    kappa0: f64,
    seed: u64,
    out_index: *mut usize,
    out_kappa_hat: *mut f64,
    out_alpha: *mut f64,
) -> TaStatus {
    guarded(|| {
        if pool.is_null() || out_index.is_null() {
            return fail(TaStatus::NullPointer, "pool and out_index must be non-null");
        }
        let pivot = match PivotConfig::explicit(kappa0) {
            Ok(pivot) => pivot,
            Err(err) => return fail(TaStatus::InvalidArgument, err.to_string()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let selection =
            match bot_select_pipeline(&(*pool).inner, lambda, pivot, None, &mut rng) {
                Ok(selection) => selection,
                Err(err) => return fail(TaStatus::NumericFailure, err.to_string()),
            };
        let index = (*pool)
            .inner
            .candidates()
            .iter()
            .position(|c| c.candidate_id == selection.candidate_id)
            .expect("selected id comes from the pool");
        *out_index = index;
        if !out_kappa_hat.is_null() {
            *out_kappa_hat = selection
                .estimate
                .as_ref()
                .map_or(f64::NAN, TailEstimate::kappa_hat);
        }
        if !out_alpha.is_null() {
            *out_alpha = selection
                .estimate
                .as_ref()
                .and_then(TailEstimate::alpha)
                .unwrap_or(f64::NAN);
        }
        TaStatus::Ok
    })
}

/// Evaluates the deterministic regret proxy for one configuration.
///
/// `kappa` is the tail index of the reward law, `lambda` the steering temperature,
/// `n` the candidate budget, and `epsilon` the reward-error magnitude. `alpha` is
/// consulted only by `TA_POLICY_BOT`, where it must lie in (1, 2].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_regret_proxy(
    policy: TaPolicy,
    kappa: f64,
    lambda: f64,
    alpha: f64,
    n: u64,
    epsilon: f64,
    out: *mut TaRegretBreakdown,
) -> TaStatus {
    guarded(|| {
        if out.is_null() {
            return fail(TaStatus::NullPointer, "out must be non-null");
        }
        let family = match policy {
            TaPolicy::Bon => RegretFamily::Bon,
            TaPolicy::Sbon => RegretFamily::Sbon,
            TaPolicy::ItpAffine => RegretFamily::ItpAffine,
            TaPolicy::ItpRelu => RegretFamily::ItpRelu,
            TaPolicy::Bot => RegretFamily::Bot,
        };
        // The shared input validator needs an interpolation order even for the
        // families that never read one.
        let alpha_effective = if policy == TaPolicy::Bot { alpha } else { 1.5 };
        let tail = match BetaTail::new(kappa) {
            Ok(tail) => tail,
            Err(err) => return fail(TaStatus::InvalidArgument, err.to_string()),
        };
        let inputs = match RegretInputs::new(tail, lambda, alpha_effective, n, epsilon) {
            Ok(inputs) => inputs,
            Err(err) => return fail(TaStatus::InvalidArgument, err.to_string()),
        };
        match regret_proxy(family, &inputs) {
            Ok(b) => {
                *out = TaRegretBreakdown {
                    sampling_error: b.sampling_error,
                    distortion: b.distortion,
                    gain: b.gain,
                    total: b.total,
                };
                TaStatus::Ok
            }
            Err(err) => fail(TaStatus::NumericFailure, err.to_string()),
        }
    })
}
