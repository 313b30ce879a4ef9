//! Per-prompt tail-index estimation and the κ̂ → α interpolation mapping.
//!
//! For rewards `r ∈ [0,1]` the endpoint gaps `g = 1 − r` behave, under the endpoint-gap
//! Beta model, like a power law near 0: `Pr(g ≤ u) = u^{1/κ}`. Equivalently `1/g` is
//! Pareto with exponent 1/κ, so κ is estimated by the Hill estimator on the smallest
//! gaps (largest rewards): with gaps sorted ascending `g₍₁₎ ≤ … ≤ g₍N₎`,
//!
//! ```text
//! κ̂ = (1/K) Σ_{i=1..K} ln( g₍K+1₎ / g₍i₎ ).
//! ```
//!
//! The estimated index is mapped to a deformation order through a pivot κ₀ > 0:
//!
//! ```text
//! α(κ̂) = 1 + κ̂/(κ̂ + κ₀)  ∈ [1, 2),
//! ```
//!
//! which is 1 at κ̂ = 0 (light tail → exponential tilting), 1.5 at the pivot, and
//! approaches 2 (affine tilting) as κ̂ → ∞. The pivot is either supplied explicitly or
//! calibrated as the median κ̂ across a batch of prompts.
//!
//! Floating-point caution: near the endpoint, `1 − r` evaluated in f64 quantizes tiny
//! gaps (and collapses gaps below ~1e−16 to exactly 0), which biases κ̂ downward for very
//! heavy tails at large N. Callers that hold gaps natively (for example a simulator that
//! draws them directly) should use [`hill_estimate_from_gaps`], which skips the lossy
//! `1 − r` round trip; [`hill_estimate`] is the reward-facing wrapper.

use thiserror::Error;

/// Lower clamp applied to gaps that are exactly 0 (rewards exactly 1), where the log is
/// singular. Positive gaps, however tiny, are kept untouched.
pub const GAP_FLOOR: f64 = 1e-9;

/// Default floor for a calibrated pivot when the median estimate is 0.
pub const PIVOT_FLOOR: f64 = 1e-3;

/// Cutoff size below which an estimate carries the advisory low-confidence flag.
const LOW_CONFIDENCE_CUTOFF: usize = 4;

/// Errors from tail estimation and pivot handling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TailError {
    /// Estimation needs at least two samples.
    #[error("hill estimation needs at least 2 samples, got {n}")]
    InsufficientSamples { n: usize },
    /// The cutoff must satisfy 1 ≤ K ≤ N−1.
    #[error("cutoff {cutoff_k} is outside 1..={max} for {n} samples")]
    InvalidCutoff { cutoff_k: usize, n: usize, max: usize },
    /// Rewards (and gaps) must lie in [0, 1].
    #[error("sample {index} is {value}, outside [0, 1]")]
    SampleOutOfRange { index: usize, value: f64 },
    /// The κ̂ → α map is only defined for κ̂ ≥ 0.
    #[error("kappa_hat must be non-negative and finite, got {0}")]
    NegativeKappaHat(f64),
    /// A pivot must be positive.
    #[error("pivot kappa0 must be positive and finite, got {0}")]
    InvalidPivot(f64),
    /// Calibration needs at least one estimate.
    #[error("cannot calibrate a pivot from an empty estimate set")]
    EmptyCalibration,
    /// Estimate invariants violated on direct construction.
    #[error("invalid estimate: {reason}")]
    InvalidEstimate { reason: String },
}

/// Where a pivot value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotSource {
    /// Supplied directly by the caller.
    Explicit,
    /// Calibrated as the median κ̂ over a prompt batch.
    MedianOfPrompts,
}

/// The pivot κ₀ > 0 that centers the κ̂ → α map (α = 1.5 at κ̂ = κ₀).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotConfig {
    kappa0: f64,
    source: PivotSource,
}

impl PivotConfig {
    /// An explicitly chosen pivot.
    ///
    /// # Errors
    /// κ₀ must be positive and finite.
    pub fn explicit(kappa0: f64) -> Result<Self, TailError> {
        Self::with_source(kappa0, PivotSource::Explicit)
    }

    fn with_source(kappa0: f64, source: PivotSource) -> Result<Self, TailError> {
        if !kappa0.is_finite() || kappa0 <= 0.0 {
            return Err(TailError::InvalidPivot(kappa0));
        }
        Ok(Self { kappa0, source })
    }

    /// The pivot value κ₀.
    pub fn kappa0(self) -> f64 {
        self.kappa0
    }

    /// How the pivot was obtained.
    pub fn source(self) -> PivotSource {
        self.source
    }
}

/// A per-prompt tail estimate: κ̂, the cutoff it used, and (once a pivot is applied) the
/// deformation order α = 1 + κ̂/(κ̂ + κ₀).
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    kappa_hat: f64,
    cutoff_k: usize,
    n_samples: usize,
    alpha: Option<f64>,
    low_confidence: bool,
}

impl TailEstimate {
    /// Builds an estimate directly (primarily for calibration inputs assembled outside
    /// [`hill_estimate`]). `alpha` starts unset.
    ///
    /// # Errors
    /// Requires κ̂ ≥ 0 finite and 1 ≤ cutoff_k < n_samples.
    pub fn new(kappa_hat: f64, cutoff_k: usize, n_samples: usize) -> Result<Self, TailError> {
        if !kappa_hat.is_finite() || kappa_hat < 0.0 {
            return Err(TailError::InvalidEstimate {
                reason: format!("kappa_hat {kappa_hat} must be finite and >= 0"),
            });
        }
        if cutoff_k == 0 || cutoff_k >= n_samples {
            return Err(TailError::InvalidEstimate {
                reason: format!("cutoff {cutoff_k} must satisfy 1 <= K < n ({n_samples})"),
            });
        }
        Ok(Self {
            kappa_hat,
            cutoff_k,
            n_samples,
            alpha: None,
            low_confidence: cutoff_k < LOW_CONFIDENCE_CUTOFF,
        })
    }

    /// The Hill estimate κ̂ ≥ 0.
    pub fn kappa_hat(&self) -> f64 {
        self.kappa_hat
    }

    /// The order-statistic cutoff K the estimate used.
    pub fn cutoff_k(&self) -> usize {
        self.cutoff_k
    }

    /// The sample count N.
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// The deformation order, present once a pivot has been applied.
    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    /// Advisory flag: the cutoff was too small (K < 4) for the estimate to be trusted.
    /// Does not change the estimate.
    pub fn low_confidence(&self) -> bool {
        self.low_confidence
    }

    /// Returns a copy with α = 1 + κ̂/(κ̂ + κ₀) filled in from the given pivot.
    ///
    /// # Errors
    /// Propagates [`map_alpha`] domain errors.
    pub fn with_pivot(&self, pivot: PivotConfig) -> Result<Self, TailError> {
        let alpha = map_alpha(self.kappa_hat, pivot)?;
        Ok(Self {
            alpha: Some(alpha),
            ..self.clone()
        })
    }
}

/// Hill estimator over endpoint gaps supplied directly (`g = 1 − r`, each in [0, 1]).
///
/// Gaps exactly equal to 0 are clamped to [`GAP_FLOOR`] before taking logs; the clamp is
/// applied before sorting so ordering stays consistent. This is the precision-preserving
/// entry point: it never forms `1 − r` in f64, so callers holding gaps natively lose
/// nothing near the endpoint.
///
/// # Errors
/// Fewer than 2 gaps, cutoff outside `1..=N−1`, or a gap outside [0, 1].
pub fn hill_estimate_from_gaps(gaps: &[f64], cutoff_k: usize) -> Result<TailEstimate, TailError> {
    let n = gaps.len();
    if n < 2 {
        return Err(TailError::InsufficientSamples { n });
    }
    if cutoff_k == 0 || cutoff_k > n - 1 {
        return Err(TailError::InvalidCutoff {
            cutoff_k,
            n,
            max: n - 1,
        });
    }
    for (index, &g) in gaps.iter().enumerate() {
        if !(0.0..=1.0).contains(&g) {
            return Err(TailError::SampleOutOfRange { index, value: g });
        }
    }
    let mut sorted: Vec<f64> = gaps
        .iter()
        .map(|&g| if g == 0.0 { GAP_FLOOR } else { g })
        .collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("gaps are finite"));
    let pivot_gap = sorted[cutoff_k];
    let sum: f64 = sorted[..cutoff_k]
        .iter()
        .map(|&g| (pivot_gap / g).ln())
        .sum();
    let kappa_hat = (sum / cutoff_k as f64).max(0.0);
    Ok(TailEstimate {
        kappa_hat,
        cutoff_k,
        n_samples: n,
        alpha: None,
        low_confidence: cutoff_k < LOW_CONFIDENCE_CUTOFF,
    })
}

/// Hill estimator over rewards in [0, 1].
///
/// Works on the gaps `1 − r` of the descending-sorted rewards; rewards exactly equal to 1
/// are clamped to `1 − GAP_FLOOR` before the log. The estimate depends on the input only
/// through the top K+1 gap values, so it is invariant under permutation and under any
/// modification of rewards below rank K+1.
///
/// # Errors
/// Fewer than 2 rewards, cutoff outside `1..=N−1`, or a reward outside [0, 1].
pub fn hill_estimate(rewards: &[f64], cutoff_k: usize) -> Result<TailEstimate, TailError> {
    let gaps: Vec<f64> = rewards.iter().map(|&r| 1.0 - r).collect();
    // Delegation validates range: r ∈ [0,1] iff g ∈ [0,1].
    hill_estimate_from_gaps(&gaps, cutoff_k)
}

/// The cutoff rule K = max(1, ⌊√n⌋), additionally capped at n−1.
///
/// Intended for n ≥ 2 (the estimator's own precondition).
pub fn default_cutoff(n: usize) -> usize {
    let mut k = (n as f64).sqrt().floor() as usize;
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    while k > 1 && k * k > n {
        k -= 1;
    }
    k.max(1).min(n.saturating_sub(1)).max(1)
}

/// The interpolation map α(κ̂) = 1 + κ̂/(κ̂ + κ₀) ∈ [1, 2).
///
/// Strictly increasing in κ̂; 1 at κ̂ = 0; 1.5 at κ̂ = κ₀; approaches 2 as κ̂ → ∞.
///
/// # Errors
/// Negative or non-finite κ̂.
pub fn map_alpha(kappa_hat: f64, pivot: PivotConfig) -> Result<f64, TailError> {
    if !kappa_hat.is_finite() || kappa_hat < 0.0 {
        return Err(TailError::NegativeKappaHat(kappa_hat));
    }
    Ok(1.0 + kappa_hat / (kappa_hat + pivot.kappa0()))
}

/// Calibrates a pivot as the median κ̂ across per-prompt estimates, using
/// [`PIVOT_FLOOR`] when the median is 0.
///
/// # Errors
/// Empty input.
pub fn calibrate_pivot(estimates: &[TailEstimate]) -> Result<PivotConfig, TailError> {
    calibrate_pivot_with_floor(estimates, PIVOT_FLOOR)
}

/// [`calibrate_pivot`] with a configurable fallback floor for an all-zero batch.
///
/// The median is the lower median for even counts (deterministic, order-statistic exact).
///
/// # Errors
/// Empty input, or a non-positive floor.
pub fn calibrate_pivot_with_floor(
    estimates: &[TailEstimate],
    floor: f64,
) -> Result<PivotConfig, TailError> {
    if estimates.is_empty() {
        return Err(TailError::EmptyCalibration);
    }
    if !floor.is_finite() || floor <= 0.0 {
        return Err(TailError::InvalidPivot(floor));
    }
    let mut kappas: Vec<f64> = estimates.iter().map(TailEstimate::kappa_hat).collect();
    kappas.sort_by(|a, b| a.partial_cmp(b).expect("kappa_hat is finite"));
    let median = kappas[(kappas.len() - 1) / 2];
    let kappa0 = if median == 0.0 { floor } else { median };
    PivotConfig::with_source(kappa0, PivotSource::MedianOfPrompts)
}
