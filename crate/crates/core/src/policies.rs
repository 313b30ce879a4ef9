//! Selection policies over scored candidate pools.
//!
//! Every policy turns normalized proxy rewards `r̂ ∈ [0,1]` into non-negative selection
//! weights over the pool, normalizes them into a selection distribution, and samples a
//! candidate:
//!
//! ```text
//! bon   w_i = 1{r̂_i = max r̂}/|argmax|     hard argmax (ties split uniformly)
//! sbon  w_i = exp(r̂_i/λ)                  exponential tilting
//! itp   w_i = 1 + r̂_i/λ   (affine)        pessimistic affine tilting
//!       w_i = [r̂_i/λ]₊    (relu)          variant that drops the constant
//! bot   w_i = exp_α(r̂_i/λ)                α-exponential, α from the pool's tail index
//! ```
//!
//! `exp_α` interpolates the family: α = 1 recovers `sbon` exactly and α = 2 recovers the
//! affine `itp` weight, so the tail-adaptive policy moves continuously between exponential
//! optimism for light tails and affine pessimism for heavy tails.
//!
//! Probabilities for the exponential-family policies (`sbon`, `bot`) are computed in log
//! space (log-sum-exp over `r̂/λ`, resp. `γ·ln1p((α−1)r̂/λ)`), so steering temperatures as
//! small as 1e−3 cannot overflow the normalization; the recorded *unnormalized* weights
//! are the literal `exp` values and may be `+∞` in such extreme regimes.
//!
//! The reference policy over a pool is uniform: pools hold i.i.d. draws from the sampling
//! policy, so the empirical re-weighted distribution is the weight-normalized one and all
//! divergence diagnostics are taken against uniform.

use crate::numerics::{
    chi2_divergence, kl_divergence, tsallis_divergence, tv_distance, AlphaOrder,
    DiscreteDistribution, NumericsError,
};
use crate::tail::{default_cutoff, hill_estimate, PivotConfig, TailError, TailEstimate};
use rand::Rng;
use thiserror::Error;

/// Errors from pool construction, normalization, and policy evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    /// Pools must contain at least one candidate.
    #[error("candidate pool for prompt {prompt_id:?} is empty")]
    EmptyPool { prompt_id: String },
    /// A raw reward was NaN or ±∞.
    #[error("candidate {candidate_id:?} has non-finite raw reward {value}")]
    NonFiniteReward { candidate_id: String, value: f64 },
    /// divide_rmax needs a positive ceiling.
    #[error("divide_rmax requires r_max > 0, got {0}")]
    InvalidRmax(f64),
    /// divide_rmax saw a raw reward outside [0, r_max].
    #[error("candidate {candidate_id:?} raw reward {value} is outside [0, {r_max}]")]
    RawRewardOutOfRange {
        candidate_id: String,
        value: f64,
        r_max: f64,
    },
    /// The spec's parameters are inconsistent with its family.
    #[error("invalid policy spec: {reason}")]
    InvalidSpec { reason: String },
    /// Forwarded scalar-numerics failures.
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    /// Forwarded tail-estimation failures.
    #[error(transparent)]
    Tail(#[from] TailError),
}

/// One candidate with raw and normalized proxy rewards and an optional oracle reward.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCandidate {
    /// Opaque identifier, unique within its pool.
    pub candidate_id: String,
    /// Reward-model output in its native units.
    pub proxy_reward_raw: f64,
    /// Normalized proxy reward in [0, 1].
    pub proxy_reward: f64,
    /// Held-out true quality, when known.
    pub true_reward: Option<f64>,
}

/// An unnormalized candidate score, the input to [`normalize_rewards`].
#[derive(Debug, Clone, PartialEq)]
pub struct RawScore {
    pub candidate_id: String,
    pub proxy_reward_raw: f64,
    pub true_reward: Option<f64>,
}

impl RawScore {
    pub fn new(candidate_id: impl Into<String>, proxy_reward_raw: f64) -> Self {
        Self {
            candidate_id: candidate_id.into(),
            proxy_reward_raw,
            true_reward: None,
        }
    }

    pub fn with_true_reward(mut self, true_reward: f64) -> Self {
        self.true_reward = Some(true_reward);
        self
    }
}

/// How raw rewards were mapped into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizationMode {
    /// Divide by a known positive ceiling; raw rewards must lie in [0, r_max].
    DivideRmax(f64),
    /// Affine map sending the pool minimum to 0 and maximum to 1.
    MinMax,
    /// Clamp into [0, 1] (identity for already-normalized rewards).
    Clamp01,
}

/// Normalization metadata stored on a pool — sufficient to invert the mapping (up to
/// clamping) via [`NormalizationRecord::denormalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizationRecord {
    DivideRmax { r_max: f64 },
    MinMax { min: f64, max: f64 },
    Clamp01,
}

impl NormalizationRecord {
    /// Maps a normalized value back to raw units. For a degenerate min-max pool
    /// (max = min) every candidate maps back to that shared raw value; for clamp01 the
    /// inverse is the identity (clamped values are not recoverable).
    pub fn denormalize(&self, normalized: f64) -> f64 {
        match *self {
            NormalizationRecord::DivideRmax { r_max } => normalized * r_max,
            NormalizationRecord::MinMax { min, max } => {
                if max > min {
                    min + normalized * (max - min)
                } else {
                    min
                }
            }
            NormalizationRecord::Clamp01 => normalized,
        }
    }
}

/// All candidates for one prompt, plus how their rewards were normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePool {
    prompt_id: String,
    candidates: Vec<ScoredCandidate>,
    normalization: NormalizationRecord,
    degenerate_normalization: bool,
}

impl CandidatePool {
    /// Builds a pool from candidates that are already normalized (proxy rewards in
    /// [0, 1]); records a clamp01 normalization. Used by the synthetic generator.
    ///
    /// # Errors
    /// Empty pools or out-of-range proxy rewards.
    pub fn from_normalized(
        prompt_id: impl Into<String>,
        candidates: Vec<ScoredCandidate>,
    ) -> Result<Self, PolicyError> {
        let prompt_id = prompt_id.into();
        if candidates.is_empty() {
            return Err(PolicyError::EmptyPool { prompt_id });
        }
        for c in &candidates {
            if !c.proxy_reward.is_finite() || !(0.0..=1.0).contains(&c.proxy_reward) {
                return Err(PolicyError::NonFiniteReward {
                    candidate_id: c.candidate_id.clone(),
                    value: c.proxy_reward,
                });
            }
        }
        Ok(Self {
            prompt_id,
            candidates,
            normalization: NormalizationRecord::Clamp01,
            degenerate_normalization: false,
        })
    }

    /// The prompt this pool belongs to.
    pub fn prompt_id(&self) -> &str {
        &self.prompt_id
    }

    /// The scored candidates, in ingestion order.
    pub fn candidates(&self) -> &[ScoredCandidate] {
        &self.candidates
    }

    /// Pool size N.
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    /// Always false; empty pools cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The normalized proxy rewards in candidate order.
    pub fn proxy_rewards(&self) -> Vec<f64> {
        self.candidates.iter().map(|c| c.proxy_reward).collect()
    }

    /// How raw rewards were normalized.
    pub fn normalization(&self) -> NormalizationRecord {
        self.normalization
    }

    /// Whether normalization hit a degenerate case (min-max over an all-equal or
    /// single-candidate pool, mapped to 0.5).
    pub fn degenerate_normalization(&self) -> bool {
        self.degenerate_normalization
    }

    /// A sub-pool containing the candidates at `indices`, preserving metadata.
    ///
    /// # Errors
    /// Empty index sets or out-of-bounds indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, PolicyError> {
        if indices.is_empty() {
            return Err(PolicyError::EmptyPool {
                prompt_id: self.prompt_id.clone(),
            });
        }
        let candidates = indices
            .iter()
            .map(|&i| self.candidates[i].clone())
            .collect();
        Ok(Self {
            prompt_id: self.prompt_id.clone(),
            candidates,
            normalization: self.normalization,
            degenerate_normalization: self.degenerate_normalization,
        })
    }
}

/// Normalizes raw scores into a [`CandidatePool`].
///
/// `divide_rmax` preserves order and ratios; `min_max` sends the pool minimum to 0 and
/// maximum to 1, mapping every candidate of a degenerate (all-equal or single-candidate)
/// pool to 0.5 and setting the pool's degenerate flag; `clamp01` clips into [0, 1].
///
/// # Errors
/// Empty input, non-finite raw rewards, a non-positive `r_max`, or a raw reward outside
/// `[0, r_max]` in divide_rmax mode.
pub fn normalize_rewards(
    prompt_id: impl Into<String>,
    raw: &[RawScore],
    mode: NormalizationMode,
) -> Result<CandidatePool, PolicyError> {
    let prompt_id = prompt_id.into();
    if raw.is_empty() {
        return Err(PolicyError::EmptyPool { prompt_id });
    }
    for score in raw {
        if !score.proxy_reward_raw.is_finite() {
            return Err(PolicyError::NonFiniteReward {
                candidate_id: score.candidate_id.clone(),
                value: score.proxy_reward_raw,
            });
        }
    }
    let mut degenerate = false;
    let (record, map): (NormalizationRecord, Box<dyn Fn(f64) -> f64>) = match mode {
        NormalizationMode::DivideRmax(r_max) => {
            if !r_max.is_finite() || r_max <= 0.0 {
                return Err(PolicyError::InvalidRmax(r_max));
            }
            for score in raw {
                if score.proxy_reward_raw < 0.0 || score.proxy_reward_raw > r_max {
                    return Err(PolicyError::RawRewardOutOfRange {
                        candidate_id: score.candidate_id.clone(),
                        value: score.proxy_reward_raw,
                        r_max,
                    });
                }
            }
            (
                NormalizationRecord::DivideRmax { r_max },
                Box::new(move |x| x / r_max),
            )
        }
        NormalizationMode::MinMax => {
            let min = raw
                .iter()
                .map(|s| s.proxy_reward_raw)
                .fold(f64::INFINITY, f64::min);
            let max = raw
                .iter()
                .map(|s| s.proxy_reward_raw)
                .fold(f64::NEG_INFINITY, f64::max);
            if max > min {
                (
                    NormalizationRecord::MinMax { min, max },
                    Box::new(move |x| (x - min) / (max - min)),
                )
            } else {
                degenerate = true;
                (
                    NormalizationRecord::MinMax { min, max },
                    Box::new(|_| 0.5),
                )
            }
        }
        NormalizationMode::Clamp01 => (
            NormalizationRecord::Clamp01,
            Box::new(|x: f64| x.clamp(0.0, 1.0)),
        ),
    };
    let candidates = raw
        .iter()
        .map(|score| ScoredCandidate {
            candidate_id: score.candidate_id.clone(),
            proxy_reward_raw: score.proxy_reward_raw,
            proxy_reward: map(score.proxy_reward_raw),
            true_reward: score.true_reward,
        })
        .collect();
    Ok(CandidatePool {
        prompt_id,
        candidates,
        normalization: record,
        degenerate_normalization: degenerate,
    })
}

/// The selection family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolicyFamily {
    Bon,
    Sbon,
    Itp,
    Bot,
}

impl PolicyFamily {
    /// Stable lowercase name used in tables and CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            PolicyFamily::Bon => "bon",
            PolicyFamily::Sbon => "sbon",
            PolicyFamily::Itp => "itp",
            PolicyFamily::Bot => "bot",
        }
    }
}

impl std::fmt::Display for PolicyFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which ITP weight form to use. The affine form `1 + r̂/λ` is the default (it is the one
/// whose regret expansions are exact); the relu form `[r̂/λ]₊` is retained as a variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ItpVariant {
    #[default]
    Affine,
    Relu,
}

/// How `bon` resolves ties at the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Split the selection probability uniformly over all maximizers (default).
    #[default]
    UniformSplit,
    /// Put all mass on the lowest-index maximizer (fully deterministic selection).
    LowestIndex,
}

/// A fully-parameterized selection policy.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicySpec {
    family: PolicyFamily,
    lambda: f64,
    alpha: Option<f64>,
    itp_variant: ItpVariant,
    tie_break: TieBreak,
}

impl PolicySpec {
    /// Hard best-of-pool selection. λ is irrelevant for this family and stored as 1.
    pub fn bon() -> Self {
        Self {
            family: PolicyFamily::Bon,
            lambda: 1.0,
            alpha: None,
            itp_variant: ItpVariant::default(),
            tie_break: TieBreak::default(),
        }
    }

    /// Exponential tilting at temperature λ > 0.
    pub fn sbon(lambda: f64) -> Result<Self, PolicyError> {
        Self::check_lambda(lambda)?;
        Ok(Self {
            family: PolicyFamily::Sbon,
            lambda,
            alpha: None,
            itp_variant: ItpVariant::default(),
            tie_break: TieBreak::default(),
        })
    }

    /// Pessimistic tilting at temperature λ > 0 with the given weight variant.
    pub fn itp(lambda: f64, variant: ItpVariant) -> Result<Self, PolicyError> {
        Self::check_lambda(lambda)?;
        Ok(Self {
            family: PolicyFamily::Itp,
            lambda,
            alpha: None,
            itp_variant: variant,
            tie_break: TieBreak::default(),
        })
    }

    /// α-exponential tilting at temperature λ > 0 and order α ∈ [1, 2].
    ///
    /// α = 1 is the exponential endpoint (identical to `sbon`), α = 2 the affine endpoint
    /// (identical to affine `itp`); the tail pipeline supplies α from a Hill estimate.
    pub fn bot(lambda: f64, alpha: f64) -> Result<Self, PolicyError> {
        Self::check_lambda(lambda)?;
        if !alpha.is_finite() || !(1.0..=2.0).contains(&alpha) {
            return Err(PolicyError::InvalidSpec {
                reason: format!("bot requires alpha in [1, 2], got {alpha}"),
            });
        }
        Ok(Self {
            family: PolicyFamily::Bot,
            lambda,
            alpha: Some(alpha),
            itp_variant: ItpVariant::default(),
            tie_break: TieBreak::default(),
        })
    }

    fn check_lambda(lambda: f64) -> Result<(), PolicyError> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(PolicyError::InvalidSpec {
                reason: format!("lambda must be positive and finite, got {lambda}"),
            });
        }
        Ok(())
    }

    /// Replaces the bon tie rule.
    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn family(&self) -> PolicyFamily {
        self.family
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn itp_variant(&self) -> ItpVariant {
        self.itp_variant
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    /// Stable label for tables and plots: the family name, with the ITP variant suffixed
    /// when it deviates from the default affine form.
    pub fn label(&self) -> String {
        match (self.family, self.itp_variant) {
            (PolicyFamily::Itp, ItpVariant::Relu) => "itp-relu".to_string(),
            (family, _) => family.name().to_string(),
        }
    }
}

/// Non-negative selection weights for a pool, with the all-zero fallback flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyWeights {
    /// One weight per candidate, in pool order. Exponential-family weights may overflow
    /// to `+∞` at extreme temperatures; probabilities are computed in log space instead.
    pub weights: Vec<f64>,
    /// True when the weight vector was identically zero (relu ITP on an all-zero pool)
    /// and a uniform fallback was substituted.
    pub uniform_fallback: bool,
}

/// Divergence and gain diagnostics of a selection distribution against the uniform
/// reference over its pool.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDiagnostics {
    /// `Σ pᵢ·r̂ᵢ − mean(r̂)`: expected proxy reward improvement over uniform sampling.
    pub proxy_gain: f64,
    pub kl_to_uniform: f64,
    pub chi2_to_uniform: f64,
    /// Tsallis divergence at [`tsallis order`](SelectionDiagnostics::tsallis_order).
    pub tsallis_to_uniform: f64,
    /// The order used for `tsallis_to_uniform`: the policy's own α for `bot`, 1 (KL) for
    /// `sbon`, and 2 (χ²) for `bon`/`itp`.
    pub tsallis_order: f64,
}

/// A normalized selection distribution over one pool.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDistribution {
    probs: DiscreteDistribution,
    weights_unnormalized: Vec<f64>,
    uniform_fallback: bool,
    diagnostics: SelectionDiagnostics,
}

impl SelectionDistribution {
    /// Selection probabilities in candidate order.
    pub fn probs(&self) -> &DiscreteDistribution {
        &self.probs
    }

    /// The literal policy weights before normalization (may contain `+∞`; see
    /// [`PolicyWeights::weights`]).
    pub fn weights_unnormalized(&self) -> &[f64] {
        &self.weights_unnormalized
    }

    /// Whether the all-zero-weight uniform fallback fired.
    pub fn uniform_fallback(&self) -> bool {
        self.uniform_fallback
    }

    /// Gain and divergence diagnostics against uniform.
    pub fn diagnostics(&self) -> &SelectionDiagnostics {
        &self.diagnostics
    }
}

/// Computes the policy's unnormalized weights over a pool.
///
/// All-zero vectors (possible only for relu ITP when every reward is 0) fall back to
/// uniform weights with the flag set, never an error, so sweeps always complete.
///
/// # Errors
/// Invalid spec/pool combinations propagated from scalar numerics.
pub fn weights(spec: &PolicySpec, pool: &CandidatePool) -> Result<PolicyWeights, PolicyError> {
    let rewards = pool.proxy_rewards();
    let lambda = spec.lambda();
    let raw: Vec<f64> = match spec.family() {
        PolicyFamily::Bon => bon_weights(&rewards, spec.tie_break()),
        PolicyFamily::Sbon => rewards.iter().map(|&r| (r / lambda).exp()).collect(),
        PolicyFamily::Itp => match spec.itp_variant() {
            ItpVariant::Affine => rewards.iter().map(|&r| 1.0 + r / lambda).collect(),
            ItpVariant::Relu => rewards.iter().map(|&r| (r / lambda).max(0.0)).collect(),
        },
        PolicyFamily::Bot => {
            let alpha = AlphaOrder::new(spec.alpha().expect("bot spec carries alpha"))?;
            rewards
                .iter()
                .map(|&r| crate::numerics::alpha_exp(alpha, r / lambda))
                .collect::<Result<_, _>>()?
        }
    };
    if raw.iter().all(|&w| w == 0.0) {
        return Ok(PolicyWeights {
            weights: vec![1.0; raw.len()],
            uniform_fallback: true,
        });
    }
    Ok(PolicyWeights {
        weights: raw,
        uniform_fallback: false,
    })
}

fn bon_weights(rewards: &[f64], tie_break: TieBreak) -> Vec<f64> {
    let max = rewards.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    match tie_break {
        TieBreak::UniformSplit => {
            let ties = rewards.iter().filter(|&&r| r == max).count();
            rewards
                .iter()
                .map(|&r| if r == max { 1.0 / ties as f64 } else { 0.0 })
                .collect()
        }
        TieBreak::LowestIndex => {
            let argmax = rewards
                .iter()
                .position(|&r| r == max)
                .expect("non-empty pool has a maximum");
            (0..rewards.len())
                .map(|i| if i == argmax { 1.0 } else { 0.0 })
                .collect()
        }
    }
}

/// Log-weights for the exponential-family policies, used for overflow-safe normalization.
/// `None` marks a clamped-to-zero weight (bot's deformed exponential outside its support).
fn log_weights(spec: &PolicySpec, rewards: &[f64]) -> Option<Vec<Option<f64>>> {
    let lambda = spec.lambda();
    match spec.family() {
        PolicyFamily::Sbon => Some(rewards.iter().map(|&r| Some(r / lambda)).collect()),
        PolicyFamily::Bot => {
            let alpha = spec.alpha().expect("bot spec carries alpha");
            if alpha == 1.0 {
                return Some(rewards.iter().map(|&r| Some(r / lambda)).collect());
            }
            let gamma = (alpha - 1.0).recip();
            Some(
                rewards
                    .iter()
                    .map(|&r| {
                        let deformed = (alpha - 1.0) * (r / lambda);
                        if 1.0 + deformed <= 0.0 {
                            None
                        } else {
                            Some(gamma * deformed.ln_1p())
                        }
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

/// Builds the normalized selection distribution with diagnostics for a policy on a pool.
///
/// Probabilities are the normalized weights (log-sum-exp normalization for `sbon`/`bot`);
/// diagnostics compare against the uniform distribution on the pool. The proxy gain is
/// non-negative for every monotone re-weighting; sub-1e−12 negative rounding dust is
/// clamped to 0.
///
/// # Errors
/// Propagated from [`weights`] and the divergence functionals.
pub fn selection_distribution(
    spec: &PolicySpec,
    pool: &CandidatePool,
) -> Result<SelectionDistribution, PolicyError> {
    let rewards = pool.proxy_rewards();
    let weight_vec = weights(spec, pool)?;
    let probs = if weight_vec.uniform_fallback {
        DiscreteDistribution::uniform(rewards.len())?
    } else if let Some(logs) = log_weights(spec, &rewards) {
        softmax_from_logs(&logs)?
    } else {
        DiscreteDistribution::from_weights(&weight_vec.weights)?
    };
    let uniform = DiscreteDistribution::uniform(rewards.len())?;
    let mean: f64 = rewards.iter().sum::<f64>() / rewards.len() as f64;
    let tilted: f64 = probs
        .probs()
        .iter()
        .zip(&rewards)
        .map(|(&p, &r)| p * r)
        .sum();
    let mut proxy_gain = tilted - mean;
    if proxy_gain < 0.0 && proxy_gain > -1e-12 {
        proxy_gain = 0.0;
    }
    let tsallis_order = match spec.family() {
        PolicyFamily::Bot => spec.alpha().expect("bot spec carries alpha"),
        PolicyFamily::Sbon => 1.0,
        PolicyFamily::Bon | PolicyFamily::Itp => 2.0,
    };
    let diagnostics = SelectionDiagnostics {
        proxy_gain,
        kl_to_uniform: kl_divergence(&probs, &uniform)?,
        chi2_to_uniform: chi2_divergence(&probs, &uniform)?,
        tsallis_to_uniform: tsallis_divergence(AlphaOrder::new(tsallis_order)?, &probs, &uniform)?,
        tsallis_order,
    };
    Ok(SelectionDistribution {
        probs,
        weights_unnormalized: weight_vec.weights,
        uniform_fallback: weight_vec.uniform_fallback,
        diagnostics,
    })
}

fn softmax_from_logs(logs: &[Option<f64>]) -> Result<DiscreteDistribution, PolicyError> {
    let max = logs
        .iter()
        .flatten()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    // Weight vectors reaching this path always have at least one positive entry: the
    // deformed exponential is >= 1 at r̂ = 0 for α > 1, and exp never vanishes.
    debug_assert!(max.is_finite());
    let shifted: Vec<f64> = logs
        .iter()
        .map(|l| l.map_or(0.0, |lw| (lw - max).exp()))
        .collect();
    Ok(DiscreteDistribution::from_weights(&shifted)?)
}

/// Samples a candidate id from the policy's selection distribution by inverse CDF over
/// the candidate order. Deterministic given the generator state.
///
/// # Errors
/// Propagated from [`selection_distribution`].
pub fn select<R: Rng + ?Sized>(
    spec: &PolicySpec,
    pool: &CandidatePool,
    rng: &mut R,
) -> Result<String, PolicyError> {
    let dist = selection_distribution(spec, pool)?;
    let index = dist.probs().sample_index(rng);
    Ok(pool.candidates()[index].candidate_id.clone())
}

/// Output of the end-to-end tail-adaptive selection pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct BotSelection {
    /// The sampled candidate.
    pub candidate_id: String,
    /// The tail estimate behind the chosen α; `None` for single-candidate pools, where
    /// no estimate is possible and the sole candidate is returned directly.
    pub estimate: Option<TailEstimate>,
    /// The selection distribution actually sampled from.
    pub distribution: SelectionDistribution,
}

/// Runs the full tail-adaptive pipeline on one pool: Hill-estimate κ̂ with the default
/// (or overridden) cutoff, map it through the pivot to α, build the α-exponential
/// selection distribution at temperature λ, and sample a candidate.
///
/// A single-candidate pool short-circuits: the sole candidate is returned, the estimate
/// is flagged unavailable (`None`), and the distribution is the point mass.
///
/// # Errors
/// Propagated estimation/selection failures (for N ≥ 2) and invalid parameters.
pub fn bot_select_pipeline<R: Rng + ?Sized>(
    pool: &CandidatePool,
    lambda: f64,
    pivot: PivotConfig,
    cutoff_override: Option<usize>,
    rng: &mut R,
) -> Result<BotSelection, PolicyError> {
    if pool.len() == 1 {
        let spec = PolicySpec::bot(lambda, 1.0)?;
        let distribution = selection_distribution(&spec, pool)?;
        return Ok(BotSelection {
            candidate_id: pool.candidates()[0].candidate_id.clone(),
            estimate: None,
            distribution,
        });
    }
    let rewards = pool.proxy_rewards();
    let cutoff = cutoff_override.unwrap_or_else(|| default_cutoff(rewards.len()));
    let estimate = hill_estimate(&rewards, cutoff)?.with_pivot(pivot)?;
    let alpha = estimate.alpha().expect("pivot was applied");
    let spec = PolicySpec::bot(lambda, alpha)?;
    let distribution = selection_distribution(&spec, pool)?;
    let index = distribution.probs().sample_index(rng);
    Ok(BotSelection {
        candidate_id: pool.candidates()[index].candidate_id.clone(),
        estimate: Some(estimate),
        distribution,
    })
}

/// Total-variation distance between two selection distributions on the same pool.
///
/// # Errors
/// Length mismatch.
pub fn selection_tv(
    a: &SelectionDistribution,
    b: &SelectionDistribution,
) -> Result<f64, PolicyError> {
    Ok(tv_distance(a.probs(), b.probs())?)
}
