//! Synthetic reward worlds and the bootstrapped N-sweep protocol.
//!
//! A world draws candidate pools whose proxy rewards follow the endpoint-gap tail model
//! `r̂ = 1 − U`, `U ~ Beta(1/κ, 1)`, paired with a configurable "true" reward that lets
//! the proxy over-estimate quality in its own upper tail:
//!
//! ```text
//! none            r* = r̂
//! tail_inflation  r* = r̂ − strength·[(r̂ − q)/(1 − q)]₊²   q = onset quantile of the r̂ law
//! additive_noise  r* = clamp₀₁(r̂ + 𝒩(0, strength²))
//! ```
//!
//! The miscalibration forms are synthetic stand-ins — real reward models supply their own
//! divergence between proxy and truth — chosen so that inflation concentrates exactly
//! where aggressive selection looks: past a high quantile of the proxy distribution. With
//! tail inflation, hard argmax selection climbs the proxy tail as the budget N grows and
//! the realized true reward *reverts*, reproducing the hacking trajectory; tail-adaptive
//! selection backs off to affine weighting on heavy-tailed prompts and holds its level.
//!
//! Sweeps follow a bootstrap protocol: one pool of `pool_size` candidates per world, and
//! for every (trial, N) an N-subset drawn without replacement, on which each policy
//! selects once. All randomness derives from a master seed through tagged substreams, so
//! results are bit-reproducible, independent of thread scheduling, and stable under
//! adding or removing policies from the run.

use crate::numerics::NumericsError;
use crate::policies::{
    bot_select_pipeline, selection_distribution, CandidatePool, PolicyError, PolicySpec,
    ScoredCandidate,
};
use crate::tail::{PivotConfig, TailError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Errors from world validation and sweep execution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulatorError {
    #[error("miscalibration strength must be non-negative and finite, got {0}")]
    InvalidStrength(f64),
    #[error("onset quantile must lie strictly inside (0, 1), got {0}")]
    InvalidOnset(f64),
    #[error("epsilon target must be non-negative and finite, got {0}")]
    InvalidEpsilonTarget(f64),
    #[error("log-uniform kappa range needs 0 < min <= max, got [{min}, {max}]")]
    InvalidKappaRange { min: f64, max: f64 },
    #[error("sweep N grid is empty")]
    EmptyGrid,
    #[error("sweep needs at least 1 trial")]
    ZeroTrials,
    #[error("pool size must be at least 1")]
    ZeroPool,
    #[error("sweep budget N={n} exceeds pool size {pool_size}")]
    BudgetExceedsPool { n: usize, pool_size: usize },
    #[error("no policies given to sweep")]
    NoPolicies,
    #[error("duplicate policy label {0:?} in sweep; label policies uniquely")]
    DuplicateLabel(String),
    #[error("ablation grid is empty or contains non-positive values")]
    InvalidAblationGrid,
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Tail(#[from] TailError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Tail index specification: one fixed κ, or prompt-heterogeneous κ drawn log-uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailSpec {
    Fixed { kappa: f64 },
    LogUniform { min: f64, max: f64 },
}

impl TailSpec {
    fn validate(&self) -> Result<(), SimulatorError> {
        match *self {
            TailSpec::Fixed { kappa } => {
                if !kappa.is_finite() || kappa <= 0.0 {
                    return Err(SimulatorError::InvalidKappaRange {
                        min: kappa,
                        max: kappa,
                    });
                }
            }
            TailSpec::LogUniform { min, max } => {
                if !(min.is_finite() && max.is_finite()) || min <= 0.0 || max < min {
                    return Err(SimulatorError::InvalidKappaRange { min, max });
                }
            }
        }
        Ok(())
    }

    fn draw_kappa<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            TailSpec::Fixed { kappa } => kappa,
            TailSpec::LogUniform { min, max } => {
                if min == max {
                    return min;
                }
                let t = rng.random::<f64>();
                (min.ln() + t * (max.ln() - min.ln())).exp()
            }
        }
    }
}

/// How the true reward diverges from the proxy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MiscalibrationModel {
    None,
    TailInflation,
    AdditiveNoise,
}

/// Miscalibration description: model, strength, and (for tail inflation) the quantile of
/// the proxy law where over-estimation begins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Miscalibration {
    model: MiscalibrationModel,
    strength: f64,
    onset_quantile: f64,
}

impl Miscalibration {
    /// Perfect calibration: r* = r̂.
    pub fn none() -> Self {
        Self {
            model: MiscalibrationModel::None,
            strength: 0.0,
            onset_quantile: 0.5,
        }
    }

    /// Quadratic over-estimation past the `onset_quantile` of the proxy law.
    pub fn tail_inflation(strength: f64, onset_quantile: f64) -> Result<Self, SimulatorError> {
        Self::check_strength(strength)?;
        if !onset_quantile.is_finite() || onset_quantile <= 0.0 || onset_quantile >= 1.0 {
            return Err(SimulatorError::InvalidOnset(onset_quantile));
        }
        Ok(Self {
            model: MiscalibrationModel::TailInflation,
            strength,
            onset_quantile,
        })
    }

    /// Centered Gaussian proxy error with standard deviation `strength`, clamped to [0, 1].
    pub fn additive_noise(strength: f64) -> Result<Self, SimulatorError> {
        Self::check_strength(strength)?;
        Ok(Self {
            model: MiscalibrationModel::AdditiveNoise,
            strength,
            onset_quantile: 0.5,
        })
    }

    fn check_strength(strength: f64) -> Result<(), SimulatorError> {
        if !strength.is_finite() || strength < 0.0 {
            return Err(SimulatorError::InvalidStrength(strength));
        }
        Ok(())
    }

    pub fn model(&self) -> MiscalibrationModel {
        self.model
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn onset_quantile(&self) -> f64 {
        self.onset_quantile
    }
}

/// A synthetic reward world: tail law, miscalibration, and the nominal reward-error
/// magnitude carried into downstream analyses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RewardWorld {
    tail: TailSpec,
    miscalibration: Miscalibration,
    epsilon_target: f64,
}

impl RewardWorld {
    pub fn new(
        tail: TailSpec,
        miscalibration: Miscalibration,
        epsilon_target: f64,
    ) -> Result<Self, SimulatorError> {
        tail.validate()?;
        if !epsilon_target.is_finite() || epsilon_target < 0.0 {
            return Err(SimulatorError::InvalidEpsilonTarget(epsilon_target));
        }
        Ok(Self {
            tail,
            miscalibration,
            epsilon_target,
        })
    }

    pub fn tail(&self) -> TailSpec {
        self.tail
    }

    pub fn miscalibration(&self) -> Miscalibration {
        self.miscalibration
    }

    /// The nominal ε handed to analyses; the realized pool-level value is reported per
    /// generated pool.
    pub fn epsilon_target(&self) -> f64 {
        self.epsilon_target
    }
}

/// A generated pool plus its realized statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedPool {
    /// Candidates with proxy and true rewards filled.
    pub pool: CandidatePool,
    /// Realized √mean((r̂ − r*)²) over the pool — the empirical reward-error magnitude.
    pub empirical_epsilon: f64,
    /// The tail index this pool was drawn with (resolved from the world's tail spec).
    pub kappa: f64,
}

/// Draws one candidate pool from the world.
///
/// Proxy rewards are `1 − V^κ` for uniform `V`; true rewards follow the world's
/// miscalibration model. For tail inflation the onset value is the exact quantile of the
/// proxy law, `1 − (1 − q)^κ`, so inflation affects precisely the top `(1−q)` fraction
/// of the proxy distribution in expectation.
///
/// # Errors
/// Pool size 0 or invalid world parameters.
pub fn generate_pool<R: Rng + ?Sized>(
    world: &RewardWorld,
    pool_size: usize,
    prompt_id: &str,
    rng: &mut R,
) -> Result<GeneratedPool, SimulatorError> {
    if pool_size == 0 {
        return Err(SimulatorError::ZeroPool);
    }
    let kappa = world.tail.draw_kappa(rng);
    let mis = world.miscalibration;
    let onset_value = match mis.model {
        MiscalibrationModel::TailInflation => 1.0 - (1.0 - mis.onset_quantile).powf(kappa),
        _ => 0.0,
    };
    let noise = match mis.model {
        MiscalibrationModel::AdditiveNoise if mis.strength > 0.0 => {
            Some(Normal::new(0.0, mis.strength).expect("validated strength"))
        }
        _ => None,
    };
    let mut candidates = Vec::with_capacity(pool_size);
    let mut sq_err = 0.0f64;
    for i in 0..pool_size {
        let v = rng.random::<f64>();
        let proxy = (1.0 - v.powf(kappa)).clamp(0.0, 1.0);
        let truth = match mis.model {
            MiscalibrationModel::None => proxy,
            MiscalibrationModel::TailInflation => {
                let excess = ((proxy - onset_value) / (1.0 - onset_value)).max(0.0);
                proxy - mis.strength * excess * excess
            }
            MiscalibrationModel::AdditiveNoise => match noise {
                Some(n) => (proxy + n.sample(rng)).clamp(0.0, 1.0),
                None => proxy,
            },
        };
        sq_err += (proxy - truth) * (proxy - truth);
        candidates.push(ScoredCandidate {
            candidate_id: format!("c{i}"),
            proxy_reward_raw: proxy,
            proxy_reward: proxy,
            true_reward: Some(truth),
        });
    }
    let pool = CandidatePool::from_normalized(prompt_id, candidates)?;
    Ok(GeneratedPool {
        pool,
        empirical_epsilon: (sq_err / pool_size as f64).sqrt(),
        kappa,
    })
}

/// Generates `prompt_count` pools with per-prompt substreams, for calibration flows and
/// heterogeneous-κ experiments. Prompt `i` gets id `p{i}` and a generator derived from
/// `(seed, pool-purpose, i)`, so pools are independent of enumeration order.
pub fn generate_prompts(
    world: &RewardWorld,
    prompt_count: usize,
    pool_size: usize,
    seed: u64,
) -> Result<Vec<GeneratedPool>, SimulatorError> {
    (0..prompt_count)
        .map(|i| {
            let mut rng = substream(seed, &[PURPOSE_POOL, i as u64]);
            generate_pool(world, pool_size, &format!("p{i}"), &mut rng)
        })
        .collect()
}

/// Sweep protocol parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    n_grid: Vec<usize>,
    trials: usize,
    pool_size: usize,
    seed: u64,
    with_replacement: bool,
}

impl SweepConfig {
    /// Defaults: N ∈ {2⁰, …, 2¹⁰}, 10 trials, pool of 4096, subset draws without
    /// replacement.
    pub fn new(seed: u64) -> Self {
        Self {
            n_grid: (0..=10).map(|p| 1usize << p).collect(),
            trials: 10,
            pool_size: 4096,
            seed,
            with_replacement: false,
        }
    }

    pub fn with_n_grid(mut self, n_grid: Vec<usize>) -> Self {
        self.n_grid = n_grid;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_pool_size(mut self, pool_size: usize) -> Self {
        self.pool_size = pool_size;
        self
    }

    /// Switches subset draws to with-replacement sampling.
    pub fn with_replacement(mut self, yes: bool) -> Self {
        self.with_replacement = yes;
        self
    }

    pub fn n_grid(&self) -> &[usize] {
        &self.n_grid
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn pool_size(&self) -> usize {
        self.pool_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_with_replacement(&self) -> bool {
        self.with_replacement
    }

    fn validate(&self) -> Result<(), SimulatorError> {
        if self.n_grid.is_empty() {
            return Err(SimulatorError::EmptyGrid);
        }
        if self.trials == 0 {
            return Err(SimulatorError::ZeroTrials);
        }
        if self.pool_size == 0 {
            return Err(SimulatorError::ZeroPool);
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n > self.pool_size) {
            return Err(SimulatorError::BudgetExceedsPool {
                n,
                pool_size: self.pool_size,
            });
        }
        Ok(())
    }
}

/// A policy entry in a sweep: either a fixed spec or the full tail-adaptive pipeline
/// (which re-estimates κ̂ and α on every subset).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPolicy {
    kind: SweepPolicyKind,
    label: String,
}

#[derive(Debug, Clone, PartialEq)]
enum SweepPolicyKind {
    Fixed(PolicySpec),
    BotPipeline {
        lambda: f64,
        pivot: PivotConfig,
        cutoff: Option<usize>,
    },
}

impl SweepPolicy {
    /// A fixed-spec policy labeled by the spec's own label.
    pub fn fixed(spec: PolicySpec) -> Self {
        let label = spec.label();
        Self {
            kind: SweepPolicyKind::Fixed(spec),
            label,
        }
    }

    /// A fixed-spec policy with an explicit label (to disambiguate two parameterizations
    /// of the same family within one sweep).
    pub fn fixed_labeled(spec: PolicySpec, label: impl Into<String>) -> Self {
        Self {
            kind: SweepPolicyKind::Fixed(spec),
            label: label.into(),
        }
    }

    /// The tail-adaptive pipeline at temperature λ with the given pivot; the Hill cutoff
    /// follows the default √N rule unless overridden.
    pub fn bot(lambda: f64, pivot: PivotConfig) -> Self {
        Self {
            kind: SweepPolicyKind::BotPipeline {
                lambda,
                pivot,
                cutoff: None,
            },
            label: "bot".to_string(),
        }
    }

    pub fn bot_labeled(lambda: f64, pivot: PivotConfig, label: impl Into<String>) -> Self {
        Self {
            kind: SweepPolicyKind::BotPipeline {
                lambda,
                pivot,
                cutoff: None,
            },
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// One aggregated sweep row: a policy at one budget N, averaged over trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub policy: String,
    pub n: usize,
    pub trial_count: usize,
    pub true_reward_mean: f64,
    pub true_reward_stderr: f64,
    pub proxy_reward_mean: f64,
    pub proxy_reward_stderr: f64,
    /// Trial-mean Hill estimate; present only for pipeline rows at N ≥ 2.
    pub kappa_hat_mean: Option<f64>,
    /// Trial-mean interpolation order; present only for pipeline rows at N ≥ 2.
    pub alpha_mean: Option<f64>,
    pub kl_mean: f64,
    pub chi2_mean: f64,
    pub tsallis_mean: f64,
}

/// Aggregated sweep output: rows ordered by policy label, then N ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    rows: Vec<SweepRow>,
    /// Realized reward-error magnitude of the underlying pool.
    pub empirical_epsilon: f64,
    /// Tail index of the underlying pool.
    pub pool_kappa: f64,
}

impl SweepResult {
    /// Assembles a result from externally produced rows (adapters, tests). Rows are
    /// re-sorted into the canonical order: policy label lexicographic, then N ascending.
    pub fn from_rows(mut rows: Vec<SweepRow>, empirical_epsilon: f64, pool_kappa: f64) -> Self {
        rows.sort_by(|a, b| a.policy.cmp(&b.policy).then(a.n.cmp(&b.n)));
        Self {
            rows,
            empirical_epsilon,
            pool_kappa,
        }
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    /// Looks up the row for (policy label, N).
    pub fn row(&self, policy: &str, n: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.policy == policy && r.n == n)
    }
}

pub(crate) const PURPOSE_POOL: u64 = 0x706f6f6c; // "pool"
const PURPOSE_SUBSET: u64 = 0x73756273; // "subs"
const PURPOSE_SELECT: u64 = 0x73656c65; // "sele"

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent generator from the master seed and a tag sequence. Each tag is
/// folded through splitmix64, so distinct tag tuples give uncorrelated streams and the
/// mapping is stable across platforms and thread schedules.
pub(crate) fn substream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut state = splitmix64(seed ^ 0x7441_494c_414c_4947); // domain constant
    for &t in tags {
        state = splitmix64(state ^ t);
    }
    ChaCha8Rng::seed_from_u64(state)
}

pub(crate) fn label_hash(label: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64; // FNV-1a
    for b in label.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Draws an N-subset of pool indices for one (trial, N) cell — shared by all policies so
/// that every policy sees the same candidates.
fn draw_subset(
    pool_size: usize,
    n: usize,
    with_replacement: bool,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    if with_replacement {
        (0..n).map(|_| rng.random_range(0..pool_size)).collect()
    } else {
        // Partial Fisher–Yates: the first n entries after n swap steps are a uniform
        // without-replacement sample.
        let mut indices: Vec<usize> = (0..pool_size).collect();
        for i in 0..n {
            let j = rng.random_range(i..pool_size);
            indices.swap(i, j);
        }
        indices.truncate(n);
        indices
    }
}

/// Per-(trial, N, policy) observation before aggregation.
struct TrialObservation {
    true_reward: f64,
    proxy_reward: f64,
    kappa_hat: Option<f64>,
    alpha: Option<f64>,
    kl: f64,
    chi2: f64,
    tsallis: f64,
}

fn observe_policy(
    policy: &SweepPolicy,
    subset: &CandidatePool,
    rng: &mut ChaCha8Rng,
) -> Result<TrialObservation, SimulatorError> {
    let (selected_id, estimate, distribution) = match &policy.kind {
        SweepPolicyKind::Fixed(spec) => {
            let dist = selection_distribution(spec, subset)?;
            let index = dist.probs().sample_index(rng);
            (
                subset.candidates()[index].candidate_id.clone(),
                None,
                dist,
            )
        }
        SweepPolicyKind::BotPipeline {
            lambda,
            pivot,
            cutoff,
        } => {
            let out = bot_select_pipeline(subset, *lambda, *pivot, *cutoff, rng)?;
            (out.candidate_id, out.estimate, out.distribution)
        }
    };
    let chosen = subset
        .candidates()
        .iter()
        .find(|c| c.candidate_id == selected_id)
        .expect("selected id comes from the subset");
    let d = distribution.diagnostics();
    Ok(TrialObservation {
        true_reward: chosen.true_reward.unwrap_or(chosen.proxy_reward),
        proxy_reward: chosen.proxy_reward,
        kappa_hat: estimate.as_ref().map(|e| e.kappa_hat()),
        alpha: estimate.as_ref().and_then(|e| e.alpha()),
        kl: d.kl_to_uniform,
        chi2: d.chi2_to_uniform,
        tsallis: d.tsallis_to_uniform,
    })
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Runs the bootstrapped sweep: one pool per world, an N-subset per (trial, N) shared
/// across policies, one selection per (trial, N, policy), aggregated into per-(policy, N)
/// means and standard errors over trials.
///
/// Trials execute in parallel; substream derivation makes the output identical to the
/// sequential order regardless of scheduling, and keyed selection streams keep existing
/// policies' draws unchanged when other policies are added to the run.
///
/// # Errors
/// Invalid configs, budgets exceeding the pool, duplicate policy labels, or propagated
/// selection failures.
pub fn run_sweep(
    world: &RewardWorld,
    sweep: &SweepConfig,
    policies: &[SweepPolicy],
) -> Result<SweepResult, SimulatorError> {
    sweep.validate()?;
    if policies.is_empty() {
        return Err(SimulatorError::NoPolicies);
    }
    for (i, p) in policies.iter().enumerate() {
        if policies[..i].iter().any(|q| q.label() == p.label()) {
            return Err(SimulatorError::DuplicateLabel(p.label().to_string()));
        }
    }
    let mut pool_rng = substream(sweep.seed, &[PURPOSE_POOL, 0]);
    let generated = generate_pool(world, sweep.pool_size, "p0", &mut pool_rng)?;
    let pool = &generated.pool;

    // observations[trial] -> per (n_index, policy_index) observation.
    let observations: Vec<Vec<Vec<TrialObservation>>> = (0..sweep.trials)
        .into_par_iter()
        .map(|trial| {
            sweep
                .n_grid
                .iter()
                .map(|&n| {
                    let mut subset_rng =
                        substream(sweep.seed, &[PURPOSE_SUBSET, trial as u64, 0, n as u64]);
                    let indices =
                        draw_subset(sweep.pool_size, n, sweep.with_replacement, &mut subset_rng);
                    let subset = pool.subset(&indices)?;
                    policies
                        .iter()
                        .map(|policy| {
                            let mut select_rng = substream(
                                sweep.seed,
                                &[
                                    PURPOSE_SELECT,
                                    trial as u64,
                                    0,
                                    n as u64,
                                    label_hash(policy.label()),
                                ],
                            );
                            observe_policy(policy, &subset, &mut select_rng)
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut order: Vec<usize> = (0..policies.len()).collect();
    order.sort_by(|&a, &b| policies[a].label().cmp(policies[b].label()));

    let mut rows = Vec::with_capacity(policies.len() * sweep.n_grid.len());
    for &p_idx in &order {
        let mut n_sorted: Vec<(usize, usize)> = sweep
            .n_grid
            .iter()
            .copied()
            .enumerate()
            .map(|(i, n)| (n, i))
            .collect();
        n_sorted.sort_unstable();
        for (n, n_idx) in n_sorted {
            let per_trial: Vec<&TrialObservation> = observations
                .iter()
                .map(|t| &t[n_idx][p_idx])
                .collect();
            let truths: Vec<f64> = per_trial.iter().map(|o| o.true_reward).collect();
            let proxies: Vec<f64> = per_trial.iter().map(|o| o.proxy_reward).collect();
            let kappas: Vec<f64> = per_trial.iter().filter_map(|o| o.kappa_hat).collect();
            let alphas: Vec<f64> = per_trial.iter().filter_map(|o| o.alpha).collect();
            let (true_mean, true_se) = mean_and_stderr(&truths);
            let (proxy_mean, proxy_se) = mean_and_stderr(&proxies);
            rows.push(SweepRow {
                policy: policies[p_idx].label().to_string(),
                n,
                trial_count: sweep.trials,
                true_reward_mean: true_mean,
                true_reward_stderr: true_se,
                proxy_reward_mean: proxy_mean,
                proxy_reward_stderr: proxy_se,
                kappa_hat_mean: (!kappas.is_empty()).then(|| mean_of(&kappas)),
                alpha_mean: (!alphas.is_empty()).then(|| mean_of(&alphas)),
                kl_mean: mean_of(&per_trial.iter().map(|o| o.kl).collect::<Vec<_>>()),
                chi2_mean: mean_of(&per_trial.iter().map(|o| o.chi2).collect::<Vec<_>>()),
                tsallis_mean: mean_of(&per_trial.iter().map(|o| o.tsallis).collect::<Vec<_>>()),
            });
        }
    }
    Ok(SweepResult {
        rows,
        empirical_epsilon: generated.empirical_epsilon,
        pool_kappa: generated.kappa,
    })
}

/// Which parameter an ablation varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AblationAxis {
    /// Vary the steering temperature λ shared by the λ-steered policies.
    Lambda,
    /// Vary the pivot κ₀ of the tail-adaptive pipeline.
    Kappa0,
}

/// Fixed parameters for the non-varied axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AblationFixed {
    /// λ used when the axis is κ₀.
    pub lambda: f64,
    /// κ₀ used when the axis is λ.
    pub kappa0: f64,
}

impl Default for AblationFixed {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            kappa0: 1.0,
        }
    }
}

/// One grid point of an ablation: the varied value and its full sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationPoint {
    pub value: f64,
    pub result: SweepResult,
}

/// Sweeps the λ-steered policy set (exponential, affine, tail-adaptive — plus hard
/// argmax as a λ-free reference) across the grid of the chosen axis, one full bootstrap
/// sweep per grid point.
///
/// # Errors
/// Empty/non-positive grids or propagated sweep failures.
pub fn ablation_sweep(
    world: &RewardWorld,
    sweep: &SweepConfig,
    axis: AblationAxis,
    grid: &[f64],
    fixed: AblationFixed,
) -> Result<Vec<AblationPoint>, SimulatorError> {
    if grid.is_empty() || grid.iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(SimulatorError::InvalidAblationGrid);
    }
    grid.iter()
        .map(|&value| {
            let (lambda, kappa0) = match axis {
                AblationAxis::Lambda => (value, fixed.kappa0),
                AblationAxis::Kappa0 => (fixed.lambda, value),
            };
            let pivot = PivotConfig::explicit(kappa0)?;
            let policies = vec![
                SweepPolicy::fixed(PolicySpec::bon()),
                SweepPolicy::fixed(PolicySpec::sbon(lambda)?),
                SweepPolicy::fixed(PolicySpec::itp(
                    lambda,
                    crate::policies::ItpVariant::Affine,
                )?),
                SweepPolicy::bot(lambda, pivot),
            ];
            Ok(AblationPoint {
                value,
                result: run_sweep(world, sweep, &policies)?,
            })
        })
        .collect()
}
