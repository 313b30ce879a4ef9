//! Scalar α-calculus, divergence functionals, and endpoint-gap Beta identities.
//!
//! The deformed exponential of order α is
//!
//! ```text
//! exp_α(x) = [1 + (α−1)·x]₊^{1/(α−1)},    exp_1(x) = eˣ,
//! ```
//!
//! with inverse `log_α(x) = (x^{α−1} − 1)/(α−1)` (natural log at α = 1). The α = 1 case is
//! the continuum limit of the deformed family, and α = 2 gives the affine map `[1 + x]₊`;
//! selection policies interpolate between those endpoints.
//!
//! The Tsallis divergence of order α > 1 between distributions `p` and `q` on a common
//! finite support is
//!
//! ```text
//! D_α(p ‖ q) = (1/(α−1)) · (Σᵢ pᵢ^α qᵢ^{1−α} − 1),
//! ```
//!
//! which equals the χ² divergence `Σ pᵢ²/qᵢ − 1` at α = 2 and converges to KL(p‖q) as
//! α → 1⁺. The implementation evaluates the equivalent form
//! `(1/(α−1)) · Σ pᵢ·expm1((α−1)·ln(pᵢ/qᵢ))`, which is well conditioned near α = 1.
//!
//! Rewards live in [0, 1] and the gap to the best achievable reward is modeled as
//! `U = 1 − r̂ ~ Beta(1/κ, 1)` with tail index κ > 0, i.e. `Pr(U ≤ u) = u^{1/κ}`. The
//! minimum gap among N draws scales like `N^{−κ}`, so large κ is the heavy regime — the
//! inverse gap `1/U` has a thick Pareto tail and exceptional candidates keep appearing as
//! N grows — while small κ saturates early. The raw moments are `E[Uᵐ] = 1/(mκ + 1)` and
//! inverse-CDF sampling is `U = V^κ` for `V ~ Uniform(0,1)`.

use rand::Rng;
use thiserror::Error;

/// Tolerance under which an input probability vector is renormalized instead of rejected.
const SUM_SLACK: f64 = 1e-6;

/// Errors from scalar numerics and distribution construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    /// An input that must be finite was NaN or ±∞.
    #[error("{op}: input {value} is not finite")]
    NonFinite { op: &'static str, value: f64 },
    /// The deformation order must be positive and finite.
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    /// The tail index must be positive and finite.
    #[error("tail index kappa must be positive and finite, got {0}")]
    InvalidKappa(f64),
    /// `alpha_log` is only defined on positive arguments.
    #[error("alpha_log requires x > 0, got {0}")]
    NonPositiveLog(f64),
    /// A probability entry was negative, NaN, or infinite.
    #[error("probability entry {index} is {value}; entries must be finite and >= 0")]
    InvalidProbability { index: usize, value: f64 },
    /// The entries summed too far from 1 to be renormalized.
    #[error("probability vector sums to {sum}, more than {SUM_SLACK:e} away from 1")]
    NotNormalized { sum: f64 },
    /// A weight vector had no mass to normalize.
    #[error("weight vector sums to {sum}; a distribution needs positive total mass")]
    ZeroMass { sum: f64 },
    /// Distributions must be non-empty.
    #[error("probability vector is empty")]
    Empty,
    /// Divergences require a common support size.
    #[error("distribution lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Deformation order α for the α-exponential family and Tsallis divergences.
///
/// Any finite α > 0 is a valid order for the scalar maps; α = 1 is accepted and dispatches
/// to the ordinary exponential/logarithm. Selection policies additionally restrict
/// themselves to 1 < α ≤ 2 (see [`in_policy_range`](Self::in_policy_range)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOrder(f64);

impl AlphaOrder {
    /// Validates α > 0 and finite.
    pub fn new(alpha: f64) -> Result<Self, NumericsError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(NumericsError::InvalidAlpha(alpha));
        }
        Ok(Self(alpha))
    }

    /// The ordinary-exponential endpoint α = 1.
    pub fn exponential() -> Self {
        Self(1.0)
    }

    /// The raw order.
    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether this order dispatches to exp/log rather than the deformed maps.
    pub fn is_exponential(self) -> bool {
        self.0 == 1.0
    }

    /// The conjugate exponent γ = 1/(α−1); +∞ at α = 1.
    pub fn gamma(self) -> f64 {
        (self.0 - 1.0).recip()
    }

    /// Whether the order lies in the range 1 < α ≤ 2 used by selection policies.
    pub fn in_policy_range(self) -> bool {
        self.0 > 1.0 && self.0 <= 2.0
    }
}

/// A probability distribution on a finite candidate set.
///
/// Entries are finite, non-negative, and sum to 1 within `1e-9`. Construction renormalizes
/// inputs whose sum drifted within `1e-6` of 1 (float drift) and rejects anything further
/// out (corrupt data).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    /// Builds from an (approximately) normalized probability vector.
    ///
    /// # Errors
    /// Rejects empty vectors, negative/non-finite entries, and sums farther than `1e-6`
    /// from 1.
    pub fn new(probs: Vec<f64>) -> Result<Self, NumericsError> {
        let sum = Self::checked_sum(&probs)?;
        if (sum - 1.0).abs() > SUM_SLACK {
            return Err(NumericsError::NotNormalized { sum });
        }
        Ok(Self::renormalized(probs, sum))
    }

    /// Builds by normalizing an arbitrary non-negative weight vector with positive mass.
    ///
    /// # Errors
    /// Rejects empty vectors, negative/non-finite entries, and vectors whose sum is zero
    /// (callers decide what an all-zero weight vector means; see the policy layer).
    pub fn from_weights(weights: &[f64]) -> Result<Self, NumericsError> {
        let sum = Self::checked_sum(weights)?;
        if sum <= 0.0 {
            return Err(NumericsError::ZeroMass { sum });
        }
        Ok(Self::renormalized(weights.to_vec(), sum))
    }

    /// The uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self, NumericsError> {
        if n == 0 {
            return Err(NumericsError::Empty);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    fn checked_sum(entries: &[f64]) -> Result<f64, NumericsError> {
        if entries.is_empty() {
            return Err(NumericsError::Empty);
        }
        let mut sum = 0.0;
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(NumericsError::InvalidProbability { index, value });
            }
            sum += value;
        }
        Ok(sum)
    }

    fn renormalized(mut probs: Vec<f64>, sum: f64) -> Self {
        for p in &mut probs {
            *p /= sum;
        }
        Self { probs }
    }

    /// The probability vector.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false: empty distributions cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Inverse-CDF lookup: maps a uniform draw `u ∈ [0, 1)` to an outcome index, walking
    /// outcomes in their stored order.
    pub fn index_from_uniform(&self, u: f64) -> usize {
        let mut acc = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        self.probs.len() - 1
    }

    /// Draws an outcome index using the supplied generator.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.index_from_uniform(rng.random::<f64>())
    }
}

/// Endpoint-gap tail model: the gap to the best achievable reward is `U ~ Beta(1/κ, 1)`.
///
/// Large κ is the heavy regime — the best of N gaps shrinks like `N^{−κ}`, so extreme
/// near-optimal candidates dwarf the bulk; small κ makes best-of-N selection saturate
/// early. κ → 0 degenerates toward a point mass at zero gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaTail {
    kappa: f64,
}

impl BetaTail {
    /// Validates κ > 0 and finite.
    pub fn new(kappa: f64) -> Result<Self, NumericsError> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(NumericsError::InvalidKappa(kappa));
        }
        Ok(Self { kappa })
    }

    /// The tail index κ.
    pub fn kappa(self) -> f64 {
        self.kappa
    }
}

/// The deformed exponential `exp_α(x) = [1 + (α−1)x]₊^{1/(α−1)}`, with `exp_1 = exp`.
///
/// Monotonically non-decreasing in `x`; returns exactly 0 when the clamped base
/// `1 + (α−1)x` is ≤ 0 and α > 1 (downstream normalizers must handle all-zero weight
/// vectors explicitly).
///
/// # Errors
/// Non-finite `x`.
pub fn alpha_exp(alpha: AlphaOrder, x: f64) -> Result<f64, NumericsError> {
    if !x.is_finite() {
        return Err(NumericsError::NonFinite {
            op: "alpha_exp",
            value: x,
        });
    }
    if alpha.is_exponential() {
        return Ok(x.exp());
    }
    let base = 1.0 + (alpha.value() - 1.0) * x;
    if base <= 0.0 {
        return Ok(0.0);
    }
    Ok(base.powf(alpha.gamma()))
}

/// The deformed logarithm `log_α(x) = (x^{α−1} − 1)/(α−1)`, with `log_1 = ln`.
///
/// Left inverse of [`alpha_exp`] wherever the latter's base is positive.
///
/// # Errors
/// `x ≤ 0` or non-finite `x`.
pub fn alpha_log(alpha: AlphaOrder, x: f64) -> Result<f64, NumericsError> {
    if !x.is_finite() {
        return Err(NumericsError::NonFinite {
            op: "alpha_log",
            value: x,
        });
    }
    if x <= 0.0 {
        return Err(NumericsError::NonPositiveLog(x));
    }
    if alpha.is_exponential() {
        return Ok(x.ln());
    }
    let a1 = alpha.value() - 1.0;
    Ok(((a1 * x.ln()).exp_m1()) / a1)
}

/// Tsallis divergence `D_α(p ‖ q) = (1/(α−1))(Σ pᵢ^α qᵢ^{1−α} − 1)` of order α.
///
/// Equals χ² at α = 2 (shared code path with [`chi2_divergence`], so the identity is
/// bit-for-bit) and KL in the α → 1 limit; α = 1 dispatches to [`kl_divergence`] as the
/// continuum endpoint. Outcomes with `pᵢ = 0` contribute nothing; an outcome with `pᵢ > 0`
/// but `qᵢ = 0` makes the divergence `+∞` (an in-band signal, not an error, so sweeps can
/// record it). Tiny negative rounding is clamped so the result is never below 0.
///
/// # Errors
/// Length mismatch between `p` and `q`, or an order below 1 (orders α < 1 flip the
/// support condition and are outside the selection family's 1 ≤ α ≤ 2 range).
pub fn tsallis_divergence(
    alpha: AlphaOrder,
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<f64, NumericsError> {
    check_lengths(p, q)?;
    if alpha.value() < 1.0 {
        return Err(NumericsError::InvalidAlpha(alpha.value()));
    }
    if alpha.is_exponential() {
        return kl_divergence(p, q);
    }
    let a1 = alpha.value() - 1.0;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pi * (a1 * (pi / qi).ln()).exp_m1();
    }
    Ok((acc / a1).max(0.0))
}

/// Kullback–Leibler divergence `Σ pᵢ ln(pᵢ/qᵢ)` on a finite support.
///
/// Support-mismatch handling and clamping as in [`tsallis_divergence`].
///
/// # Errors
/// Length mismatch.
pub fn kl_divergence(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<f64, NumericsError> {
    check_lengths(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pi * (pi / qi).ln();
    }
    Ok(acc.max(0.0))
}

/// χ² divergence `Σ pᵢ²/qᵢ − 1`: exactly the order-2 Tsallis divergence, and implemented
/// as that same code path.
///
/// # Errors
/// Length mismatch.
pub fn chi2_divergence(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<f64, NumericsError> {
    tsallis_divergence(AlphaOrder(2.0), p, q)
}

/// Total-variation distance `½ Σ |pᵢ − qᵢ| ∈ [0, 1]`.
///
/// # Errors
/// Length mismatch.
pub fn tv_distance(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<f64, NumericsError> {
    check_lengths(p, q)?;
    let sum: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi - qi).abs())
        .sum();
    Ok((0.5 * sum).clamp(0.0, 1.0))
}

fn check_lengths(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<(), NumericsError> {
    if p.len() != q.len() {
        return Err(NumericsError::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// Raw moment `E[Uᵐ] = 1/(mκ + 1)` of the endpoint gap `U ~ Beta(1/κ, 1)`.
///
/// `m = 0` returns the trivial moment 1.
pub fn beta_gap_moment(tail: BetaTail, m: u32) -> f64 {
    (f64::from(m) * tail.kappa() + 1.0).recip()
}

/// The inverse-CDF map `v ↦ v^κ` taking a uniform draw to an endpoint-gap sample.
///
/// Exposed separately from [`sample_beta_gap`] so callers can drive it from any uniform
/// source (stratified grids, common random numbers) and so the mapping itself is testable.
pub fn beta_gap_from_uniform(tail: BetaTail, v: f64) -> f64 {
    v.powf(tail.kappa())
}

/// Draws `U ~ Beta(1/κ, 1)` by inverse CDF: `U = V^κ`, `V ~ Uniform(0,1)`.
///
/// Deterministic given the generator state.
pub fn sample_beta_gap<R: Rng + ?Sized>(tail: BetaTail, rng: &mut R) -> f64 {
    beta_gap_from_uniform(tail, rng.random::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alpha(a: f64) -> AlphaOrder {
        AlphaOrder::new(a).unwrap()
    }

    fn dist(probs: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(probs.to_vec()).unwrap()
    }

    #[test]
    fn alpha_order_rejects_non_positive_and_non_finite() {
        assert!(AlphaOrder::new(0.0).is_err());
        assert!(AlphaOrder::new(-1.5).is_err());
        assert!(AlphaOrder::new(f64::NAN).is_err());
        assert!(AlphaOrder::new(f64::INFINITY).is_err());
        assert!(AlphaOrder::new(0.5).is_ok());
    }

    #[test]
    fn alpha_order_accessors() {
        let a = alpha(1.5);
        assert_eq!(a.value(), 1.5);
        assert_eq!(a.gamma(), 2.0);
        assert!(a.in_policy_range());
        assert!(!alpha(1.0).in_policy_range());
        assert!(!alpha(2.5).in_policy_range());
        assert!(alpha(1.0).gamma().is_infinite());
        assert!(AlphaOrder::exponential().is_exponential());
    }

    #[test]
    fn alpha_exp_known_values() {
        assert_eq!(alpha_exp(alpha(2.0), 0.5).unwrap(), 1.5);
        assert_abs_diff_eq!(
            alpha_exp(alpha(1.0), 1.0).unwrap(),
            std::f64::consts::E,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(alpha_exp(alpha(1.5), 2.0).unwrap(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn alpha_exp_clamps_to_exact_zero() {
        assert_eq!(alpha_exp(alpha(2.0), -1.0).unwrap(), 0.0);
        assert_eq!(alpha_exp(alpha(2.0), -7.0).unwrap(), 0.0);
        assert_eq!(alpha_exp(alpha(1.25), -5.0).unwrap(), 0.0);
    }

    #[test]
    fn alpha_exp_rejects_non_finite() {
        assert!(alpha_exp(alpha(1.5), f64::NAN).is_err());
        assert!(alpha_exp(alpha(1.5), f64::INFINITY).is_err());
    }

    #[test]
    fn alpha_log_known_values() {
        assert_eq!(alpha_log(alpha(2.0), 3.0).unwrap(), 2.0);
        assert_abs_diff_eq!(
            alpha_log(alpha(1.0), std::f64::consts::E).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(alpha_log(alpha(1.5), 4.0).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn alpha_log_rejects_non_positive() {
        assert!(matches!(
            alpha_log(alpha(1.5), 0.0),
            Err(NumericsError::NonPositiveLog(_))
        ));
        assert!(alpha_log(alpha(1.5), -2.0).is_err());
        assert!(alpha_log(alpha(1.5), f64::NAN).is_err());
    }

    #[test]
    fn alpha_log_inverts_alpha_exp_on_a_grid() {
        let orders = [1.0, 1.1, 1.25, 1.5, 1.75, 2.0];
        let mut worst: f64 = 0.0;
        for &a in &orders {
            let a = alpha(a);
            let mut x = -10.0;
            while x <= 10.0 {
                if a.is_exponential() || 1.0 + (a.value() - 1.0) * x > 1e-6 {
                    let y = alpha_exp(a, x).unwrap();
                    let back = alpha_log(a, y).unwrap();
                    worst = worst.max((back - x).abs());
                }
                x += 0.1;
            }
        }
        assert!(worst < 1e-10, "worst round-trip error {worst:e}");
    }

    #[test]
    fn alpha_exp_converges_monotonically_to_exp() {
        let sup_error = |delta: f64| {
            let a = alpha(1.0 + delta);
            let mut sup: f64 = 0.0;
            let mut x = -10.0;
            while x <= 10.0 {
                sup = sup.max((alpha_exp(a, x).unwrap() - x.exp()).abs());
                x += 0.01;
            }
            sup
        };
        let errs: Vec<f64> = [1e-2, 1e-4, 1e-6].iter().map(|&d| sup_error(d)).collect();
        assert!(
            errs[0] > errs[1] && errs[1] > errs[2],
            "sup errors not monotone: {errs:?}"
        );
    }

    #[test]
    fn tsallis_identity_is_zero() {
        let p = dist(&[0.5, 0.5]);
        assert_eq!(tsallis_divergence(alpha(2.0), &p, &p).unwrap(), 0.0);
    }

    #[test]
    fn tsallis_order_two_known_value() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.25, 0.75]);
        assert_abs_diff_eq!(
            tsallis_divergence(alpha(2.0), &p, &q).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn tsallis_near_one_matches_kl() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.25, 0.75]);
        let kl = 0.5 * f64::ln(2.0) + 0.5 * f64::ln(2.0 / 3.0);
        let t = tsallis_divergence(alpha(1.000001), &p, &q).unwrap();
        assert!((t - kl).abs() < 1e-4, "tsallis {t} vs kl {kl}");
        assert_abs_diff_eq!(kl_divergence(&p, &q).unwrap(), kl, epsilon = 1e-15);
    }

    #[test]
    fn tsallis_rejects_orders_below_one() {
        let p = dist(&[0.5, 0.5]);
        assert!(matches!(
            tsallis_divergence(alpha(0.5), &p, &p),
            Err(NumericsError::InvalidAlpha(_))
        ));
    }

    #[test]
    fn tsallis_at_one_dispatches_to_kl() {
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.4, 0.6]);
        assert_eq!(
            tsallis_divergence(alpha(1.0), &p, &q).unwrap(),
            kl_divergence(&p, &q).unwrap()
        );
    }

    #[test]
    fn chi2_is_tsallis_order_two_bit_for_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.random_range(2..8);
            let p = random_distribution(&mut rng, n);
            let q = random_distribution(&mut rng, n);
            let t = tsallis_divergence(alpha(2.0), &p, &q).unwrap();
            let c = chi2_divergence(&p, &q).unwrap();
            assert_eq!(t.to_bits(), c.to_bits());
        }
    }

    #[test]
    fn divergences_signal_infinity_on_support_mismatch() {
        let p = DiscreteDistribution::new(vec![0.5, 0.5]).unwrap();
        let q = DiscreteDistribution::new(vec![1.0, 0.0]).unwrap();
        assert!(tsallis_divergence(alpha(1.5), &p, &q).unwrap().is_infinite());
        assert!(kl_divergence(&p, &q).unwrap().is_infinite());
        assert!(chi2_divergence(&p, &q).unwrap().is_infinite());
        // The reverse direction is fine: q puts no mass where p has none.
        assert!(kl_divergence(&q, &p).unwrap().is_finite());
    }

    #[test]
    fn divergences_reject_length_mismatch() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.2, 0.3, 0.5]);
        assert!(matches!(
            kl_divergence(&p, &q),
            Err(NumericsError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn tv_known_values() {
        let p = dist(&[0.5, 0.5]);
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        let a = dist(&[1.0, 0.0]);
        let b = dist(&[0.0, 1.0]);
        assert_eq!(tv_distance(&a, &b).unwrap(), 1.0);
    }

    fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> DiscreteDistribution {
        let weights: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
        DiscreteDistribution::from_weights(&weights).unwrap()
    }

    #[test]
    fn tsallis_non_negative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &a in &[1.1, 1.5, 2.0] {
            let a = alpha(a);
            for _ in 0..10_000 {
                let n = rng.random_range(2..8);
                let p = random_distribution(&mut rng, n);
                let q = random_distribution(&mut rng, n);
                let d = tsallis_divergence(a, &p, &q).unwrap();
                assert!(d >= 0.0 && d.is_finite(), "divergence {d}");
            }
        }
    }

    #[test]
    fn distribution_construction_renormalizes_small_drift() {
        let d = DiscreteDistribution::new(vec![0.5, 0.5 + 5e-7]).unwrap();
        let sum: f64 = d.probs().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn distribution_construction_rejects_bad_input() {
        assert!(matches!(
            DiscreteDistribution::new(vec![0.5, 0.5 + 5e-6]),
            Err(NumericsError::NotNormalized { .. })
        ));
        assert!(matches!(
            DiscreteDistribution::new(vec![-0.1, 1.1]),
            Err(NumericsError::InvalidProbability { .. })
        ));
        assert!(matches!(
            DiscreteDistribution::new(vec![]),
            Err(NumericsError::Empty)
        ));
        assert!(matches!(
            DiscreteDistribution::from_weights(&[0.0, 0.0]),
            Err(NumericsError::ZeroMass { .. })
        ));
    }

    #[test]
    fn uniform_distribution_and_index_lookup() {
        let d = DiscreteDistribution::uniform(4).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.index_from_uniform(0.0), 0);
        assert_eq!(d.index_from_uniform(0.26), 1);
        assert_eq!(d.index_from_uniform(0.999), 3);
        // Degenerate u = 1.0 still lands on a valid index.
        assert_eq!(d.index_from_uniform(1.0), 3);
    }

    #[test]
    fn beta_tail_validation_and_moments() {
        assert!(BetaTail::new(0.0).is_err());
        assert!(BetaTail::new(f64::NAN).is_err());
        let t = BetaTail::new(1.0).unwrap();
        assert_eq!(beta_gap_moment(t, 1), 0.5);
        assert_eq!(beta_gap_moment(t, 0), 1.0);
        let nearly_degenerate = BetaTail::new(1e-12).unwrap();
        assert_abs_diff_eq!(beta_gap_moment(nearly_degenerate, 1), 1.0, epsilon = 1e-9);
        let heavy = BetaTail::new(2.0).unwrap();
        assert_abs_diff_eq!(beta_gap_moment(heavy, 2), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn gap_from_uniform_known_values() {
        assert_eq!(
            beta_gap_from_uniform(BetaTail::new(1.0).unwrap(), 0.25),
            0.25
        );
        assert_abs_diff_eq!(
            beta_gap_from_uniform(BetaTail::new(2.0).unwrap(), 0.5),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let t = BetaTail::new(3.0).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| sample_beta_gap(t, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn monte_carlo_moments_match_identity_within_three_standard_errors() {
        let n = 1_000_000usize;
        for &kappa in &[0.1, 1.0, 10.0] {
            let tail = BetaTail::new(kappa).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(123);
            let samples: Vec<f64> = (0..n).map(|_| sample_beta_gap(tail, &mut rng)).collect();
            for m in 1u32..=3 {
                let powered: Vec<f64> = samples.iter().map(|u| u.powi(m as i32)).collect();
                let mean = powered.iter().sum::<f64>() / n as f64;
                let var = powered.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                let se = (var / n as f64).sqrt();
                let exact = beta_gap_moment(tail, m);
                assert!(
                    (mean - exact).abs() <= 3.0 * se,
                    "kappa={kappa} m={m}: mean {mean} vs exact {exact} (se {se:e})"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn from_weights_always_normalizes(weights in prop::collection::vec(1e-6f64..1e6, 1..32)) {
            let d = DiscreteDistribution::from_weights(&weights).unwrap();
            let sum: f64 = d.probs().iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-9);
            prop_assert!(d.probs().iter().all(|&p| p >= 0.0));
        }

        #[test]
        fn alpha_exp_monotone_in_x(a in 1.0f64..=2.0, x in -20.0f64..20.0, dx in 1e-6f64..5.0) {
            let a = AlphaOrder::new(a).unwrap();
            let lo = alpha_exp(a, x).unwrap();
            let hi = alpha_exp(a, x + dx).unwrap();
            prop_assert!(hi >= lo);
        }

        #[test]
        fn round_trip_within_valid_region(a in 1.0f64..=2.0, x in -0.9f64..10.0) {
            let a = AlphaOrder::new(a).unwrap();
            // x > -0.9 keeps 1 + (α−1)x ≥ 0.1 away from the clamp for every α ≤ 2.
            let y = alpha_exp(a, x).unwrap();
            let back = alpha_log(a, y).unwrap();
            prop_assert!((back - x).abs() < 1e-9);
        }
    }
}
