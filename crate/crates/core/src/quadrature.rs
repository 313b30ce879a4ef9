//! Composite Gauss–Legendre integration on [0, 1] with dyadic endpoint refinement.
//!
//! The regret evaluator needs expectations `E[g(U)]` under the endpoint-gap law
//! `U ~ Beta(1/κ, 1)`. The substitution `u = v^κ` turns the weighted integral into an
//! unweighted one over the unit interval,
//!
//! ```text
//! E[g(U)] = ∫₀¹ g(u) · (1/κ) u^{1/κ−1} du = ∫₀¹ g(v^κ) dv ,
//! ```
//!
//! removing the density singularity at 0 for κ > 1. What remains can still be stiff: for
//! small κ the integrand varies logarithmically near v = 0, and for large κ the map
//! `v ↦ v^κ` compresses all variation into a boundary layer near v = 1. Both are handled
//! by a fixed composite rule over dyadically shrinking panels toward *each* endpoint
//! (widths 2⁻¹, 2⁻², … down to 2⁻⁵⁷), with an n-point Gauss–Legendre rule on every panel.
//! An n-point rule integrates polynomials up to degree 2n−1 exactly, so with n ≥ 64 each
//! panel resolves monomials `v^κ` far beyond the κ range used anywhere in the crate.
//!
//! Nodes and weights are generated by Newton iteration on the Legendre recurrence; the
//! panel layout is deterministic, so repeated integrations are bit-identical.

/// Smallest dyadic panel exponent: panels shrink to width 2⁻⁵⁷ ≈ 6.9e−18 at each end.
const MAX_DYADIC_LEVEL: u32 = 57;

/// An n-point Gauss–Legendre rule on the canonical interval [−1, 1].
pub(crate) struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    /// Computes the n-point rule. Roots of the Legendre polynomial Pₙ are found by
    /// Newton iteration from the Chebyshev-based initial guesses; each converges in a
    /// handful of steps to machine precision.
    pub(crate) fn new(n: usize) -> Self {
        assert!(n >= 2, "quadrature rule needs at least 2 nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over [a, b] with the affinely mapped rule.
    fn integrate_panel(&self, a: f64, b: f64, f: &mut impl FnMut(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * t);
        }
        acc * half
    }

    /// Integrates `f` over [0, 1] with dyadic refinement toward both endpoints.
    pub(crate) fn integrate_unit(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        // Left half: [2^{-j-1}, 2^{-j}] for j = 1..=L, then the closing sliver [0, 2^{-L-1}].
        acc += self.integrate_panel(0.0, 0.5f64.powi(MAX_DYADIC_LEVEL as i32 + 1), &mut f);
        for j in 1..=MAX_DYADIC_LEVEL {
            let hi = 0.5f64.powi(j as i32);
            acc += self.integrate_panel(0.5 * hi, hi, &mut f);
        }
        // Right half: mirrored panels [1 - 2^{-j}, 1 - 2^{-j-1}], then [1 - 2^{-L-1}, 1].
        for j in (1..=MAX_DYADIC_LEVEL).rev() {
            let w = 0.5f64.powi(j as i32);
            acc += self.integrate_panel(1.0 - w, 1.0 - 0.5 * w, &mut f);
        }
        acc += self.integrate_panel(1.0 - 0.5f64.powi(MAX_DYADIC_LEVEL as i32 + 1), 1.0, &mut f);
        acc
    }
}

/// Evaluates (Pₙ(x), Pₙ′(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Expectation `E[g(U)]` for `U ~ Beta(1/κ, 1)` via the exact substitution `u = v^κ`.
pub(crate) fn beta_expectation(rule: &Rule, kappa: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
    rule.integrate_unit(|v| g(v.powf(kappa)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = Rule::new(8);
        // Degree 15 = 2n - 1 is still exact for an 8-point rule on one panel.
        let exact = 1.0 / 16.0;
        let got = rule.integrate_panel(0.0, 1.0, &mut |x: f64| x.powi(15));
        assert_abs_diff_eq!(got, exact, epsilon = 1e-15);
    }

    #[test]
    fn nodes_match_known_five_point_rule() {
        let rule = Rule::new(5);
        // Canonical 5-point Gauss–Legendre abscissa and weight.
        let x2 = (5.0f64 / 9.0 - 2.0 / 9.0 * (10.0f64 / 7.0).sqrt()).sqrt();
        assert_abs_diff_eq!(rule.nodes[3], x2, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights[2], 128.0 / 225.0, epsilon = 1e-14);
        let sum: f64 = rule.weights.iter().sum();
        assert_abs_diff_eq!(sum, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn unit_integral_handles_log_singularity() {
        let rule = Rule::new(64);
        let got = rule.integrate_unit(|v| -v.ln());
        assert_abs_diff_eq!(got, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn unit_integral_of_exponential() {
        let rule = Rule::new(64);
        let got = rule.integrate_unit(|v| v.exp());
        assert_abs_diff_eq!(got, std::f64::consts::E - 1.0, epsilon = 1e-13);
    }

    #[test]
    fn beta_moments_match_closed_form() {
        let rule = Rule::new(64);
        for &kappa in &[0.01, 0.3, 1.0, 5.0, 50.0] {
            for m in 1..=3 {
                let exact = 1.0 / (m as f64 * kappa + 1.0);
                let got = beta_expectation(&rule, kappa, |u| u.powi(m));
                assert_abs_diff_eq!(got, exact, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn boundary_layer_at_large_kappa_converges() {
        // exp(-u/λ) with κ = 50, λ = 0.1 concentrates all variation near v = 1.
        let exact = {
            // E[e^{-U/λ}] via fine reference rule.
            let fine = Rule::new(512);
            beta_expectation(&fine, 50.0, |u| (-u / 0.1).exp())
        };
        let coarse = Rule::new(64);
        let got = beta_expectation(&coarse, 50.0, |u| (-u / 0.1).exp());
        assert_abs_diff_eq!(got, exact, epsilon = 1e-11);
    }
}
