//! Acceptance gate: eleven end-to-end checks, one test per criterion, each printing a
//! single PASS/FAIL line (tables of per-cell diagnostics precede a FAIL). Tolerances
//! are pinned in the assertions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tailalign::io::{
    emit_plot, read_record_lines, write_records, write_sweep, PlotKind, RecordLine, TableFormat,
};
use tailalign::numerics::{
    alpha_exp, chi2_divergence, kl_divergence, tsallis_divergence, AlphaOrder, BetaTail,
    DiscreteDistribution,
};
use tailalign::policies::{
    bot_select_pipeline, selection_distribution, selection_tv, CandidatePool, ItpVariant,
    PolicySpec, ScoredCandidate,
};
use tailalign::regret::{
    inverse_kappa_coefficient, regret_proxy, expansion_heavy, RegretFamily, RegretInputs,
};
use tailalign::simulator::{
    generate_pool, run_sweep, Miscalibration, RewardWorld, SweepConfig, SweepPolicy, TailSpec,
};
use tailalign::tail::{default_cutoff, hill_estimate_from_gaps, PivotConfig};

fn verdict(name: &str, pass: bool, detail: &str) -> bool {
    println!(
        "[acceptance] {name}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn plain_world(kappa: f64) -> RewardWorld {
    RewardWorld::new(TailSpec::Fixed { kappa }, Miscalibration::none(), 0.0).unwrap()
}

/// Uniform draws mapped through the inverse CDF of the endpoint-gap law.
fn gap_samples(kappa: f64, count: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..count).map(|_| rng.random::<f64>().powf(kappa)).collect()
}

fn random_pool(size: usize, rng: &mut impl Rng) -> CandidatePool {
    let candidates = (0..size)
        .map(|i| ScoredCandidate {
            candidate_id: format!("c{i}"),
            proxy_reward_raw: 0.0,
            proxy_reward: rng.random::<f64>(),
            true_reward: None,
        })
        .collect();
    CandidatePool::from_normalized("p0", candidates).unwrap()
}

#[test]
fn check_01_deformed_exponential_uniform_convergence() {
    // Max over x in [-5, 5] of |exp_{1+delta}(x) - e^x| must shrink monotonically over
    // delta in {1e-2, 1e-4, 1e-6} and fall below 1e-3 at the last delta.
    let deltas = [1e-2, 1e-4, 1e-6];
    let mut maxima = Vec::new();
    for &delta in &deltas {
        let order = AlphaOrder::new(1.0 + delta).unwrap();
        let mut worst = (0.0f64, 0.0f64);
        for i in 0..=10_000 {
            let x = -5.0 + 10.0 * (i as f64) / 10_000.0;
            let gap = (alpha_exp(order, x).unwrap() - x.exp()).abs();
            if gap > worst.0 {
                worst = (gap, x);
            }
        }
        maxima.push(worst);
    }
    let monotone = maxima[0].0 > maxima[1].0 && maxima[1].0 > maxima[2].0;
    let small_enough = maxima[2].0 < 1e-3;
    let detail = format!(
        "max gaps {:.6e} (x={:+.2}), {:.6e} (x={:+.2}), {:.6e} (x={:+.2}); monotone {}; final < 1e-3: {}",
        maxima[0].0, maxima[0].1, maxima[1].0, maxima[1].1, maxima[2].0, maxima[2].1,
        monotone, small_enough
    );
    // The supremum sits at x = +5 where the deformation error is ~ e^5 * delta * x^2 / 2
    // = 1.86e-3 at delta = 1e-6, so the absolute clause is out of reach for this
    // interval; the convergence itself (the monotone clause) holds.
    let pass = verdict("check 01 deformed-exponential uniform convergence", monotone && small_enough, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn check_02_divergence_identities() {
    // Order-2 divergence must equal chi-square bit for bit, and order 1+1e-6 must sit
    // within 1e-4 of KL, across 1e4 random floored simplex pairs of dimension 2..=16.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6469_7665);
    let near_one = AlphaOrder::new(1.0 + 1e-6).unwrap();
    let two = AlphaOrder::new(2.0).unwrap();
    let mut worst_kl_gap = 0.0f64;
    for _ in 0..10_000 {
        let dim = rng.random_range(2..=16);
        let draw = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<f64> = (0..dim).map(|_| -rng.random::<f64>().ln()).collect();
            let sum: f64 = v.iter().sum();
            // Floor each coordinate at 1% of uniform so ratios stay bounded.
            let floor = 0.01 / dim as f64;
            for x in v.iter_mut() {
                *x = (1.0 - 0.01) * (*x / sum) + floor;
            }
            DiscreteDistribution::new(v).unwrap()
        };
        let p = draw(&mut rng);
        let q = draw(&mut rng);
        let chi2 = chi2_divergence(&p, &q).unwrap();
        let tsallis2 = tsallis_divergence(two, &p, &q).unwrap();
        assert!(
            tsallis2 == chi2,
            "order-2 divergence {tsallis2} != chi-square {chi2}"
        );
        let kl = kl_divergence(&p, &q).unwrap();
        let near = tsallis_divergence(near_one, &p, &q).unwrap();
        worst_kl_gap = worst_kl_gap.max((near - kl).abs());
    }
    let pass = worst_kl_gap < 1e-4;
    let detail =
        format!("order-2 exact on 10000 pairs; worst |order-(1+1e-6) - KL| = {worst_kl_gap:.3e}");
    assert!(verdict("check 02 divergence identities", pass, &detail), "{detail}");
}

#[test]
fn check_03_beta_moment_oracle() {
    // Monte-Carlo moments of the endpoint gap (1e6 draws) must match 1/(m*kappa + 1)
    // within three standard errors for m in {1,2,3}, kappa in {0.1, 1, 10}.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6265_7461);
    let mut detail = String::new();
    let mut pass = true;
    for &kappa in &[0.1, 1.0, 10.0] {
        let samples = gap_samples(kappa, 1_000_000, &mut rng);
        for m in 1..=3u32 {
            let powers: Vec<f64> = samples.iter().map(|u| u.powi(m as i32)).collect();
            let mean: f64 = powers.iter().sum::<f64>() / powers.len() as f64;
            let var: f64 = powers.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
                / (powers.len() - 1) as f64;
            let stderr = (var / powers.len() as f64).sqrt();
            let expected = 1.0 / (f64::from(m) * kappa + 1.0);
            let sigmas = (mean - expected).abs() / stderr;
            if sigmas > 3.0 {
                pass = false;
                detail.push_str(&format!(
                    "kappa {kappa} m {m}: {mean:.6} vs {expected:.6} ({sigmas:.1} sigma); "
                ));
            }
        }
    }
    if detail.is_empty() {
        detail = "all 9 moments within 3 standard errors of 1/(m*kappa+1)".to_string();
    }
    assert!(verdict("check 03 beta-moment oracle", pass, &detail), "{detail}");
}

#[test]
fn check_04_hill_estimator_consistency() {
    // The tail estimate at N = 1e5 with the sqrt-N cutoff, averaged over 10 seeds,
    // must land within 10% of the true index for kappa in {0.5, 2, 5}. The estimator
    // is fed endpoint gaps directly: rewards stored as 1 - u cannot represent gaps
    // below 2^-53, and at kappa = 5 those destroyed order statistics sit inside the
    // sqrt-N window.
    let n = 100_000;
    let cutoff = default_cutoff(n);
    let mut detail = String::new();
    let mut pass = true;
    for &kappa in &[0.5, 2.0, 5.0] {
        let mut sum = 0.0;
        for seed in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6869_6c6c ^ seed);
            let gaps = gap_samples(kappa, n, &mut rng);
            sum += hill_estimate_from_gaps(&gaps, cutoff).unwrap().kappa_hat();
        }
        let mean = sum / 10.0;
        let rel = (mean - kappa).abs() / kappa;
        if rel > 0.10 {
            pass = false;
        }
        detail.push_str(&format!("kappa {kappa}: mean estimate {mean:.4} ({:+.1}%); ", rel * 100.0));
    }
    assert!(verdict("check 04 tail-estimator consistency", pass, &detail), "{detail}");
}

#[test]
fn check_05_family_coincidence() {
    // Order-2 adaptive weighting must reproduce the affine family to 1e-12 per entry,
    // and order 1+1e-6 must sit within 1e-4 TV of exponential weighting, across 1e3
    // random pools.
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f_696e);
    let lambda = 0.5;
    let affine = PolicySpec::itp(lambda, ItpVariant::Affine).unwrap();
    let exponential = PolicySpec::sbon(lambda).unwrap();
    let order_two = PolicySpec::bot(lambda, 2.0).unwrap();
    let near_one = PolicySpec::bot(lambda, 1.0 + 1e-6).unwrap();
    let mut worst_entry = 0.0f64;
    let mut worst_tv = 0.0f64;
    for _ in 0..1_000 {
        let size = rng.random_range(2..=64);
        let pool = random_pool(size, &mut rng);
        let a = selection_distribution(&order_two, &pool).unwrap();
        let b = selection_distribution(&affine, &pool).unwrap();
        for (x, y) in a.probs().probs().iter().zip(b.probs().probs()) {
            worst_entry = worst_entry.max((x - y).abs());
        }
        let c = selection_distribution(&near_one, &pool).unwrap();
        let d = selection_distribution(&exponential, &pool).unwrap();
        worst_tv = worst_tv.max(selection_tv(&c, &d).unwrap());
    }
    let pass = worst_entry <= 1e-12 && worst_tv <= 1e-4;
    let detail = format!(
        "order-2 vs affine worst entry gap {worst_entry:.2e}; order-(1+1e-6) vs exponential worst TV {worst_tv:.2e}"
    );
    assert!(verdict("check 05 family coincidence", pass, &detail), "{detail}");
}

#[test]
fn check_06_heavy_tail_coefficient_match() {
    // The numerically extracted 1/kappa coefficient of the quadrature proxy must match
    // the closed-form expansion's coefficient within 15% relative, on
    // kappa in {5,10,20} x lambda in {0.25,0.5,1}, and additionally
    // alpha in {1.25,1.5,1.75,2} for the adaptive family. N = 256, epsilon = 0.5.
    let n = 256;
    let epsilon = 0.5;
    let mut failures = Vec::new();
    let mut cells = 0;
    println!("family   lambda alpha   measured      predicted     rel");
    let mut run_cell = |family: RegretFamily, lambda: f64, alpha: f64, label: String| {
        let base = RegretInputs::new(BetaTail::new(5.0).unwrap(), lambda, alpha, n, epsilon)
            .unwrap();
        for kappa in [5.0, 10.0, 20.0] {
            cells += 1;
            let measured = inverse_kappa_coefficient(
                |k| Ok(regret_proxy(family, &base.with_kappa(k)?)?.total),
                kappa,
            )
            .unwrap();
            let predicted = inverse_kappa_coefficient(
                |k| Ok(expansion_heavy(family, &base.with_kappa(k)?)?.total),
                kappa,
            )
            .unwrap();
            let rel = (measured - predicted).abs() / predicted.abs();
            println!(
                "{label:<8} {lambda:<6} {alpha:<6} {measured:>13.6e} {predicted:>13.6e} {:>6.1}%",
                rel * 100.0
            );
            if rel > 0.15 {
                failures.push(format!("{label} lambda={lambda} alpha={alpha} kappa={kappa}: {:.0}%", rel * 100.0));
            }
        }
    };
    for lambda in [0.25, 0.5, 1.0] {
        run_cell(RegretFamily::Sbon, lambda, 1.5, "sbon".to_string());
        run_cell(RegretFamily::ItpAffine, lambda, 1.5, "itp".to_string());
        for alpha in [1.25, 1.5, 1.75, 2.0] {
            run_cell(RegretFamily::Bot, lambda, alpha, "bot".to_string());
        }
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("all {cells} grid cells within 15%")
    } else {
        // The exponential family's distortion coefficient 1/(4 lambda^2) holds only for
        // lambda >> 1, and the adaptive family's gain coefficient
        // (alpha-1)/(2(lambda+alpha-1)) is a linearization around alpha = 2; away from
        // those corners the closed forms drift far beyond 15%.
        format!("{} of {cells} cells outside 15%: {}", failures.len(), failures.join("; "))
    };
    assert!(verdict("check 06 heavy-tail coefficient match", pass, &detail), "{detail}");
}

#[test]
fn check_07_light_tail_gain_difference() {
    // gain(exponential) - gain(affine) from quadrature must match kappa^3/lambda^2
    // within 20% relative at kappa in {0.01, 0.02, 0.05}, lambda = 0.5.
    let lambda = 0.5;
    let mut pass = true;
    let mut detail = String::new();
    for &kappa in &[0.01, 0.02, 0.05] {
        let inputs =
            RegretInputs::new(BetaTail::new(kappa).unwrap(), lambda, 1.5, 256, 0.0).unwrap();
        let sbon = regret_proxy(RegretFamily::Sbon, &inputs).unwrap().gain;
        let itp = regret_proxy(RegretFamily::ItpAffine, &inputs).unwrap().gain;
        let measured = sbon - itp;
        let predicted = kappa.powi(3) / (lambda * lambda);
        let rel = (measured - predicted).abs() / predicted;
        if rel > 0.20 {
            pass = false;
        }
        detail.push_str(&format!(
            "kappa {kappa}: measured {measured:.4e}, predicted {predicted:.4e}, ratio {:.2}; ",
            measured / predicted
        ));
    }
    if !pass {
        // The measured difference sits at twice the stated leading term (the quadratic
        // expansion of both gains shares kappa^2/lambda, and the cubic terms differ by
        // 2 kappa^3/lambda^2, not kappa^3/lambda^2), so a 20% band cannot contain it.
        detail.push_str("difference tracks 2*kappa^3/lambda^2");
    }
    assert!(verdict("check 07 light-tail gain difference", pass, &detail), "{detail}");
}

#[test]
fn check_08_order_gradient_sign_dichotomy() {
    // The finite-difference derivative of the proxy total with respect to the
    // interpolation order (central difference at alpha = 1.5, h = 0.01, quadrature)
    // must be negative at kappa = 20 and positive at kappa = 0.02, for lambda = 0.5
    // and epsilon in {0.1, 0.5}.
    let lambda = 0.5;
    let h = 0.01;
    let mut pass = true;
    let mut detail = String::new();
    for &epsilon in &[0.1, 0.5] {
        for &(kappa, want_negative) in &[(20.0, true), (0.02, false)] {
            let base =
                RegretInputs::new(BetaTail::new(kappa).unwrap(), lambda, 1.5, 256, epsilon)
                    .unwrap();
            let up = regret_proxy(RegretFamily::Bot, &base.with_alpha(1.5 + h).unwrap())
                .unwrap()
                .total;
            let down = regret_proxy(RegretFamily::Bot, &base.with_alpha(1.5 - h).unwrap())
                .unwrap()
                .total;
            let derivative = (up - down) / (2.0 * h);
            let ok = if want_negative {
                derivative < 0.0
            } else {
                derivative > 0.0
            };
            if !ok {
                pass = false;
            }
            detail.push_str(&format!(
                "kappa {kappa} eps {epsilon}: dB/dalpha {derivative:+.4e} (want {}); ",
                if want_negative { "<0" } else { ">0" }
            ));
        }
    }
    if !pass {
        // At kappa = 20, lambda = 0.5 the proxy total rises with the order across all
        // of (1, 2] for epsilon <= 0.5 (the gain falls with the order faster than the
        // weighted distortion does), and at kappa = 0.02, epsilon = 0.5 the total has
        // an interior minimum near order 1.5, so the stated signs are unreachable at
        // any stencil.
        detail.push_str("total is order-monotone-increasing at kappa 20; interior minimum at kappa 0.02, eps 0.5");
    }
    assert!(verdict("check 08 order-gradient sign dichotomy", pass, &detail), "{detail}");
}

#[test]
fn check_09_hacking_reproduction() {
    // In the tail-inflation world (kappa=5, strength 0.5, onset 0.9, pool 4096,
    // 10 trials, seed 0): the argmax policy's mean true reward at N=1024 must sit at
    // least 3 stderr below its own grid maximum while the adaptive policy stays within
    // 1 stderr of its maximum; and in a kappa=0.05 world the affine policy's proxy
    // gain from N=256 to N=1024 must be smaller than the adaptive policy's.
    let mis = Miscalibration::tail_inflation(0.5, 0.9).unwrap();
    let world = RewardWorld::new(TailSpec::Fixed { kappa: 5.0 }, mis, 0.0).unwrap();
    let sweep = SweepConfig::new(0);
    let policies = vec![
        SweepPolicy::fixed(PolicySpec::bon()),
        SweepPolicy::bot(0.05, PivotConfig::explicit(1.0).unwrap()),
    ];
    let result = run_sweep(&world, &sweep, &policies).unwrap();
    let stats = |policy: &str| {
        let rows: Vec<_> = result.rows().iter().filter(|r| r.policy == policy).collect();
        let last = rows.last().unwrap();
        let peak = rows
            .iter()
            .map(|r| r.true_reward_mean)
            .fold(f64::NEG_INFINITY, f64::max);
        (peak, last.true_reward_mean, last.true_reward_stderr)
    };
    let (bon_peak, bon_final, bon_se) = stats("bon");
    let bon_drop_sigmas = (bon_peak - bon_final) / bon_se;
    let hacking_shown = bon_drop_sigmas >= 3.0;
    let (bot_peak, bot_final, bot_se) = stats("bot");
    let bot_gap_sigmas = (bot_peak - bot_final) / bot_se;
    let adaptive_robust = bot_gap_sigmas <= 1.0;

    let light = plain_world(0.05);
    let light_sweep = SweepConfig::new(0).with_n_grid(vec![256, 1024]);
    let light_policies = vec![
        SweepPolicy::fixed(PolicySpec::itp(0.01, ItpVariant::Affine).unwrap()),
        SweepPolicy::bot(0.01, PivotConfig::explicit(1.0).unwrap()),
    ];
    let light_result = run_sweep(&light, &light_sweep, &light_policies).unwrap();
    let gain = |policy: &str| {
        light_result.row(policy, 1024).unwrap().proxy_reward_mean
            - light_result.row(policy, 256).unwrap().proxy_reward_mean
    };
    let saturation_shown = gain("itp") < gain("bot");

    let pass = hacking_shown && adaptive_robust && saturation_shown;
    let detail = format!(
        "argmax drop {bon_drop_sigmas:.1} stderr (need >=3, peak {bon_peak:.4} final {bon_final:.4}); \
         adaptive gap {bot_gap_sigmas:.2} stderr (need <=1); \
         affine proxy gain {:.4e} < adaptive {:.4e}: {saturation_shown}",
        gain("itp"),
        gain("bot")
    );
    assert!(verdict("check 09 hacking reproduction", pass, &detail), "{detail}");
}

#[test]
fn check_10_extreme_parameter_limits() {
    // Pivot 1e3 must reproduce exponential weighting within 0.01 TV per pool and
    // pivot 1e-3 the affine weighting within 0.01 TV; steering temperature 1e6 must
    // collapse the lambda-steered policies' mean true rewards within 2 stderr.
    let lambda = 0.5;
    let mut worst_sbon_tv = 0.0f64;
    let mut worst_itp_tv = 0.0f64;
    let mut pool_count = 0;
    for (i, kappa) in [0.5, 2.0, 5.0].iter().cycle().take(50).enumerate() {
        let world = plain_world(*kappa);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6c69_6d00 + i as u64);
        let g = generate_pool(&world, 256, "p0", &mut rng).unwrap();
        pool_count += 1;
        for (kappa0, reference, worst) in [
            (1e3, PolicySpec::sbon(lambda).unwrap(), &mut worst_sbon_tv),
            (
                1e-3,
                PolicySpec::itp(lambda, ItpVariant::Affine).unwrap(),
                &mut worst_itp_tv,
            ),
        ] {
            let mut select_rng = ChaCha8Rng::seed_from_u64(0x6c69_6d01 + i as u64);
            let out = bot_select_pipeline(
                &g.pool,
                lambda,
                PivotConfig::explicit(kappa0).unwrap(),
                None,
                &mut select_rng,
            )
            .unwrap();
            let ref_dist = selection_distribution(&reference, &g.pool).unwrap();
            *worst = worst.max(selection_tv(&out.distribution, &ref_dist).unwrap());
        }
    }
    let pivots_ok = worst_sbon_tv <= 0.01 && worst_itp_tv <= 0.01;

    let world = plain_world(2.0);
    let sweep = SweepConfig::new(0)
        .with_n_grid(vec![1, 32, 1024])
        .with_trials(5)
        .with_pool_size(2048);
    let flat = 1e6;
    let policies = vec![
        SweepPolicy::fixed(PolicySpec::sbon(flat).unwrap()),
        SweepPolicy::fixed(PolicySpec::itp(flat, ItpVariant::Affine).unwrap()),
        SweepPolicy::bot(flat, PivotConfig::explicit(1.0).unwrap()),
    ];
    let result = run_sweep(&world, &sweep, &policies).unwrap();
    let mut worst_sigmas = 0.0f64;
    for &n in &[1usize, 32, 1024] {
        let rows: Vec<_> = ["sbon", "itp", "bot"]
            .iter()
            .map(|p| result.row(p, n).unwrap())
            .collect();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                let gap = (rows[i].true_reward_mean - rows[j].true_reward_mean).abs();
                let se = (rows[i].true_reward_stderr.powi(2)
                    + rows[j].true_reward_stderr.powi(2))
                .sqrt();
                worst_sigmas = worst_sigmas.max(gap / se);
            }
        }
    }
    let collapse_ok = worst_sigmas <= 2.0;

    let pass = pivots_ok && collapse_ok;
    let detail = format!(
        "{pool_count} pools: worst TV vs exponential {worst_sbon_tv:.4} (pivot 1e3), vs affine {worst_itp_tv:.4} (pivot 1e-3); \
         flat-temperature worst pairwise gap {worst_sigmas:.2} combined-stderr"
    );
    assert!(verdict("check 10 extreme-parameter limits", pass, &detail), "{detail}");
}

#[test]
fn check_11_determinism_and_round_trip() {
    // Identical seeds must reproduce byte-identical CSV/SVG outputs, the JSONL format
    // must round-trip losslessly, and the full default sweep must finish within its
    // budget.
    let dir = tempfile::tempdir().unwrap();
    let world = plain_world(2.0);
    let started = std::time::Instant::now();
    let sweep = SweepConfig::new(0);
    let policies = vec![
        SweepPolicy::fixed(PolicySpec::bon()),
        SweepPolicy::fixed(PolicySpec::sbon(0.5).unwrap()),
        SweepPolicy::fixed(PolicySpec::itp(0.5, ItpVariant::Affine).unwrap()),
        SweepPolicy::bot(0.5, PivotConfig::explicit(1.0).unwrap()),
    ];
    let mut bytes = Vec::new();
    for run in 0..2 {
        let result = run_sweep(&world, &sweep, &policies).unwrap();
        let csv = dir.path().join(format!("sweep{run}.csv"));
        let svg = dir.path().join(format!("trajectory{run}.svg"));
        write_sweep(&result, &csv, TableFormat::Csv).unwrap();
        emit_plot(&result, PlotKind::Trajectory, &svg).unwrap();
        bytes.push((std::fs::read(&csv).unwrap(), std::fs::read(&svg).unwrap()));
    }
    let elapsed = started.elapsed();
    let deterministic = bytes[0] == bytes[1];
    let fast_enough = elapsed < std::time::Duration::from_secs(600);

    let records: Vec<RecordLine> = (0..100)
        .map(|i| {
            let mut meta = std::collections::BTreeMap::new();
            meta.insert("origin".to_string(), format!("gen{}", i % 3));
            RecordLine {
                prompt_id: format!("p{}", i / 10),
                candidate_id: format!("c{}", i % 10),
                proxy_reward: (i as f64) / 100.0,
                true_reward: if i % 2 == 0 { Some((i as f64) / 200.0) } else { None },
                meta,
            }
        })
        .collect();
    let first = dir.path().join("records_a.jsonl");
    let second = dir.path().join("records_b.jsonl");
    write_records(&records, &first).unwrap();
    let (read_back, issues) = read_record_lines(&first).unwrap();
    write_records(&read_back, &second).unwrap();
    let lossless = issues.is_empty()
        && std::fs::read(&first).unwrap() == std::fs::read(&second).unwrap()
        && read_back == records;

    let pass = deterministic && lossless && fast_enough;
    let detail = format!(
        "identical seeds byte-identical: {deterministic}; JSONL write-read-write lossless: {lossless}; \
         default 2x sweep in {:.1}s (< 600s)",
        elapsed.as_secs_f64()
    );
    assert!(verdict("check 11 determinism and round trip", pass, &detail), "{detail}");
}
