//! Cross-checks of the analytic machinery against independent oracles:
//! plain Simpson integration, closed forms, finite differences, and the
//! sampler. Everything here recomputes library quantities from scratch, so
//! agreement means the quadrature, the solvers, and the formulas line up,
//! not just that one code path is self-consistent.

use standby_core::{DowntimeKind, LifetimeDistribution, PolicyStatus, ShapeKind, SystemModel};

fn exp(rate: f64) -> LifetimeDistribution {
    LifetimeDistribution::exponential(rate).unwrap()
}

fn weibull(scale: f64, shape: f64) -> LifetimeDistribution {
    LifetimeDistribution::weibull(scale, shape).unwrap()
}

fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let denom = expected.abs().max(1e-300);
    assert!(
        (actual - expected).abs() / denom <= tol,
        "{what}: actual {actual} vs expected {expected} (rel tol {tol})"
    );
}

/// Composite Simpson rule with `n` panels (`n` even).
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

fn bathtub_main() -> LifetimeDistribution {
    LifetimeDistribution::min_of(vec![weibull(1.0, 0.5), weibull(1.0, 3.0)]).unwrap()
}

fn humped_main() -> LifetimeDistribution {
    LifetimeDistribution::max_of(vec![exp(1.0), exp(2.0)]).unwrap()
}

// ======================================================================
// Integrals against Simpson
// ======================================================================

#[test]
fn integrated_survival_matches_simpson() {
    let cases: [(LifetimeDistribution, f64, f64); 4] = [
        (weibull(1.0, 2.0), 1.3, 1e-9),
        (humped_main(), 2.0, 1e-9),
        // The square-root hazard has a cusp at zero, which Simpson handles
        // at reduced order; the tolerance reflects the oracle, not the
        // library.
        (bathtub_main(), 1.0, 1e-5),
        (exp(0.7), 3.0, 1e-9),
    ];
    for (d, t, tol) in cases {
        let oracle = simpson(|x| d.survival(x).unwrap(), 0.0, t, 80_000);
        assert_rel(d.integrated_survival(t).unwrap(), oracle, tol, "A(t)");
    }
}

#[test]
fn mean_matches_simpson_over_the_support() {
    for (d, tol) in [
        (weibull(1.0, 2.0), 1e-9),
        (humped_main(), 1e-9),
        (bathtub_main(), 1e-5),
    ] {
        let h = d.support_horizon(1e-13).unwrap();
        let oracle = simpson(|x| d.survival(x).unwrap(), 0.0, h, 80_000);
        assert_rel(d.mean().unwrap(), oracle, tol, "mean");
    }
}

// ======================================================================
// Derivative identities
// ======================================================================

#[test]
fn mrl_slope_identity_matches_finite_differences() {
    // m'(t) = m(t) r(t) - 1, checked against a central difference of the
    // residual life itself.
    for d in [weibull(1.0, 2.0), humped_main(), bathtub_main()] {
        for t in [0.2, 0.7, 1.5] {
            let h = 1e-5;
            let fd = (d.mrl(t + h).unwrap() - d.mrl(t - h).unwrap()) / (2.0 * h);
            let analytic = d.mrl_slope(t).unwrap();
            assert!(
                (analytic - fd).abs() <= 1e-4 * analytic.abs().max(1.0),
                "m' at {t}: analytic {analytic} vs fd {fd}"
            );
        }
    }
}

#[test]
fn both_optimality_function_forms_agree() {
    // phi(t) = r(t) A(t) + S(t) also equals a r(t) - m'(t) S(t), because
    // A = a - m S and m' = m r - 1. The two assemblies share no algebra.
    let model = SystemModel::new(weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0)).unwrap();
    let d = model.main();
    let a = d.mean().unwrap();
    for i in 1..40 {
        let t = 0.1 * i as f64;
        let direct = model.optimality_function(t).unwrap();
        let slope = d.mrl_slope(t).unwrap();
        let alternative = a * d.hazard(t).unwrap() - slope * d.survival(t).unwrap();
        assert_rel(direct, alternative, 1e-8, "phi forms");
    }
}

#[test]
fn optimality_target_equals_mean_over_threshold() {
    // mu1 / (mu1 - mu2) = a / K is the same constant reached two ways.
    for model in [
        SystemModel::new(weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0)).unwrap(),
        SystemModel::new(bathtub_main(), 1.0, exp(0.001), exp(4.0)).unwrap(),
        SystemModel::new(humped_main(), 0.1, exp(0.01), exp(6.0)).unwrap(),
    ] {
        let a = model.main_mean();
        let k = model.benefit_threshold();
        assert_rel(model.optimality_target(), a / k, 1e-12, "target");
    }
}

// ======================================================================
// Hazard structure
// ======================================================================

#[test]
fn min_of_hazard_adds_component_hazards() {
    let components = [weibull(1.0, 0.5), weibull(1.0, 3.0)];
    let combined = bathtub_main();
    for t in [0.05, 0.3, 1.0, 2.0] {
        let sum: f64 = components.iter().map(|c| c.hazard(t).unwrap()).sum();
        assert_rel(combined.hazard(t).unwrap(), sum, 1e-12, "hazard sum");
    }
}

#[test]
fn max_of_two_exponentials_matches_closed_forms() {
    let d = humped_main();
    for t in [0.1f64, 0.5, 1.0, 2.5] {
        let surv = (-t).exp() + (-2.0 * t).exp() - (-3.0 * t).exp();
        let dens = (-t).exp() + 2.0 * (-2.0 * t).exp() - 3.0 * (-3.0 * t).exp();
        assert_rel(d.survival(t).unwrap(), surv, 1e-12, "max survival");
        assert_rel(d.hazard(t).unwrap(), dens / surv, 1e-12, "max hazard");
    }
    assert_rel(d.mean().unwrap(), 7.0 / 6.0, 1e-10, "max mean");
}

#[test]
fn classified_change_points_match_analytic_roots() {
    // The bathtub floor solves r'(t) = 0 for r = 0.5 t^-0.5 + 3 t^2, which
    // gives t = 24^(-2/5) exactly.
    let d = bathtub_main();
    let shape = d
        .classify_hazard_shape(d.default_horizon().unwrap())
        .unwrap();
    assert!(
        matches!(shape.kind, ShapeKind::Bfr { .. }),
        "expected a bathtub, got {:?}",
        shape.kind
    );
    let expected = 24.0f64.powf(-0.4);
    assert_rel(
        shape.change_point().unwrap(),
        expected,
        1e-6,
        "bathtub floor",
    );

    // The humped ceiling has no algebraic closed form; its frozen root of
    // r'(t) = 0 is 1.44363547517881.
    let d = humped_main();
    let shape = d
        .classify_hazard_shape(d.default_horizon().unwrap())
        .unwrap();
    assert!(
        matches!(shape.kind, ShapeKind::Ubfr { .. }),
        "expected a hump, got {:?}",
        shape.kind
    );
    assert_rel(
        shape.change_point().unwrap(),
        1.44363547517881,
        1e-6,
        "hump peak",
    );
}

// ======================================================================
// The MTTF formula assembled from scratch
// ======================================================================

/// Rebuilds M(T) with Simpson pieces only: exposures as transforms of the
/// downtime survivals, the partial mean as the integrated main survival.
fn mttf_oracle(
    main: &LifetimeDistribution,
    lambda: f64,
    repair: &LifetimeDistribution,
    maintenance: &LifetimeDistribution,
    t: f64,
) -> f64 {
    let exposure = |d: &LifetimeDistribution| {
        let h = d.support_horizon(1e-13).unwrap().max(60.0 / lambda);
        simpson(
            |x| (-lambda * x).exp() * d.survival(x).unwrap(),
            0.0,
            h,
            80_000,
        )
    };
    let mu1 = exposure(repair);
    let mu2 = exposure(maintenance);
    let a_t = simpson(|x| main.survival(x).unwrap(), 0.0, t, 80_000);
    let fbar = main.survival(t).unwrap();
    let f = 1.0 - fbar;
    (1.0 / lambda) * (1.0 + a_t / (mu1 * f + mu2 * fbar))
}

#[test]
fn mttf_matches_a_from_scratch_assembly() {
    let cases = [
        (weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0), 0.9),
        (weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0), 2.0),
        (humped_main(), 0.1, exp(0.01), exp(6.0), 0.5),
        (humped_main(), 0.1, exp(0.01), exp(6.0), 3.0),
    ];
    for (main, lambda, repair, maintenance, t) in cases {
        let model =
            SystemModel::new(main.clone(), lambda, repair.clone(), maintenance.clone()).unwrap();
        let oracle = mttf_oracle(&main, lambda, &repair, &maintenance, t);
        assert_rel(model.mttf(t).unwrap(), oracle, 1e-8, "mttf assembly");
    }
}

#[test]
fn benefit_gain_matches_the_survival_weighted_identity() {
    // M(T) - M(inf) = S(T) (K - m(T)) / (lambda (mu1 F + mu2 S)): the same
    // difference without the cancellation of subtracting two large numbers.
    let model = SystemModel::new(weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0)).unwrap();
    let mu1 = model.downtime_exposure(DowntimeKind::Repair);
    let mu2 = model.downtime_exposure(DowntimeKind::Maintenance);
    let k = model.benefit_threshold();
    for i in 1..30 {
        let t = 0.12 * i as f64;
        let s = model.main().survival(t).unwrap();
        let f = 1.0 - s;
        let m = model.main().mrl(t).unwrap();
        let identity = s * (k - m) / (model.standby_rate() * (mu1 * f + mu2 * s));
        let direct = model.benefit(t).unwrap().gain;
        assert!(
            (direct - identity).abs() <= 1e-8 * model.mttf_no_pm(),
            "gain identity at {t}: direct {direct} vs identity {identity}"
        );
    }
}

// ======================================================================
// Sampler-backed identities
// ======================================================================

#[test]
fn exposure_identity_against_the_sampler() {
    // lambda mu_j = E[G_j_bar(X2)] with X2 the standby's exponential: the
    // left side comes from quadrature, the right from sampling.
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    let lambda = 1.0;
    let standby = exp(lambda);
    let model = SystemModel::new(weibull(1.0, 2.0), lambda, exp(1.0), weibull(0.5, 2.0)).unwrap();
    for kind in [DowntimeKind::Repair, DowntimeKind::Maintenance] {
        let downtime = match kind {
            DowntimeKind::Repair => model.repair(),
            DowntimeKind::Maintenance => model.maintenance(),
        };
        let n = 400_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let x2 = standby.sample(&mut rng);
            let g = downtime.survival(x2).unwrap();
            sum += g;
            sumsq += g * g;
        }
        let mc = sum / n as f64;
        let se = ((sumsq / n as f64 - mc * mc) / n as f64).sqrt();
        let analytic = lambda * model.downtime_exposure(kind);
        assert!(
            (mc - analytic).abs() <= 4.0 * se,
            "{kind:?}: mc {mc} vs analytic {analytic} (se {se})"
        );
    }
}

#[test]
fn simulation_satisfies_the_renewal_product_identity() {
    // E[time to failure] = E[cycles] * E[cycle length], with the cycle
    // length A(T) + p(T)/lambda taken from quadrature.
    let model = SystemModel::new(exp(1.0), 1.0, exp(1.0), exp(3.0)).unwrap();
    let t = 2.0f64.ln();
    let r = model.simulate_mttf(t, 400_000, 99).unwrap();
    let cycle = model.main().integrated_survival(t).unwrap()
        + model.cycle_failure_prob(t).unwrap() / model.standby_rate();
    let product = r.mean_cycles * cycle;
    assert!(
        (r.mean_ttf - product).abs() / r.mean_ttf <= 0.01,
        "Wald identity: mean {} vs cycles*length {}",
        r.mean_ttf,
        product
    );
}

// ======================================================================
// End-to-end policy coherence
// ======================================================================

#[test]
fn analysis_pieces_cohere_on_a_fresh_system() {
    // A system no unit test pins down: everything the analysis reports has
    // to satisfy its defining equation when re-evaluated.
    let model = SystemModel::new(
        LifetimeDistribution::min_of(vec![weibull(2.0, 0.7), weibull(1.4, 2.5)]).unwrap(),
        0.8,
        exp(0.5),
        exp(5.0),
    )
    .unwrap();
    let analysis = model.analyze().unwrap();
    let k = model.benefit_threshold();
    match analysis.status {
        PolicyStatus::Beneficial {
            threshold_time,
            optimal,
            ..
        } => {
            let m_at = model.main().mrl(threshold_time).unwrap();
            assert_rel(m_at, k, 1e-6, "m(T0) = K");
            if let Some(opt) = optimal {
                let phi = model.optimality_function(opt.pm_time).unwrap();
                assert_rel(phi, model.optimality_target(), 1e-6, "phi(T*) = target");
                assert!(opt.pm_time >= threshold_time * (1.0 - 1e-9));
                assert!(opt.gain > 0.0);
                assert_rel(
                    opt.mttf,
                    model.mttf(opt.pm_time).unwrap(),
                    1e-10,
                    "reported optimum MTTF",
                );
            }
        }
        other => panic!("expected a beneficial policy, got {other:?}"),
    }
}
