//! One function per subcommand. Each returns the full report as a string
//! (JSON or CSV); the caller decides where it goes. Keeping the payloads as
//! strings makes the byte-for-byte determinism contract easy to test.

use standby_core::{
    compare_optimal_times, compare_thresholds, verify_mttf_dominance, OrderOptions, SystemModel,
};

use crate::config::{DistributionSpec, ScenarioConfig};
use crate::error::CliError;
use crate::report::{
    sig12, to_json_pretty, AnalyzeReport, ClassifyReport, CompareMttfReport, CompareOptimalReport,
    CompareThresholdsReport, OrderCheckReport, SimulateReport,
};

/// Scheduled maintenance time given on the command line: a nonnegative
/// number, or the word `inf` for "never maintain".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PmSpec {
    Finite(f64),
    Never,
}

impl PmSpec {
    pub fn as_time(&self) -> f64 {
        match self {
            PmSpec::Finite(t) => *t,
            PmSpec::Never => f64::INFINITY,
        }
    }
}

impl std::str::FromStr for PmSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lowered = s.trim().to_ascii_lowercase();
        if matches!(lowered.as_str(), "inf" | "infinity" | "never") {
            return Ok(PmSpec::Never);
        }
        lowered
            .parse::<f64>()
            .map(PmSpec::Finite)
            .map_err(|_| format!("expected a time or 'inf', got '{s}'"))
    }
}

/// Which comparison theorem `compare` verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CompareMode {
    /// Pointwise MTTF dominance from component-wise orders.
    Mttf,
    /// Threshold-time ordering for residual-life ordered mains.
    Thresholds,
    /// The optimal-time product rule.
    Optimal,
}

fn build_system(config: &ScenarioConfig) -> Result<SystemModel, CliError> {
    config.model.to_system()
}

// ======================================================================
// analyze
// ======================================================================

pub fn analyze(config: &ScenarioConfig) -> Result<String, CliError> {
    let system = build_system(config)?;
    let analysis = system
        .analyze_with(&config.analysis_options())
        .map_err(CliError::from_core)?;
    to_json_pretty(&AnalyzeReport::from_analysis(
        &config.name,
        &system,
        &analysis,
    ))
}

// ======================================================================
// curve
// ======================================================================

pub fn curve(
    config: &ScenarioConfig,
    t_min: f64,
    t_max: f64,
    points: usize,
) -> Result<String, CliError> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err(CliError::Config(format!(
            "curve needs 0 < t-min < t-max < inf, got {t_min} and {t_max}"
        )));
    }
    if points < 2 {
        return Err(CliError::Config(format!(
            "curve needs at least 2 points, got {points}"
        )));
    }

    let system = build_system(config)?;
    let main = system.main();
    let no_pm = system.mttf_no_pm();

    let mut out = String::from("T,mttf,mttf_no_pm,benefit,mrl,hazard,phi\n");
    for i in 0..points {
        // Hit both endpoints exactly; interior points interpolate.
        let t = if i + 1 == points {
            t_max
        } else {
            t_min + (t_max - t_min) * i as f64 / (points - 1) as f64
        };
        let mttf = system.mttf(t).map_err(CliError::from_core)?;
        let mrl = main.mrl(t).map_err(CliError::from_core)?;
        let hazard = main.hazard(t).map_err(CliError::from_core)?;
        let phi = system.optimality_function(t).map_err(CliError::from_core)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(t),
            sig12(mttf),
            sig12(no_pm),
            sig12(mttf - no_pm),
            sig12(mrl),
            sig12(hazard),
            sig12(phi)
        ));
    }
    Ok(out)
}

// ======================================================================
// simulate
// ======================================================================

pub fn simulate(
    config: &ScenarioConfig,
    pm: PmSpec,
    replications: Option<u64>,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let defaults = config.simulation.unwrap_or_default();
    let replications = replications.or(defaults.replications).unwrap_or(100_000);
    let seed = seed.or(defaults.seed).unwrap_or(0);

    let system = build_system(config)?;
    let pm_time = pm.as_time();
    let result = system
        .simulate_mttf(pm_time, replications, seed)
        .map_err(CliError::from_core)?;
    let analytic = system.mttf(pm_time).map_err(CliError::from_core)?;
    to_json_pretty(&SimulateReport::new(&result, analytic))
}

// ======================================================================
// compare
// ======================================================================

pub fn compare(
    config: &ScenarioConfig,
    mode: CompareMode,
    points: Option<usize>,
) -> Result<String, CliError> {
    let second_spec = config.comparison.as_ref().ok_or_else(|| {
        CliError::Config(String::from(
            "compare needs a 'comparison' model in the scenario",
        ))
    })?;
    let first = build_system(config)?;
    let second = second_spec.to_system()?;

    let mut order_options = OrderOptions::default();
    if let Some(p) = points {
        order_options.schedule_points = p;
    }
    let analysis_options = config.analysis_options();

    match mode {
        CompareMode::Mttf => {
            let r = verify_mttf_dominance(&first, &second, &order_options)
                .map_err(CliError::from_core)?;
            to_json_pretty(&CompareMttfReport {
                main_order: OrderCheckReport::new(&r.main_order),
                standby_rate_ok: r.standby_rate_ok,
                repair_order: OrderCheckReport::new(&r.repair_order),
                maintenance_order: OrderCheckReport::new(&r.maintenance_order),
                exposure_gaps_ok: r.exposure_gaps_ok,
                premises_hold: r.premises_hold,
                no_pm_first: r.no_pm_upper,
                no_pm_second: r.no_pm_lower,
                worst_gap: r.worst_gap,
                worst_at: r.worst_at.is_finite().then_some(r.worst_at),
                conclusion_checked: r.premises_hold,
                conclusion_holds: r.conclusion_holds,
                grid: r.grid.iter().map(|&(t, up, lo)| [t, up, lo]).collect(),
            })
        }
        CompareMode::Thresholds => {
            let r = compare_thresholds(&first, &second, &order_options, &analysis_options)
                .map_err(CliError::from_core)?;
            to_json_pretty(&CompareThresholdsReport {
                setup_matches: r.setup_matches,
                mean_gap: r.mean_gap,
                residual_life_order: r.residual_life_order.as_ref().map(OrderCheckReport::new),
                premises_hold: r.premises_hold,
                threshold_constant_first: r.threshold_constant_a,
                threshold_constant_second: r.threshold_constant_b,
                t0_first: r.threshold_time_a,
                t0_second: r.threshold_time_b,
                conclusion_checked: r.premises_hold,
                conclusion_holds: r.premises_hold && r.conclusion_holds,
            })
        }
        CompareMode::Optimal => {
            let r = compare_optimal_times(&first, &second, &analysis_options)
                .map_err(CliError::from_core)?;
            to_json_pretty(&CompareOptimalReport {
                cross_product_first: r.cross_product_a,
                cross_product_second: r.cross_product_b,
                predicted_first_later: r.predicted_a_later,
                t_star_first: r.optimal_a,
                t_star_second: r.optimal_b,
                observed_first_later: r.observed_a_later,
                consistent: r.consistent,
            })
        }
    }
}

// ======================================================================
// classify
// ======================================================================

pub fn classify(dist_json: &str) -> Result<String, CliError> {
    let spec = DistributionSpec::from_json(dist_json)?;
    let d = spec.to_distribution()?;
    let horizon = d.default_horizon().map_err(CliError::from_core)?;
    let shape = d
        .classify_hazard_shape(horizon)
        .map_err(CliError::from_core)?;
    to_json_pretty(&ClassifyReport::new(&shape))
}
