//! Serializable report shapes. JSON has no infinities, so every value that
//! can legitimately be infinite is either optional (absent means "never" or
//! "no finite value") or clamped by construction. All reports round-trip:
//! what a command emits, `serde_json` reads back into the same struct.

use serde::{Deserialize, Serialize};
use standby_core::{
    HazardShape, OrderCheck, OrderKind, OrderVerdict, PolicyAnalysis, PolicyStatus, ShapeKind,
    SimulationResult, SystemModel,
};

use crate::error::CliError;

/// Output of `analyze`: the model constants, the hazard shape, and the
/// policy decision. `t0`/`t1` bound the benefit window (`t1` null when the
/// window never closes), `t_star` is the MTTF-optimal schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub name: String,
    /// Mean life of the main unit.
    pub a: f64,
    /// Standby exposure during repair.
    pub mu1: f64,
    /// Standby exposure during maintenance.
    pub mu2: f64,
    pub delta_mu: f64,
    /// Benefit threshold: maintenance helps where the residual life of the
    /// main unit falls below K.
    #[serde(rename = "K")]
    pub k: f64,
    pub shape: String,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub t_star: Option<f64>,
    pub mttf_at_t_star: Option<f64>,
    pub mttf_no_pm: f64,
    pub status: String,
}

pub fn shape_label(shape: &HazardShape) -> &'static str {
    match shape.kind {
        ShapeKind::Ifr => "ifr",
        ShapeKind::Dfr => "dfr",
        ShapeKind::Bfr { .. } => "bfr",
        ShapeKind::Ubfr { .. } => "ubfr",
        ShapeKind::Unclassified => "unclassified",
    }
}

impl AnalyzeReport {
    pub fn from_analysis(name: &str, system: &SystemModel, analysis: &PolicyAnalysis) -> Self {
        use standby_core::DowntimeKind::{Maintenance, Repair};
        let mu1 = system.downtime_exposure(Repair);
        let mu2 = system.downtime_exposure(Maintenance);
        let (status, t0, t1, optimal) = match analysis.status {
            PolicyStatus::NotBeneficial { reason } => {
                use standby_core::NoBenefitReason::*;
                let label = match reason {
                    SlowerMaintenance => "slower_maintenance",
                    AntiAging => "anti_aging",
                    ThresholdNeverReached => "threshold_never_reached",
                };
                (label, None, None, None)
            }
            PolicyStatus::Beneficial {
                threshold_time,
                window_end,
                optimal,
            } => {
                let label = if optimal.is_some() {
                    "found"
                } else {
                    "beneficial"
                };
                (label, Some(threshold_time), window_end, optimal)
            }
        };
        AnalyzeReport {
            name: String::from(name),
            a: system.main_mean(),
            mu1,
            mu2,
            delta_mu: mu1 - mu2,
            k: analysis.benefit_threshold,
            shape: String::from(shape_label(&analysis.shape)),
            t0,
            t1,
            t_star: optimal.map(|o| o.pm_time),
            mttf_at_t_star: optimal.map(|o| o.mttf),
            mttf_no_pm: analysis.mttf_no_pm,
            status: String::from(status),
        }
    }
}

/// Output of `simulate`. `analytic` is the library's M(T) for the same
/// schedule and `z_score` the standardized gap between the two.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub estimate: f64,
    pub std_error: f64,
    pub replications: u64,
    pub seed: u64,
    pub mean_cycles: f64,
    pub analytic: f64,
    pub z_score: f64,
}

impl SimulateReport {
    pub fn new(result: &SimulationResult, analytic: f64) -> Self {
        let z_score = if result.std_error > 0.0 {
            (result.mean_ttf - analytic) / result.std_error
        } else {
            0.0
        };
        SimulateReport {
            estimate: result.mean_ttf,
            std_error: result.std_error,
            replications: result.replications,
            seed: result.seed,
            mean_cycles: result.mean_cycles,
            analytic,
            z_score,
        }
    }
}

/// Output of `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub shape: String,
    pub change_point: Option<f64>,
    pub grid_points: usize,
    pub sign_changes: usize,
    pub horizon: f64,
}

impl ClassifyReport {
    pub fn new(shape: &HazardShape) -> Self {
        ClassifyReport {
            shape: String::from(shape_label(shape)),
            change_point: shape.change_point(),
            grid_points: shape.diagnostics.grid_points,
            sign_changes: shape.diagnostics.sign_changes,
            horizon: shape.diagnostics.horizon,
        }
    }
}

/// One verified order hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderCheckReport {
    pub kind: String,
    pub holds: bool,
    pub violation: Option<ViolationReport>,
    pub grid_points: usize,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub at: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl OrderCheckReport {
    pub fn new(check: &OrderCheck) -> Self {
        let kind = match check.kind {
            OrderKind::Stochastic => "stochastic",
            OrderKind::LaplaceTransform => "laplace_transform",
            OrderKind::MeanResidualLife => "mean_residual_life",
        };
        let violation = match check.verdict {
            OrderVerdict::Holds => None,
            OrderVerdict::Fails(v) => Some(ViolationReport {
                at: v.at,
                lhs: v.lhs,
                rhs: v.rhs,
            }),
        };
        OrderCheckReport {
            kind: String::from(kind),
            holds: check.verdict.holds(),
            violation,
            grid_points: check.grid_points,
            upper: check.upper,
        }
    }
}

/// Output of `compare --mode mttf`: hypothesis verdicts, the schedule grid
/// `[T, mttf_first, mttf_second]`, and the dominance conclusion. The grid
/// is filled in even when a hypothesis fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareMttfReport {
    pub main_order: OrderCheckReport,
    pub standby_rate_ok: bool,
    pub repair_order: OrderCheckReport,
    pub maintenance_order: OrderCheckReport,
    pub exposure_gaps_ok: bool,
    pub premises_hold: bool,
    pub no_pm_first: f64,
    pub no_pm_second: f64,
    pub worst_gap: f64,
    /// Schedule of the smallest margin; null marks the no-maintenance limit.
    pub worst_at: Option<f64>,
    pub conclusion_checked: bool,
    pub conclusion_holds: bool,
    pub grid: Vec<[f64; 3]>,
}

/// Output of `compare --mode thresholds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareThresholdsReport {
    pub setup_matches: bool,
    pub mean_gap: f64,
    pub residual_life_order: Option<OrderCheckReport>,
    pub premises_hold: bool,
    pub threshold_constant_first: f64,
    pub threshold_constant_second: f64,
    pub t0_first: Option<f64>,
    pub t0_second: Option<f64>,
    pub conclusion_checked: bool,
    pub conclusion_holds: bool,
}

/// Output of `compare --mode optimal`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOptimalReport {
    pub cross_product_first: f64,
    pub cross_product_second: f64,
    pub predicted_first_later: bool,
    pub t_star_first: Option<f64>,
    pub t_star_second: Option<f64>,
    pub observed_first_later: Option<bool>,
    pub consistent: Option<bool>,
}

/// Pretty JSON plus a trailing newline, byte-stable for fixed inputs.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Twelve significant digits, plain decimal or scientific as shortest.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return String::from("0");
    }
    let formatted = format!("{x:.11e}");
    // Rust's `e` notation writes exponents without a plus sign; keep the
    // plain form when it is no longer than a typical reader expects.
    let abs = x.abs();
    if (1e-4..1e12).contains(&abs) {
        let digits = abs.log10().floor() as i32;
        let decimals = (11 - digits).max(0) as usize;
        let plain = format!("{x:.decimals$}");
        return plain;
    }
    formatted
}
