//! Stochastic orders and system comparison theorems.
//!
//! Three partial orders on lifetimes drive the comparative statics:
//!
//! * usual stochastic order: `X <=st Y` iff `S_X(t) <= S_Y(t)` for all t;
//! * Laplace transform order: `X <=Lt Y` iff `E exp(-sX) >= E exp(-sY)` for
//!   all s > 0, checked through the transform of the survival function
//!   `integral exp(-st) S(t) dt`, which is the mean of min(Exp(s), X) and
//!   reduces to the plain mean at s = 0;
//! * mean residual life order: `X <=mrl Y` iff `m_X(t) <= m_Y(t)` for all t.
//!
//! Checks are grid scans that report the leftmost violation; "holds" means
//! no violation beyond the numeric tolerance anywhere on the grid, which is
//! evidence, not proof. On top of the orders sit three theorems: pointwise
//! MTTF dominance between component-wise ordered systems, threshold-time
//! ordering for residual-life ordered main units, and the product rule
//! deciding which of two downtime configurations waits longer before
//! maintaining. Each verifier reports its hypothesis verdicts next to the
//! observed conclusion, and keeps the observations even when a hypothesis
//! fails, so a surprising pair can be inspected rather than guessed at.

use crate::distributions::{LifetimeDistribution, DEFAULT_HORIZON_SURVIVAL};
use crate::error::{Error, Result};
use crate::numeric;
use crate::solvers::AnalysisOptions;
use crate::system::{DowntimeKind, SystemModel};

use alloc::vec;
use alloc::vec::Vec;

// ======================================================================
// Order checks
// ======================================================================

/// Which partial order to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Pointwise survival comparison.
    Stochastic,
    /// Laplace transform comparison over a grid of transform arguments.
    LaplaceTransform,
    /// Pointwise mean residual life comparison.
    MeanResidualLife,
}

/// Where and how badly an order failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    /// Grid location (a time, or a transform argument for `<=Lt`).
    pub at: f64,
    /// Left side value there (should have been the smaller one).
    pub lhs: f64,
    /// Right side value there.
    pub rhs: f64,
}

/// Outcome of an order check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderVerdict {
    /// No violation beyond tolerance on the scanned grid.
    Holds,
    /// Leftmost violation found.
    Fails(Violation),
}

impl OrderVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OrderVerdict::Holds)
    }
}

/// A completed order check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderCheck {
    pub kind: OrderKind,
    pub verdict: OrderVerdict,
    /// Number of grid points scanned.
    pub grid_points: usize,
    /// Upper end of the scanned time window (or transform window).
    pub upper: f64,
}

/// Tuning for the grid scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderOptions {
    /// Points per survival or residual-life scan grid.
    pub grid_points: usize,
    /// Points on the transform-argument grid (a mean comparison at s = 0 is
    /// always added on top).
    pub transform_points: usize,
    /// Schedules per MTTF grid in the system comparisons.
    pub schedule_points: usize,
    /// Survival level bounding the shared time horizon.
    pub horizon_survival: f64,
    /// Transform argument range for the Laplace order.
    pub transform_range: (f64, f64),
    /// Relative slack before a gap counts as a violation.
    pub tolerance: f64,
}

impl Default for OrderOptions {
    fn default() -> Self {
        OrderOptions {
            grid_points: 2048,
            transform_points: 64,
            schedule_points: 128,
            horizon_survival: DEFAULT_HORIZON_SURVIVAL,
            transform_range: (1e-3, 1e3),
            tolerance: 1e-8,
        }
    }
}

impl OrderOptions {
    fn validate(&self) -> Result<()> {
        if self.grid_points < 16 {
            return Err(Error::InvalidParameter(alloc::format!(
                "order grids need at least 16 points, got {}",
                self.grid_points
            )));
        }
        if self.transform_points < 8 {
            return Err(Error::InvalidParameter(alloc::format!(
                "transform grids need at least 8 points, got {}",
                self.transform_points
            )));
        }
        if self.schedule_points < 8 {
            return Err(Error::InvalidParameter(alloc::format!(
                "schedule grids need at least 8 points, got {}",
                self.schedule_points
            )));
        }
        if !(self.horizon_survival > 0.0 && self.horizon_survival < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "horizon survival must lie in (0, 1), got {}",
                self.horizon_survival
            )));
        }
        let (lo, hi) = self.transform_range;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "transform range must satisfy 0 < lo < hi < inf, got ({lo}, {hi})"
            )));
        }
        if !(self.tolerance >= 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "tolerance must lie in [0, 1), got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Transform of the survival function: `integral exp(-st) S(t) dt`, the mean
/// of the series pair min(Exp(s), X). `E exp(-sX) = 1 - s * transform`, and
/// the transform at s = 0 is the plain mean.
fn survival_transform(d: &LifetimeDistribution, s: f64) -> Result<f64> {
    if s == 0.0 {
        return d.mean();
    }
    let probe = LifetimeDistribution::exponential(s)?;
    LifetimeDistribution::min_of(vec![probe, d.clone()])?.mean()
}

/// One side of an order comparison, evaluated pointwise over the grid.
type OrderCurve<'a> = alloc::boxed::Box<dyn FnMut(f64) -> Result<f64> + 'a>;

/// Checks `lhs <= rhs` in the given order by scanning a grid and reporting
/// the leftmost violation beyond tolerance.
pub fn check_order(
    lhs: &LifetimeDistribution,
    rhs: &LifetimeDistribution,
    kind: OrderKind,
    options: &OrderOptions,
) -> Result<OrderCheck> {
    options.validate()?;
    lhs.validate()?;
    rhs.validate()?;

    let (grid, mut lhs_f, mut rhs_f): (Vec<f64>, OrderCurve<'_>, OrderCurve<'_>) = match kind {
        OrderKind::Stochastic | OrderKind::MeanResidualLife => {
            // The shared window ends where the earlier-dying side runs out:
            // past that point its survival is ~0 and its residual life is
            // undefined, and neither can raise a violation.
            let horizon = lhs
                .support_horizon(options.horizon_survival)?
                .min(rhs.support_horizon(options.horizon_survival)?);
            let grid = numeric::log_spaced(1e-9 * horizon, horizon, options.grid_points);
            match kind {
                OrderKind::Stochastic => (
                    grid,
                    alloc::boxed::Box::new(|t| lhs.survival(t)),
                    alloc::boxed::Box::new(|t| rhs.survival(t)),
                ),
                _ => (
                    grid,
                    alloc::boxed::Box::new(|t| lhs.mrl(t)),
                    alloc::boxed::Box::new(|t| rhs.mrl(t)),
                ),
            }
        }
        OrderKind::LaplaceTransform => {
            let (lo, hi) = options.transform_range;
            let mut grid = vec![0.0];
            grid.extend(numeric::log_spaced(lo, hi, options.transform_points));
            (
                grid,
                alloc::boxed::Box::new(|s| survival_transform(lhs, s)),
                alloc::boxed::Box::new(|s| survival_transform(rhs, s)),
            )
        }
    };

    let upper = *grid.last().expect("grid is never empty");
    let points = grid.len();
    let mut verdict = OrderVerdict::Holds;
    for &x in &grid {
        let a = lhs_f(x)?;
        let b = rhs_f(x)?;
        let band = (options.tolerance * a.abs().max(b.abs())).max(1e-14);
        if a > b + band {
            verdict = OrderVerdict::Fails(Violation {
                at: x,
                lhs: a,
                rhs: b,
            });
            break;
        }
    }

    Ok(OrderCheck {
        kind,
        verdict,
        grid_points: points,
        upper,
    })
}

impl LifetimeDistribution {
    /// Mean time between renewals when the unit is replaced at age `t` or on
    /// failure, whichever comes first: `integral_0^t S / F(t)`. Constant and
    /// equal to the mean for memoryless units; decreasing in `t` for aging
    /// ones, which is what makes early replacement worthwhile there.
    pub fn age_replacement_mttf(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        let f = self.cdf(t)?;
        if f == 0.0 {
            return Err(Error::BeyondSupport(t));
        }
        Ok(self.integrated_survival(t)? / f)
    }
}

// ======================================================================
// Comparison theorems
// ======================================================================

/// Verification record for pointwise MTTF dominance between two systems.
///
/// The grid and the no-maintenance limits are always evaluated, so a pair
/// whose hypotheses fail can still be inspected; `conclusion_holds` only
/// carries the theorem's weight when `premises_hold` is true.
#[derive(Debug, Clone, PartialEq)]
pub struct MttfDominanceReport {
    /// `lower.main <=st upper.main`.
    pub main_order: OrderCheck,
    /// The upper system's standby unit fails no faster.
    pub standby_rate_ok: bool,
    /// `upper.repair <=Lt lower.repair`.
    pub repair_order: OrderCheck,
    /// `upper.maintenance <=Lt lower.maintenance`.
    pub maintenance_order: OrderCheck,
    /// Maintenance exposes the standby no longer than repair does, in both
    /// systems. This is the standing model assumption; dominance can
    /// genuinely reverse without it.
    pub exposure_gaps_ok: bool,
    /// Every hypothesis above holds.
    pub premises_hold: bool,
    /// Schedules with both mean times to failure: `(T, upper, lower)`.
    pub grid: Vec<(f64, f64, f64)>,
    /// No-maintenance limits of the two systems.
    pub no_pm_upper: f64,
    pub no_pm_lower: f64,
    /// `M_upper(T) >= M_lower(T)` held, within tolerance, at every grid
    /// schedule and at the no-maintenance limit.
    pub dominates_on_grid: bool,
    /// Smallest observed margin `M_upper - M_lower` and where it occurred
    /// (infinity marks the no-maintenance limit).
    pub worst_gap: f64,
    pub worst_at: f64,
    /// Premises hold and the grid shows dominance.
    pub conclusion_holds: bool,
}

/// Checks that `upper` dominates `lower` in MTTF at every schedule, along
/// with the component orders that imply it: a stochastically longer-lived
/// main unit, a standby that fails no faster, transform-ordered downtimes,
/// and maintenance no slower than repair within each system.
pub fn verify_mttf_dominance(
    upper: &SystemModel,
    lower: &SystemModel,
    options: &OrderOptions,
) -> Result<MttfDominanceReport> {
    options.validate()?;

    let main_order = check_order(lower.main(), upper.main(), OrderKind::Stochastic, options)?;
    let standby_rate_ok = upper.standby_rate() <= lower.standby_rate();
    let repair_order = check_order(
        upper.repair(),
        lower.repair(),
        OrderKind::LaplaceTransform,
        options,
    )?;
    let maintenance_order = check_order(
        upper.maintenance(),
        lower.maintenance(),
        OrderKind::LaplaceTransform,
        options,
    )?;
    let exposure_gaps_ok = upper.benefit_threshold() >= 0.0 && lower.benefit_threshold() >= 0.0;
    let premises_hold = main_order.verdict.holds()
        && standby_rate_ok
        && repair_order.verdict.holds()
        && maintenance_order.verdict.holds()
        && exposure_gaps_ok;

    // Scan schedules over the joint horizon plus the no-maintenance limit.
    let horizon = upper
        .main()
        .support_horizon(options.horizon_survival)?
        .max(lower.main().support_horizon(options.horizon_survival)?);
    let schedules = numeric::log_spaced(1e-9 * horizon, horizon, options.schedule_points);

    let no_pm_upper = upper.mttf_no_pm();
    let no_pm_lower = lower.mttf_no_pm();
    let mut grid = Vec::with_capacity(schedules.len());
    let mut worst_gap = no_pm_upper - no_pm_lower;
    let mut worst_at = f64::INFINITY;
    for &t in &schedules {
        let up = upper.mttf(t)?;
        let lo = lower.mttf(t)?;
        if up - lo < worst_gap {
            worst_gap = up - lo;
            worst_at = t;
        }
        grid.push((t, up, lo));
    }
    let band = options.tolerance * no_pm_upper.abs().max(no_pm_lower.abs());
    let dominates_on_grid = worst_gap >= -band;

    Ok(MttfDominanceReport {
        main_order,
        standby_rate_ok,
        repair_order,
        maintenance_order,
        exposure_gaps_ok,
        premises_hold,
        grid,
        no_pm_upper,
        no_pm_lower,
        dominates_on_grid,
        worst_gap,
        worst_at,
        conclusion_holds: premises_hold && dominates_on_grid,
    })
}

/// Verification record for the threshold-time comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdComparisonReport {
    /// Both systems share the standby rate and the downtime distributions
    /// (structurally), and the main means agree to 1e-8 relative.
    pub setup_matches: bool,
    /// Relative gap between the two main means.
    pub mean_gap: f64,
    /// `b.main <=mrl a.main`; only checked once the setup matches, because
    /// mismatched means make the comparison vacuous.
    pub residual_life_order: Option<OrderCheck>,
    /// Setup matches and the residual life order holds.
    pub premises_hold: bool,
    /// Benefit constants; equal by construction when the setup matches.
    pub threshold_constant_a: f64,
    pub threshold_constant_b: f64,
    /// Threshold times, `None` where the residual life never reaches the
    /// constant on the scanned horizon.
    pub threshold_time_a: Option<f64>,
    pub threshold_time_b: Option<f64>,
    /// System a turns its benefit on no earlier than system b, counting a
    /// missing crossing as "never"; carries the theorem's weight only when
    /// the premises hold.
    pub conclusion_holds: bool,
}

/// Compares benefit onsets of two systems that differ only in the main
/// unit. With equal main means and matching downtimes both systems share
/// the benefit constant K, so a main with everywhere-longer residual life
/// stays above that bar at least as long:
///
/// ```text
/// m_b(t) <= m_a(t) for all t    implies    T0_a >= T0_b.
/// ```
pub fn compare_thresholds(
    a: &SystemModel,
    b: &SystemModel,
    order_options: &OrderOptions,
    analysis_options: &AnalysisOptions,
) -> Result<ThresholdComparisonReport> {
    order_options.validate()?;
    let mean_a = a.main_mean();
    let mean_b = b.main_mean();
    let mean_gap = (mean_a - mean_b).abs() / mean_a.abs().max(mean_b.abs());
    let setup_matches = a.standby_rate() == b.standby_rate()
        && a.repair() == b.repair()
        && a.maintenance() == b.maintenance()
        && mean_gap <= 1e-8;

    let residual_life_order = if setup_matches {
        Some(check_order(
            b.main(),
            a.main(),
            OrderKind::MeanResidualLife,
            order_options,
        )?)
    } else {
        None
    };
    let premises_hold = setup_matches
        && residual_life_order
            .as_ref()
            .map(|c| c.verdict.holds())
            .unwrap_or(false);

    let threshold_time_a = a.threshold_time(analysis_options)?;
    let threshold_time_b = b.threshold_time(analysis_options)?;
    let conclusion_holds = match (threshold_time_a, threshold_time_b) {
        (Some(ta), Some(tb)) => ta >= tb * (1.0 - 1e-6),
        // Never reaching the bar means waiting forever, which is "later"
        // than any finite onset.
        (None, _) => true,
        (Some(_), None) => false,
    };

    Ok(ThresholdComparisonReport {
        setup_matches,
        mean_gap,
        residual_life_order,
        premises_hold,
        threshold_constant_a: a.benefit_threshold(),
        threshold_constant_b: b.benefit_threshold(),
        threshold_time_a,
        threshold_time_b,
        conclusion_holds,
    })
}

/// Verification record for the optimal-time product rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalTimeComparisonReport {
    /// Optimal schedules, `None` where a system has no interior optimum
    /// (its target never gets reached on the rising stretch).
    pub optimal_a: Option<f64>,
    pub optimal_b: Option<f64>,
    /// `mu_maintenance(a) * mu_repair(b)`.
    pub cross_product_a: f64,
    /// `mu_repair(a) * mu_maintenance(b)`.
    pub cross_product_b: f64,
    /// The product rule's prediction that system a waits at least as long.
    pub predicted_a_later: bool,
    /// What the solved optima actually show; `None` until both exist.
    pub observed_a_later: Option<bool>,
    /// Prediction matches observation; `None` until both optima exist.
    pub consistent: Option<bool>,
}

/// Compares optimal schedules of two systems sharing the main unit. Both
/// optima solve `phi(T) = mu1 / (mu1 - mu2)` on the same increasing stretch
/// of the same function (the standby rate only moves the target, not the
/// curve), so system a waits at least as long exactly when its target is
/// larger:
///
/// ```text
/// T*_a >= T*_b    iff    mu2_a * mu1_b >= mu1_a * mu2_b.
/// ```
///
/// A side without an interior optimum is reported as `None` rather than
/// treated as an error, leaving `consistent` undecided.
pub fn compare_optimal_times(
    a: &SystemModel,
    b: &SystemModel,
    options: &AnalysisOptions,
) -> Result<OptimalTimeComparisonReport> {
    if a.main() != b.main() {
        return Err(Error::Precondition(
            "optimal-time comparison requires a common main unit",
        ));
    }
    let optimal_a = a.optimal_pm_time(options)?;
    let optimal_b = b.optimal_pm_time(options)?;

    let cross_product_a =
        a.downtime_exposure(DowntimeKind::Maintenance) * b.downtime_exposure(DowntimeKind::Repair);
    let cross_product_b =
        a.downtime_exposure(DowntimeKind::Repair) * b.downtime_exposure(DowntimeKind::Maintenance);
    let predicted_a_later = cross_product_a >= cross_product_b;
    let observed_a_later = match (optimal_a, optimal_b) {
        (Some(ta), Some(tb)) => Some(ta >= tb * (1.0 - 1e-9)),
        _ => None,
    };

    Ok(OptimalTimeComparisonReport {
        optimal_a,
        optimal_b,
        cross_product_a,
        cross_product_b,
        predicted_a_later,
        observed_a_later,
        consistent: observed_a_later.map(|o| o == predicted_a_later),
    })
}

// ======================================================================
// Tests
// ======================================================================
