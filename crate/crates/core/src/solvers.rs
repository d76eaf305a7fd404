//! Policy solvers: when does maintenance help, and when is it best.
//!
//! For a system with benefit threshold K the scheduled time T helps exactly
//! while the main unit's mean residual life sits below K. The solvers locate
//!
//! * the threshold time `T0 = inf { t : m(t) < K }`,
//! * the end of the benefit window `T1` (first return of m above K, absent
//!   when m stays below K forever), and
//! * the MTTF-optimal time `T*`, the smallest stationary point, found where
//!   `phi(t) = r(t) A(t) + S(t)` crosses `mu1 / (mu1 - mu2)` on a stretch of
//!   increasing hazard.
//!
//! Every search is a leftmost sign change on a log-spaced grid refined by
//! bisection, so "first time" semantics survive non-monotone inputs. A main
//! unit with constant or decreasing hazard never qualifies: its residual life
//! never drops below K, which always sits below the mean life.

use crate::distributions::{
    HazardLimit, HazardShape, LifetimeDistribution, ShapeKind, DEFAULT_CLASSIFY_POINTS,
    DEFAULT_HORIZON_SURVIVAL,
};
use crate::error::{Error, Result};
use crate::numeric;
use crate::system::SystemModel;

/// Grids over `(0, horizon]` start at this fraction of the horizon, and
/// bisection refines roots to the same fraction.
const SCAN_EPS_FACTOR: f64 = 1e-9;

// ======================================================================
// Options and outcomes
// ======================================================================

/// Tuning knobs for the policy solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Survival level defining the search horizon on the main unit's life.
    pub horizon_survival: f64,
    /// Grid size for the hazard-shape classification.
    pub classify_points: usize,
    /// Grid size for the root scans.
    pub scan_points: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            horizon_survival: DEFAULT_HORIZON_SURVIVAL,
            classify_points: DEFAULT_CLASSIFY_POINTS,
            scan_points: 4096,
        }
    }
}

impl AnalysisOptions {
    fn validate(&self) -> Result<()> {
        if !(self.horizon_survival > 0.0 && self.horizon_survival < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "horizon survival must lie in (0, 1), got {}",
                self.horizon_survival
            )));
        }
        if self.classify_points < 16 || self.scan_points < 16 {
            return Err(Error::InvalidParameter(alloc::format!(
                "scan grids need at least 16 points, got {} / {}",
                self.classify_points,
                self.scan_points
            )));
        }
        Ok(())
    }
}

/// Why scheduled maintenance cannot raise the system MTTF.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoBenefitReason {
    /// Maintenance exposes the standby at least as long as repair does
    /// (`mu2 >= mu1`), so K is nonpositive.
    SlowerMaintenance,
    /// The main unit does not age: constant or decreasing hazard keeps the
    /// residual life at or above the mean, hence above K.
    AntiAging,
    /// The residual life never drops below K over the search horizon.
    ThresholdNeverReached,
}

/// The MTTF-optimal schedule and its performance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPolicy {
    /// The optimal scheduled maintenance time.
    pub pm_time: f64,
    /// System MTTF at that schedule.
    pub mttf: f64,
    /// Improvement over running with no maintenance.
    pub gain: f64,
    /// Chance an operating cycle ends in system failure at the optimum.
    pub cycle_failure_prob: f64,
}

/// Whether, where, and how much scheduled maintenance helps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyStatus {
    /// No finite schedule beats running to failure.
    NotBeneficial { reason: NoBenefitReason },
    /// Schedules in `(threshold_time, window_end)` beat no maintenance.
    Beneficial {
        /// First time the benefit criterion turns on.
        threshold_time: f64,
        /// Where the benefit turns off again; `None` means it never does.
        window_end: Option<f64>,
        /// Best schedule, when an interior stationary point was bracketed.
        optimal: Option<OptimalPolicy>,
    },
}

/// Full report of a policy analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyAnalysis {
    /// Hazard shape of the main unit over the scanned horizon.
    pub shape: HazardShape,
    /// Limiting hazard rate of the main unit.
    pub hazard_limit: HazardLimit,
    /// Benefit threshold K.
    pub benefit_threshold: f64,
    /// MTTF with no maintenance.
    pub mttf_no_pm: f64,
    /// The decision.
    pub status: PolicyStatus,
}

// ======================================================================
// Scan helpers
// ======================================================================

/// Leftmost sign change of `f` on a log grid over `[lo, hi]`, refined by
/// bisection; `None` when the sign never flips. Stops at the first crossing
/// so it realizes infimum semantics for "first time below/above" queries.
fn leftmost_root<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    lo: f64,
    hi: f64,
    points: usize,
    x_tol: f64,
    ctx: &'static str,
) -> Result<Option<f64>> {
    let grid = numeric::log_spaced(lo, hi, points);
    let mut prev_t = grid[0];
    let mut prev_v = f(prev_t)?;
    if prev_v == 0.0 {
        return Ok(Some(prev_t));
    }
    for &t in &grid[1..] {
        let v = f(t)?;
        if v == 0.0 {
            return Ok(Some(t));
        }
        if (prev_v < 0.0) != (v < 0.0) {
            return numeric::bisect(&mut *f, prev_t, t, x_tol, ctx).map(Some);
        }
        prev_t = t;
        prev_v = v;
    }
    Ok(None)
}

// ======================================================================
// Solvers
// ======================================================================

impl LifetimeDistribution {
    /// The interior stationary point of the mean residual life (root of
    /// m(t) r(t) = 1), or `None` when the slope never changes sign. For a
    /// bathtub hazard this is the residual-life maximum; for an upside-down
    /// bathtub, its minimum.
    pub fn mrl_change_point(&self, horizon: f64, points: usize) -> Result<Option<f64>> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "horizon must be finite and positive, got {horizon}"
            )));
        }
        let lo = SCAN_EPS_FACTOR * horizon;
        leftmost_root(
            &mut |t| self.mrl_slope(t),
            lo,
            horizon,
            points.max(16),
            SCAN_EPS_FACTOR * horizon,
            "mean residual life change point",
        )
    }
}

impl SystemModel {
    /// First time `T0` at which scheduling maintenance starts to pay off,
    /// i.e. the residual life first drops below K. `None` when it never
    /// does (nonpositive K, memoryless main, or no crossing on the horizon).
    pub fn threshold_time(&self, options: &AnalysisOptions) -> Result<Option<f64>> {
        options.validate()?;
        if self.benefit_threshold() <= 0.0 || self.main.constant_hazard_rate().is_some() {
            return Ok(None);
        }
        let horizon = self.main.support_horizon(options.horizon_survival)?;
        self.threshold_time_in(horizon, options)
    }

    fn threshold_time_in(&self, horizon: f64, options: &AnalysisOptions) -> Result<Option<f64>> {
        let k = self.benefit_threshold();
        leftmost_root(
            &mut |t| Ok(self.main.mrl(t)? - k),
            SCAN_EPS_FACTOR * horizon,
            horizon,
            options.scan_points,
            SCAN_EPS_FACTOR * horizon,
            "benefit threshold time",
        )
    }

    /// End of the benefit window that opens at `threshold_time`: the first
    /// later time where the residual life climbs back to K. `None` means the
    /// window never closes.
    ///
    /// When no return crossing lies on the horizon, the limiting residual
    /// life `1 / lim r(t)` decides: at or below K means an infinite window;
    /// above K, the search horizon is pushed outward (squaring the survival
    /// target up to three times) until the crossing is bracketed.
    pub fn benefit_window_end(
        &self,
        threshold_time: f64,
        options: &AnalysisOptions,
    ) -> Result<Option<f64>> {
        options.validate()?;
        if !(threshold_time.is_finite() && threshold_time > 0.0) {
            return Err(Error::Precondition(
                "window scan needs the finite positive threshold time",
            ));
        }
        let horizon = self.main.support_horizon(options.horizon_survival)?;
        let limit = self.main.hazard_limit()?;
        self.window_end_in(threshold_time, horizon, &limit, options)
    }

    fn window_end_in(
        &self,
        threshold_time: f64,
        horizon: f64,
        limit: &HazardLimit,
        options: &AnalysisOptions,
    ) -> Result<Option<f64>> {
        let k = self.benefit_threshold();
        let gap = |t: f64| -> Result<f64> { Ok(self.main.mrl(t)? - k) };

        if gap(threshold_time)? > 1e-6 * k {
            return Err(Error::Precondition(
                "window scan requires a time at or inside the benefit window",
            ));
        }

        // Anchor the upward scan at the deepest point of the dip so the
        // fuzzy root at the window's opening edge cannot be re-detected.
        // A monotone residual life puts the dip on the horizon itself, in
        // which case the limiting behaviour below decides directly.
        let grid = numeric::log_spaced(threshold_time, horizon, options.scan_points);
        let mut dip_t = threshold_time;
        let mut dip_v = f64::INFINITY;
        for &t in &grid {
            let v = gap(t)?;
            if v < dip_v {
                dip_v = v;
                dip_t = t;
            }
        }

        let mut lo = dip_t;
        let mut survival_target = options.horizon_survival;
        let mut hi = horizon;
        for _ in 0..4 {
            if hi > lo {
                if let Some(root) = leftmost_root(
                    &mut |t| gap(t),
                    lo,
                    hi,
                    options.scan_points,
                    SCAN_EPS_FACTOR * hi,
                    "benefit window end",
                )? {
                    return Ok(Some(root));
                }
            }
            // No crossing bracketed yet; let the limiting residual life
            // decide whether one exists at all.
            let limit_mrl = 1.0 / limit.value();
            let closes = if limit.is_exact() {
                limit_mrl > k
            } else {
                limit_mrl > k * (1.0 + 1e-6)
            };
            if !closes {
                return Ok(None);
            }
            lo = hi;
            survival_target *= survival_target;
            hi = self.main.support_horizon(survival_target)?;
        }
        Err(Error::NoBracket(
            "benefit window end lies beyond the extended search horizon",
        ))
    }

    /// The MTTF-optimal scheduled time `T*`: the smallest root of
    /// `phi(t) = mu1 / (mu1 - mu2)` on a stretch of increasing hazard.
    /// `None` when no interior optimum can be bracketed (no benefit, a
    /// non-aging main unit, or an unresolved hazard shape).
    pub fn optimal_pm_time(&self, options: &AnalysisOptions) -> Result<Option<f64>> {
        options.validate()?;
        if self.benefit_threshold() <= 0.0 || self.main.constant_hazard_rate().is_some() {
            return Ok(None);
        }
        let horizon = self.main.support_horizon(options.horizon_survival)?;
        let shape = self
            .main
            .classify_hazard_shape_with(horizon, options.classify_points)?;
        self.optimal_in(&shape, horizon, options)
    }

    fn optimal_in(
        &self,
        shape: &HazardShape,
        horizon: f64,
        options: &AnalysisOptions,
    ) -> Result<Option<f64>> {
        let eps = SCAN_EPS_FACTOR * horizon;
        let (lo, hi) = match shape.kind {
            ShapeKind::Ifr => (eps, horizon),
            // The stationary point lies on the rising branch.
            ShapeKind::Bfr { t_min } => (t_min.max(eps), horizon),
            // The rise ends at the residual-life minimum; past it the
            // criterion can only move away from the target.
            ShapeKind::Ubfr { .. } => {
                match self.main.mrl_change_point(horizon, options.scan_points)? {
                    Some(c) => (eps, c),
                    None => return Ok(None),
                }
            }
            ShapeKind::Dfr | ShapeKind::Unclassified => return Ok(None),
        };
        let target = self.optimality_target();
        leftmost_root(
            &mut |t| Ok(self.optimality_function(t)? - target),
            lo,
            hi,
            options.scan_points,
            SCAN_EPS_FACTOR * horizon,
            "optimal maintenance time",
        )
    }

    /// Runs the full policy analysis with default options.
    pub fn analyze(&self) -> Result<PolicyAnalysis> {
        self.analyze_with(&AnalysisOptions::default())
    }

    /// Classifies the main unit's hazard, decides whether maintenance can
    /// help, and if so locates the benefit window and the optimal schedule.
    pub fn analyze_with(&self, options: &AnalysisOptions) -> Result<PolicyAnalysis> {
        options.validate()?;
        let horizon = self.main.support_horizon(options.horizon_survival)?;
        let shape = self
            .main
            .classify_hazard_shape_with(horizon, options.classify_points)?;
        let hazard_limit = self.main.hazard_limit()?;
        let benefit_threshold = self.benefit_threshold();
        let mttf_no_pm = self.mttf_no_pm();

        let status = if benefit_threshold <= 0.0 {
            PolicyStatus::NotBeneficial {
                reason: NoBenefitReason::SlowerMaintenance,
            }
        } else if self.main.constant_hazard_rate().is_some() || matches!(shape.kind, ShapeKind::Dfr)
        {
            PolicyStatus::NotBeneficial {
                reason: NoBenefitReason::AntiAging,
            }
        } else {
            match self.threshold_time_in(horizon, options)? {
                None => PolicyStatus::NotBeneficial {
                    reason: NoBenefitReason::ThresholdNeverReached,
                },
                Some(threshold_time) => {
                    let window_end =
                        self.window_end_in(threshold_time, horizon, &hazard_limit, options)?;
                    let optimal = match self.optimal_in(&shape, horizon, options)? {
                        Some(pm_time) => {
                            let mttf = self.mttf(pm_time)?;
                            Some(OptimalPolicy {
                                pm_time,
                                mttf,
                                gain: mttf - mttf_no_pm,
                                cycle_failure_prob: self.cycle_failure_prob(pm_time)?,
                            })
                        }
                        None => None,
                    };
                    PolicyStatus::Beneficial {
                        threshold_time,
                        window_end,
                        optimal,
                    }
                }
            }
        };

        Ok(PolicyAnalysis {
            shape,
            hazard_limit,
            benefit_threshold,
            mttf_no_pm,
            status,
        })
    }
}

// ======================================================================
// Tests
// ======================================================================
