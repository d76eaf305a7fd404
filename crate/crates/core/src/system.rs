//! The two-unit priority standby system.
//!
//! A main unit with lifetime X1 ~ F operates continuously; a standby unit
//! with exponential lifetime X2 (rate `standby_rate`) takes over whenever the
//! main unit is down. Downtime is a repair Y1 if the main unit failed, or a
//! preventive-maintenance action Y2 if it reached the scheduled time `T`
//! first. The system fails when the standby unit dies during a downtime.
//!
//! Each operating cycle ends in failure with probability
//!
//! ```text
//! p(T) = lambda * (mu1 F(T) + mu2 S(T)),    mu_i = E[min(X2, Y_i)],
//! ```
//!
//! and the mean time to system failure under the policy is
//!
//! ```text
//! M(T) = (1/lambda) * (1 + A(T) / (mu1 F(T) + mu2 S(T))),
//! ```
//!
//! with A(T) the integral of S = 1 - F over [0, T]. Maintenance at T beats
//! running to failure exactly when the mean residual life m(T) drops below
//! the constant K = a (mu1 - mu2) / mu1, where a = E[X1].

use crate::distributions::LifetimeDistribution;
use crate::error::{Error, Result};

use alloc::vec;

// ======================================================================
// Model
// ======================================================================

/// Which kind of downtime a cycle ended in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DowntimeKind {
    /// The main unit failed before the scheduled time.
    Repair,
    /// The main unit reached the scheduled time and was maintained.
    Maintenance,
}

/// A configured two-unit priority standby system.
///
/// Construction validates every distribution and precomputes the expected
/// standby exposures `mu_i = E[min(X2, Y_i)]` together with the main unit's
/// mean life, so the derived constants below are plain arithmetic.
#[derive(Debug, Clone)]
pub struct SystemModel {
    pub(crate) main: LifetimeDistribution,
    pub(crate) standby_rate: f64,
    pub(crate) repair: LifetimeDistribution,
    pub(crate) maintenance: LifetimeDistribution,
    mu_repair: f64,
    mu_maintenance: f64,
    main_mean: f64,
}

/// Outcome of the pointwise benefit criterion at a candidate time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenefitCheck {
    /// Candidate scheduled maintenance time.
    pub pm_time: f64,
    /// Mean residual life of the main unit at that time.
    pub residual_life: f64,
    /// Benefit threshold K; maintenance pays off while `residual_life < K`.
    pub threshold: f64,
    /// Whether scheduling maintenance at `pm_time` beats no maintenance.
    pub beneficial: bool,
    /// Mean time to system failure with the policy.
    pub mttf_with_pm: f64,
    /// Mean time to system failure without maintenance.
    pub mttf_no_pm: f64,
    /// `mttf_with_pm - mttf_no_pm`.
    pub gain: f64,
}

impl SystemModel {
    /// Builds a system; `standby_rate` is the exponential failure rate of the
    /// standby unit while it carries the load.
    pub fn new(
        main: LifetimeDistribution,
        standby_rate: f64,
        repair: LifetimeDistribution,
        maintenance: LifetimeDistribution,
    ) -> Result<Self> {
        if !(standby_rate.is_finite() && standby_rate > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "standby rate must be finite and positive, got {standby_rate}"
            )));
        }
        main.validate()?;
        repair.validate()?;
        maintenance.validate()?;
        let mu_repair = standby_exposure(standby_rate, &repair)?;
        let mu_maintenance = standby_exposure(standby_rate, &maintenance)?;
        let main_mean = main.mean()?;
        Ok(SystemModel {
            main,
            standby_rate,
            repair,
            maintenance,
            mu_repair,
            mu_maintenance,
            main_mean,
        })
    }

    pub fn main(&self) -> &LifetimeDistribution {
        &self.main
    }

    pub fn standby_rate(&self) -> f64 {
        self.standby_rate
    }

    pub fn repair(&self) -> &LifetimeDistribution {
        &self.repair
    }

    pub fn maintenance(&self) -> &LifetimeDistribution {
        &self.maintenance
    }

    /// Mean life of the main unit, `a = E[X1]`.
    pub fn main_mean(&self) -> f64 {
        self.main_mean
    }

    /// Expected standby exposure mu_i = E[min(X2, Y_i)] for the given
    /// downtime kind; `standby_rate * mu_i` is the chance the standby dies
    /// during such a downtime.
    pub fn downtime_exposure(&self, kind: DowntimeKind) -> f64 {
        match kind {
            DowntimeKind::Repair => self.mu_repair,
            DowntimeKind::Maintenance => self.mu_maintenance,
        }
    }

    // ==================================================================
    // Policy performance
    // ==================================================================

    /// Probability that an operating cycle with scheduled time `pm_time` ends
    /// in system failure. Accepts `pm_time = inf` (no maintenance).
    pub fn cycle_failure_prob(&self, pm_time: f64) -> Result<f64> {
        if pm_time < 0.0 || pm_time.is_nan() {
            return Err(Error::NegativeTime(pm_time));
        }
        let surv = if pm_time.is_finite() {
            self.main.survival(pm_time)?
        } else {
            0.0
        };
        Ok(self.standby_rate * (self.mu_repair * (1.0 - surv) + self.mu_maintenance * surv))
    }

    /// Mean time to system failure when maintenance is scheduled at
    /// `pm_time`; `pm_time = inf` reproduces [`mttf_no_pm`](Self::mttf_no_pm).
    pub fn mttf(&self, pm_time: f64) -> Result<f64> {
        if pm_time < 0.0 || pm_time.is_nan() {
            return Err(Error::NegativeTime(pm_time));
        }
        if !pm_time.is_finite() {
            return Ok(self.mttf_no_pm());
        }
        let surv = self.main.survival(pm_time)?;
        let integrated = self.main.integrated_survival(pm_time)?;
        let weighted = self.mu_repair * (1.0 - surv) + self.mu_maintenance * surv;
        Ok((1.0 + integrated / weighted) / self.standby_rate)
    }

    /// Mean time to system failure with no preventive maintenance.
    pub fn mttf_no_pm(&self) -> f64 {
        (1.0 + self.main_mean / self.mu_repair) / self.standby_rate
    }

    /// The benefit threshold K = a (mu1 - mu2) / mu1. Scheduling maintenance
    /// at T raises the system MTTF exactly when m(T) < K; nonpositive K
    /// (maintenance exposing the standby at least as long as repair) means
    /// maintenance can never help.
    pub fn benefit_threshold(&self) -> f64 {
        self.main_mean * (self.mu_repair - self.mu_maintenance) / self.mu_repair
    }

    /// Evaluates the benefit criterion at a candidate time, reporting both
    /// the analytic test (m(T) vs K) and the resulting MTTF difference.
    pub fn benefit(&self, pm_time: f64) -> Result<BenefitCheck> {
        if !pm_time.is_finite() || pm_time <= 0.0 {
            return Err(Error::Precondition(
                "benefit check needs a finite positive maintenance time",
            ));
        }
        let residual_life = self.main.mrl(pm_time)?;
        let threshold = self.benefit_threshold();
        let mttf_with_pm = self.mttf(pm_time)?;
        let mttf_no_pm = self.mttf_no_pm();
        Ok(BenefitCheck {
            pm_time,
            residual_life,
            threshold,
            beneficial: residual_life < threshold,
            mttf_with_pm,
            mttf_no_pm,
            gain: mttf_with_pm - mttf_no_pm,
        })
    }

    /// Left-hand side of the stationarity condition for the scheduled time:
    ///
    /// ```text
    /// phi(t) = r(t) A(t) + S(t),
    /// ```
    ///
    /// whose derivative is r'(t) A(t). An interior optimum of the MTTF solves
    /// `phi(t) = mu1 / (mu1 - mu2)` on a stretch where the hazard increases.
    pub fn optimality_function(&self, t: f64) -> Result<f64> {
        let hazard = self.main.hazard(t)?;
        let integrated = self.main.integrated_survival(t)?;
        let surv = self.main.survival(t)?;
        Ok(hazard * integrated + surv)
    }

    /// Right-hand side of the stationarity condition,
    /// `mu1 / (mu1 - mu2)`; infinite when the exposures coincide.
    pub fn optimality_target(&self) -> f64 {
        self.mu_repair / (self.mu_repair - self.mu_maintenance)
    }
}

/// E[min(X2, Y)] for an exponential X2: the mean of the series pair, so
/// memoryless downtimes get the closed form 1/(rate + gamma).
fn standby_exposure(standby_rate: f64, downtime: &LifetimeDistribution) -> Result<f64> {
    let standby = LifetimeDistribution::exponential(standby_rate)?;
    LifetimeDistribution::min_of(vec![standby, downtime.clone()])?.mean()
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(rate: f64) -> LifetimeDistribution {
        LifetimeDistribution::exponential(rate).unwrap()
    }

    fn weibull(scale: f64, shape: f64) -> LifetimeDistribution {
        LifetimeDistribution::weibull(scale, shape).unwrap()
    }

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let denom = expected.abs().max(1e-300);
        assert!(
            (actual - expected).abs() / denom <= tol,
            "actual {actual} vs expected {expected} (rel tol {tol})"
        );
    }

    /// Exponential main, unit rates everywhere solvable by hand.
    fn memoryless_system() -> SystemModel {
        SystemModel::new(exp(1.0), 1.0, exp(1.0), exp(3.0)).unwrap()
    }

    /// Weibull(1, 2) main with exponential repairs, rates 1 and 3.
    fn aging_system() -> SystemModel {
        SystemModel::new(weibull(1.0, 2.0), 1.0, exp(1.0), exp(3.0)).unwrap()
    }

    #[test]
    fn exposures_use_closed_forms_for_memoryless_downtimes() {
        let s = memoryless_system();
        assert_rel(s.downtime_exposure(DowntimeKind::Repair), 0.5, 1e-15);
        assert_rel(s.downtime_exposure(DowntimeKind::Maintenance), 0.25, 1e-15);
    }

    #[test]
    fn exposure_with_weibull_repair_matches_quadrature_oracle() {
        let s = SystemModel::new(exp(1.0), 0.1, weibull(1.0, 2.0), exp(3.0)).unwrap();
        // integral of exp(-0.1 t - t^2) over t >= 0.
        assert_rel(
            s.downtime_exposure(DowntimeKind::Repair),
            0.838361847808634,
            1e-9,
        );
    }

    #[test]
    fn memoryless_system_closed_form_values() {
        let s = memoryless_system();
        let t = 2.0f64.ln();
        assert_rel(s.mttf_no_pm(), 3.0, 1e-14);
        assert_rel(s.cycle_failure_prob(t).unwrap(), 0.375, 1e-14);
        assert_rel(s.cycle_failure_prob(0.0).unwrap(), 0.25, 1e-15);
        assert_rel(s.cycle_failure_prob(f64::INFINITY).unwrap(), 0.5, 1e-15);
        assert_rel(s.mttf(t).unwrap(), 7.0 / 3.0, 1e-12);
        assert_rel(s.mttf(f64::INFINITY).unwrap(), 3.0, 1e-14);
        assert_rel(s.benefit_threshold(), 0.5, 1e-15);
    }

    #[test]
    fn mttf_at_zero_is_standby_mean() {
        let s = aging_system();
        assert_rel(s.mttf(0.0).unwrap(), 1.0, 1e-15);
    }

    #[test]
    fn aging_system_matches_frozen_values() {
        let s = aging_system();
        assert_rel(s.benefit_threshold(), 0.443113462726379, 1e-12);
        assert_rel(s.mttf_no_pm(), 2.77245385090552, 1e-12);
        assert_rel(s.optimality_function(1.0).unwrap(), 1.86152770679630, 1e-9);
        assert_rel(s.optimality_target(), 2.0, 1e-15);
        let gain = s.mttf(2.0).unwrap() - s.mttf_no_pm();
        assert_rel(gain, 0.00801413496036, 1e-6);
        assert_rel(s.mttf(1.09079696963472).unwrap(), 2.83352177873188, 1e-9);
    }

    #[test]
    fn benefit_agrees_with_mttf_difference() {
        let s = aging_system();
        let late = s.benefit(2.0).unwrap();
        assert!(late.beneficial);
        assert!(late.gain > 0.0);
        assert!(late.residual_life < late.threshold);

        let early = s.benefit(0.3).unwrap();
        assert!(!early.beneficial);
        assert!(early.gain < 0.0);
        assert!(early.residual_life > early.threshold);
    }

    #[test]
    fn memoryless_main_never_benefits() {
        // With an as-good-as-new main unit every early restart only adds
        // downtime, so the gain is strictly negative and fades as T grows.
        let s = memoryless_system();
        let mut last_gain = f64::NEG_INFINITY;
        for t in [0.2, 1.0, 5.0, 20.0] {
            let b = s.benefit(t).unwrap();
            assert!(!b.beneficial, "memoryless main cannot gain at t = {t}");
            assert!(b.gain < 0.0, "gain {}", b.gain);
            assert!(b.gain > last_gain, "gain should rise toward zero");
            last_gain = b.gain;
        }
        assert!(last_gain > -1e-7);
    }

    #[test]
    fn construction_and_domain_errors() {
        assert!(SystemModel::new(exp(1.0), 0.0, exp(1.0), exp(1.0)).is_err());
        assert!(SystemModel::new(exp(1.0), f64::NAN, exp(1.0), exp(1.0)).is_err());
        let s = aging_system();
        assert!(s.mttf(-1.0).is_err());
        assert!(s.cycle_failure_prob(f64::NAN).is_err());
        assert!(s.benefit(f64::INFINITY).is_err());
        assert!(s.benefit(0.0).is_err());
        assert!(s.optimality_function(0.0).is_err());
    }

    #[test]
    fn cycle_failure_prob_stays_between_exposure_extremes() {
        let s = aging_system();
        let lo = s.standby_rate() * s.downtime_exposure(DowntimeKind::Maintenance);
        let hi = s.standby_rate() * s.downtime_exposure(DowntimeKind::Repair);
        for t in [0.05, 0.5, 1.0, 2.0, 6.0] {
            let p = s.cycle_failure_prob(t).unwrap();
            assert!((lo..=hi).contains(&p), "p({t}) = {p} outside [{lo}, {hi}]");
        }
    }
}
