//! Reliability analysis of a two-unit priority standby system with repair
//! and preventive maintenance.
//!
//! A main unit (general lifetime, built from exponential and Weibull pieces
//! closed under independent minima and maxima) carries the load; an
//! exponential standby unit covers downtimes, which are repairs after a
//! failure or scheduled maintenance at age `T`. The system fails when the
//! standby dies during a downtime.
//!
//! The crate answers, analytically and by simulation:
//!
//! * what the mean time to system failure `M(T)` is for any schedule,
//!   including `T = inf` (no maintenance);
//! * whether maintenance can help at all, via the benefit threshold `K`
//!   against the main unit's mean residual life;
//! * when it starts to help (threshold time), when it stops (benefit
//!   window), and which schedule is best (`T*`);
//! * how hazard shape (IFR, DFR, bathtub, upside-down bathtub) drives those
//!   answers, with numeric classification and limits;
//! * how systems compare under stochastic, Laplace transform, and mean
//!   residual life orders, with dominance and product-rule theorems;
//! * Monte-Carlo estimates of `M(T)` with reproducible, thread-count
//!   independent results for validating the formulas.
//!
//! The crate is `no_std` compatible (with `alloc`); the `std` feature (on by
//! default) only switches float intrinsics, and the `parallel` feature runs
//! simulation replications on a thread pool without changing any result bit.
//!
//! ```
//! use standby_core::{LifetimeDistribution, SystemModel, PolicyStatus};
//!
//! let main = LifetimeDistribution::weibull(1.0, 2.0).unwrap();
//! let repair = LifetimeDistribution::exponential(1.0).unwrap();
//! let maintenance = LifetimeDistribution::exponential(3.0).unwrap();
//! let system = SystemModel::new(main, 1.0, repair, maintenance).unwrap();
//!
//! let report = system.analyze().unwrap();
//! match report.status {
//!     PolicyStatus::Beneficial { threshold_time, optimal, .. } => {
//!         let best = optimal.unwrap();
//!         assert!(threshold_time < best.pm_time);
//!         assert!(best.mttf > report.mttf_no_pm);
//!     }
//!     PolicyStatus::NotBeneficial { .. } => unreachable!("aging main unit"),
//! }
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod distributions;
mod error;
mod numeric;
mod orders;
mod simulate;
mod solvers;
mod system;

pub use distributions::{
    HazardLimit, HazardShape, LifetimeDistribution, ShapeDiagnostics, ShapeKind,
    DEFAULT_CLASSIFY_POINTS, DEFAULT_HORIZON_SURVIVAL,
};
pub use error::{Error, Result};
pub use orders::{
    check_order, compare_optimal_times, compare_thresholds, verify_mttf_dominance,
    MttfDominanceReport, OptimalTimeComparisonReport, OrderCheck, OrderKind, OrderOptions,
    OrderVerdict, ThresholdComparisonReport, Violation,
};
pub use simulate::SimulationResult;
pub use solvers::{AnalysisOptions, NoBenefitReason, OptimalPolicy, PolicyAnalysis, PolicyStatus};
pub use system::{BenefitCheck, DowntimeKind, SystemModel};
