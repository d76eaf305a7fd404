//! Monte-Carlo validation of the analytic MTTF.
//!
//! A replication plays the renewal cycle directly: the main unit runs for
//! min(X1, T); the standby then carries the load for the downtime, which
//! lasts min(X2, Y) with Y the repair (X1 <= T) or maintenance (X1 > T)
//! duration. The clock always advances by min(X1, T) + min(X2, Y); the run
//! ends when the standby dies first (X2 < Y, ties survive).
//!
//! Reproducibility: replication `i` draws from a counter-based generator
//! seeded with the user seed on stream `i`, and the final reduction is a
//! fixed-shape pairwise sum, so results are bit-identical for a given seed
//! regardless of how many threads execute the replications.

use crate::distributions::LifetimeDistribution;
use crate::error::{Error, Result};
use crate::numeric;
use crate::system::SystemModel;

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

/// 2^-53, for mapping the top 53 bits of a draw into (0, 1].
const U53: f64 = 1.0 / 9007199254740992.0;

/// Summary of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    /// Scheduled maintenance time used (may be infinite).
    pub pm_time: f64,
    /// Number of replications.
    pub replications: u64,
    /// Seed the run was keyed on.
    pub seed: u64,
    /// Sample mean time to system failure.
    pub mean_ttf: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    /// Average number of operating cycles until failure.
    pub mean_cycles: f64,
}

impl LifetimeDistribution {
    /// Draws one lifetime by inverse transform; compositions sample each
    /// component, so the draw is exact for the whole algebra.
    pub fn sample(&self, rng: &mut impl RngCore) -> f64 {
        match self {
            LifetimeDistribution::Exponential { rate } => -unit_open_closed(rng).ln() / rate,
            LifetimeDistribution::Weibull { scale, shape } => {
                scale * (-unit_open_closed(rng).ln()).powf(1.0 / shape)
            }
            LifetimeDistribution::MinOf(cs) => cs
                .iter()
                .map(|c| c.sample(rng))
                .fold(f64::INFINITY, f64::min),
            LifetimeDistribution::MaxOf(cs) => cs.iter().map(|c| c.sample(rng)).fold(0.0, f64::max),
        }
    }
}

/// Uniform draw in (0, 1]; never zero, so `ln` stays finite.
fn unit_open_closed(rng: &mut impl RngCore) -> f64 {
    1.0 - (rng.next_u64() >> 11) as f64 * U53
}

impl SystemModel {
    /// Estimates the system MTTF under the schedule `pm_time` from
    /// `replications` independent runs keyed on `seed`.
    pub fn simulate_mttf(
        &self,
        pm_time: f64,
        replications: u64,
        seed: u64,
    ) -> Result<SimulationResult> {
        if pm_time < 0.0 || pm_time.is_nan() {
            return Err(Error::NegativeTime(pm_time));
        }
        if replications < 2 {
            return Err(Error::InvalidParameter(alloc::format!(
                "need at least 2 replications for a standard error, got {replications}"
            )));
        }
        let n = usize::try_from(replications).map_err(|_| {
            Error::InvalidParameter(alloc::string::String::from(
                "replication count exceeds the address space",
            ))
        })?;

        #[cfg(feature = "parallel")]
        let outcomes: Vec<(f64, u64)> = (0..n)
            .into_par_iter()
            .map(|i| self.replicate(pm_time, seed, i as u64))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let outcomes: Vec<(f64, u64)> = (0..n)
            .map(|i| self.replicate(pm_time, seed, i as u64))
            .collect();

        let ttfs: Vec<f64> = outcomes.iter().map(|o| o.0).collect();
        let mean_ttf = numeric::pairwise_sum(&ttfs) / n as f64;
        let sq_dev: Vec<f64> = ttfs
            .iter()
            .map(|t| (t - mean_ttf) * (t - mean_ttf))
            .collect();
        let variance = numeric::pairwise_sum(&sq_dev) / (n - 1) as f64;
        let std_error = (variance / n as f64).sqrt();
        let cycle_counts: Vec<f64> = outcomes.iter().map(|o| o.1 as f64).collect();
        let mean_cycles = numeric::pairwise_sum(&cycle_counts) / n as f64;

        Ok(SimulationResult {
            pm_time,
            replications,
            seed,
            mean_ttf,
            std_error,
            mean_cycles,
        })
    }

    /// One run: returns the failure time and the number of cycles played.
    fn replicate(&self, pm_time: f64, seed: u64, stream: u64) -> (f64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut clock = 0.0;
        let mut cycles = 0u64;
        loop {
            cycles += 1;
            let x1 = self.main.sample(&mut rng);
            let (operating, downtime_dist) = if x1 <= pm_time {
                (x1, &self.repair)
            } else {
                (pm_time, &self.maintenance)
            };
            let x2 = -unit_open_closed(&mut rng).ln() / self.standby_rate;
            let y = downtime_dist.sample(&mut rng);
            if x2 < y {
                return (clock + operating + x2, cycles);
            }
            clock += operating + y;
        }
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn exp(rate: f64) -> LifetimeDistribution {
        LifetimeDistribution::exponential(rate).unwrap()
    }

    fn weibull(scale: f64, shape: f64) -> LifetimeDistribution {
        LifetimeDistribution::weibull(scale, shape).unwrap()
    }

    fn sample_mean(d: &LifetimeDistribution, n: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total: f64 = (0..n).map(|_| d.sample(&mut rng)).sum();
        total / n as f64
    }

    #[test]
    fn sampler_matches_known_means() {
        // Tolerances are ~4 standard errors at n = 100_000.
        assert!((sample_mean(&exp(2.0), 100_000, 7) - 0.5).abs() < 0.007);
        assert!((sample_mean(&weibull(1.0, 2.0), 100_000, 8) - 0.886226925452758).abs() < 0.006);
        let max_pair = LifetimeDistribution::max_of(vec![exp(1.0), exp(2.0)]).unwrap();
        assert!((sample_mean(&max_pair, 100_000, 9) - 7.0 / 6.0).abs() < 0.012);
        let min_pair =
            LifetimeDistribution::min_of(vec![weibull(1.0, 0.5), weibull(1.0, 3.0)]).unwrap();
        assert!((sample_mean(&min_pair, 100_000, 10) - 0.476810870932360).abs() < 0.009);
    }

    #[test]
    fn samples_are_nonnegative_and_finite() {
        let d = LifetimeDistribution::max_of(vec![
            LifetimeDistribution::min_of(vec![exp(1.0), weibull(0.5, 0.6)]).unwrap(),
            exp(3.0),
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let x = d.sample(&mut rng);
            assert!(x.is_finite() && x >= 0.0);
        }
    }

    fn memoryless_system() -> SystemModel {
        SystemModel::new(exp(1.0), 1.0, exp(1.0), exp(3.0)).unwrap()
    }

    #[test]
    fn simulation_matches_closed_form_mttf() {
        let s = memoryless_system();
        let t = 2.0f64.ln();
        let r = s.simulate_mttf(t, 200_000, 42).unwrap();
        let analytic = 7.0 / 3.0;
        assert!(
            (r.mean_ttf - analytic).abs() < 4.0 * r.std_error,
            "sim {} vs analytic {analytic} (se {})",
            r.mean_ttf,
            r.std_error
        );
        // Cycles to failure are geometric with success chance p(T).
        let p = s.cycle_failure_prob(t).unwrap();
        assert!((r.mean_cycles - 1.0 / p).abs() / (1.0 / p) < 0.01);
    }

    #[test]
    fn simulation_without_maintenance() {
        let s = memoryless_system();
        let r = s.simulate_mttf(f64::INFINITY, 200_000, 43).unwrap();
        assert!((r.mean_ttf - 3.0).abs() < 4.0 * r.std_error);
    }

    #[test]
    fn same_seed_reproduces_bit_identical_results() {
        let s = memoryless_system();
        let a = s.simulate_mttf(1.0, 20_000, 7).unwrap();
        let b = s.simulate_mttf(1.0, 20_000, 7).unwrap();
        assert_eq!(a.mean_ttf.to_bits(), b.mean_ttf.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = s.simulate_mttf(1.0, 20_000, 8).unwrap();
        assert_ne!(a.mean_ttf.to_bits(), c.mean_ttf.to_bits());
    }

    #[test]
    fn replication_count_and_time_are_validated() {
        let s = memoryless_system();
        assert!(s.simulate_mttf(1.0, 1, 0).is_err());
        assert!(s.simulate_mttf(-1.0, 100, 0).is_err());
        assert!(s.simulate_mttf(f64::NAN, 100, 0).is_err());
    }
}
