//! Lifetime distributions and their reliability functions.
//!
//! The model algebra consists of exponential and Weibull lifetimes closed
//! under independent minima and maxima:
//!
//! * `MinOf`: survival functions multiply, hazard rates add.
//! * `MaxOf`: distribution functions multiply.
//!
//! On top of raw evaluation (survival, density, hazard) the module computes
//! means, mean residual life m(t) = E[X - t | X > t], hazard-shape
//! classification (IFR, DFR, bathtub, upside-down bathtub), and the limiting
//! hazard rate, which together drive the maintenance-policy solvers.
//!
//! All evaluation is on `t >= 0`; hazards and residual quantities require
//! `t > 0` because compositions with a Weibull shape below one have an
//! infinite hazard at the origin.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric;

#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

/// Absolute tolerance handed to adaptive quadrature.
pub(crate) const QUAD_ABS_TOL: f64 = 1e-10;
/// Relative tolerance handed to adaptive quadrature.
pub(crate) const QUAD_REL_TOL: f64 = 1e-8;
/// Survival level at which improper integrals are truncated.
pub(crate) const TRUNCATION_SURVIVAL: f64 = 1e-12;
/// Survival level defining the default evaluation horizon.
pub const DEFAULT_HORIZON_SURVIVAL: f64 = 1e-9;
/// Default grid size for hazard-shape scans.
pub const DEFAULT_CLASSIFY_POINTS: usize = 4096;
/// Grids over `(0, horizon]` start at `CLASSIFY_EPS_FACTOR * horizon`.
pub(crate) const CLASSIFY_EPS_FACTOR: f64 = 1e-9;

// ======================================================================
// Distribution algebra
// ======================================================================

/// A nonnegative lifetime distribution.
///
/// Use the checked constructors ([`exponential`](Self::exponential),
/// [`weibull`](Self::weibull), [`min_of`](Self::min_of),
/// [`max_of`](Self::max_of)) or call [`validate`](Self::validate) after
/// building a value literally; evaluation assumes parameters are valid.
#[derive(Debug, Clone, PartialEq)]
pub enum LifetimeDistribution {
    /// Constant hazard `rate`.
    Exponential { rate: f64 },
    /// Survival `exp(-(t/scale)^shape)`.
    Weibull { scale: f64, shape: f64 },
    /// Minimum of independent component lifetimes (series structure).
    MinOf(Vec<LifetimeDistribution>),
    /// Maximum of independent component lifetimes (parallel structure).
    MaxOf(Vec<LifetimeDistribution>),
}

/// Limiting hazard rate as `t -> inf`, either derived in closed form or
/// estimated numerically at the evaluation horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HazardLimit {
    /// Exact limit; may be `f64::INFINITY`.
    Exact(f64),
    /// Numeric estimate taken at the default horizon.
    Estimate(f64),
}

impl HazardLimit {
    pub fn value(&self) -> f64 {
        match *self {
            HazardLimit::Exact(v) | HazardLimit::Estimate(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HazardLimit::Exact(_))
    }
}

/// Monotonicity pattern of the hazard rate over the scanned horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind {
    /// Nondecreasing hazard (constant hazards classify here).
    Ifr,
    /// Nonincreasing hazard.
    Dfr,
    /// Bathtub: decreasing then increasing, minimum at `t_min`.
    Bfr { t_min: f64 },
    /// Upside-down bathtub: increasing then decreasing, maximum at `t_max`.
    Ubfr { t_max: f64 },
    /// More than one direction change detected.
    Unclassified,
}

/// How a classification was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeDiagnostics {
    /// Number of grid points scanned.
    pub grid_points: usize,
    /// Number of slope sign changes detected.
    pub sign_changes: usize,
    /// Upper end of the scanned window.
    pub horizon: f64,
}

/// Result of a hazard-shape scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HazardShape {
    pub kind: ShapeKind,
    pub diagnostics: ShapeDiagnostics,
}

impl HazardShape {
    /// The interior hazard extremum, when the shape has one.
    pub fn change_point(&self) -> Option<f64> {
        match self.kind {
            ShapeKind::Bfr { t_min } => Some(t_min),
            ShapeKind::Ubfr { t_max } => Some(t_max),
            _ => None,
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and positive, got {v}"
        )))
    }
}

impl LifetimeDistribution {
    /// Exponential lifetime with the given failure rate.
    pub fn exponential(rate: f64) -> Result<Self> {
        check_positive("exponential rate", rate)?;
        Ok(LifetimeDistribution::Exponential { rate })
    }

    /// Weibull lifetime; `shape < 1` gives a decreasing hazard, `shape > 1`
    /// an increasing one.
    pub fn weibull(scale: f64, shape: f64) -> Result<Self> {
        check_positive("weibull scale", scale)?;
        check_positive("weibull shape", shape)?;
        Ok(LifetimeDistribution::Weibull { scale, shape })
    }

    /// Minimum of at least two independent components.
    pub fn min_of(components: Vec<LifetimeDistribution>) -> Result<Self> {
        let d = LifetimeDistribution::MinOf(components);
        d.validate()?;
        Ok(d)
    }

    /// Maximum of at least two independent components.
    pub fn max_of(components: Vec<LifetimeDistribution>) -> Result<Self> {
        let d = LifetimeDistribution::MaxOf(components);
        d.validate()?;
        Ok(d)
    }

    /// Recursively checks parameter domains and composition arity.
    pub fn validate(&self) -> Result<()> {
        match self {
            LifetimeDistribution::Exponential { rate } => check_positive("exponential rate", *rate),
            LifetimeDistribution::Weibull { scale, shape } => {
                check_positive("weibull scale", *scale)?;
                check_positive("weibull shape", *shape)
            }
            LifetimeDistribution::MinOf(cs) | LifetimeDistribution::MaxOf(cs) => {
                if cs.len() < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "composition needs at least two components, got {}",
                        cs.len()
                    )));
                }
                cs.iter().try_for_each(Self::validate)
            }
        }
    }

    /// The constant hazard rate, if the distribution is memoryless
    /// (exponentials, shape-one Weibulls, and minima thereof).
    pub fn constant_hazard_rate(&self) -> Option<f64> {
        match self {
            LifetimeDistribution::Exponential { rate } => Some(*rate),
            LifetimeDistribution::Weibull { scale, shape } => (*shape == 1.0).then(|| 1.0 / scale),
            LifetimeDistribution::MinOf(cs) => {
                let mut sum = 0.0;
                for c in cs {
                    sum += c.constant_hazard_rate()?;
                }
                Some(sum)
            }
            LifetimeDistribution::MaxOf(_) => None,
        }
    }

    /// A crude time scale used to seed horizon searches.
    fn rough_scale(&self) -> f64 {
        match self {
            LifetimeDistribution::Exponential { rate } => 1.0 / rate,
            LifetimeDistribution::Weibull { scale, .. } => *scale,
            LifetimeDistribution::MinOf(cs) => cs
                .iter()
                .map(Self::rough_scale)
                .fold(f64::INFINITY, f64::min),
            LifetimeDistribution::MaxOf(cs) => cs.iter().map(Self::rough_scale).fold(0.0, f64::max),
        }
    }

    // ==================================================================
    // Pointwise evaluation
    // ==================================================================

    /// Natural log of the survival function; `-inf` once all mass is spent.
    pub fn log_survival(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.log_survival_unchecked(t))
    }

    fn log_survival_unchecked(&self, t: f64) -> f64 {
        match self {
            LifetimeDistribution::Exponential { rate } => -rate * t,
            LifetimeDistribution::Weibull { scale, shape } => -(t / scale).powf(*shape),
            LifetimeDistribution::MinOf(cs) => cs.iter().map(|c| c.log_survival_unchecked(t)).sum(),
            LifetimeDistribution::MaxOf(cs) => {
                // ln(1 - prod F_i), written against the component survivals
                // so precision is kept at both ends of the support.
                let s: f64 = cs.iter().map(|c| (-c.survival_unchecked(t)).ln_1p()).sum();
                if s < 0.0 {
                    (-s.exp_m1()).ln()
                } else {
                    // Every component survival underflowed; in this regime
                    // the maximum's survival is the sum of the components'.
                    log_sum_exp(cs.iter().map(|c| c.log_survival_unchecked(t)))
                }
            }
        }
    }

    /// Survival function P(X > t).
    pub fn survival(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.survival_unchecked(t))
    }

    fn survival_unchecked(&self, t: f64) -> f64 {
        match self {
            LifetimeDistribution::MaxOf(cs) => {
                let s: f64 = cs.iter().map(|c| (-c.survival_unchecked(t)).ln_1p()).sum();
                -s.exp_m1()
            }
            _ => self.log_survival_unchecked(t).exp(),
        }
    }

    /// Distribution function P(X <= t), accurate near zero.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.cdf_unchecked(t))
    }

    fn cdf_unchecked(&self, t: f64) -> f64 {
        match self {
            LifetimeDistribution::MaxOf(cs) => cs.iter().map(|c| c.cdf_unchecked(t)).product(),
            _ => -self.log_survival_unchecked(t).exp_m1(),
        }
    }

    /// Density f(t); at `t = 0` the one-sided limit is reported and may be
    /// infinite for shapes below one.
    pub fn density(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.density_unchecked(t))
    }

    fn density_unchecked(&self, t: f64) -> f64 {
        match self {
            LifetimeDistribution::Exponential { rate } => rate * (-rate * t).exp(),
            LifetimeDistribution::Weibull { scale, shape } => {
                let z = t / scale;
                if t == 0.0 {
                    return if *shape < 1.0 {
                        f64::INFINITY
                    } else if *shape == 1.0 {
                        1.0 / scale
                    } else {
                        0.0
                    };
                }
                (shape / scale) * z.powf(shape - 1.0) * (-z.powf(*shape)).exp()
            }
            LifetimeDistribution::MinOf(cs) => {
                // f = survival * sum of component hazards = sum f_i * prod_{j!=i} S_j.
                let mut total = 0.0;
                for (i, c) in cs.iter().enumerate() {
                    let mut term = c.density_unchecked(t);
                    if term == 0.0 {
                        continue;
                    }
                    for (j, o) in cs.iter().enumerate() {
                        if j != i {
                            term *= o.survival_unchecked(t);
                        }
                    }
                    total += term;
                }
                total
            }
            LifetimeDistribution::MaxOf(cs) => {
                // Product rule on prod F_j; terms with a vanished cofactor
                // product contribute nothing even if f_i blows up at 0.
                let mut total = 0.0;
                for (i, c) in cs.iter().enumerate() {
                    let mut prod = 1.0;
                    for (j, o) in cs.iter().enumerate() {
                        if j != i {
                            prod *= o.cdf_unchecked(t);
                        }
                    }
                    if prod == 0.0 {
                        continue;
                    }
                    total += c.density_unchecked(t) * prod;
                }
                total
            }
        }
    }

    /// Hazard rate r(t) = f(t) / S(t) for `t > 0` while survival is still
    /// representable; beyond that point [`Error::BeyondSupport`] is raised.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonPositiveTime(t));
        }
        let ls = self.log_survival_unchecked(t);
        if ls.exp() == 0.0 {
            return Err(Error::BeyondSupport(t));
        }
        Ok(self.hazard_unchecked(t, ls))
    }

    fn hazard_unchecked(&self, t: f64, log_surv: f64) -> f64 {
        match self {
            LifetimeDistribution::Exponential { rate } => *rate,
            LifetimeDistribution::Weibull { scale, shape } => {
                (shape / scale) * (t / scale).powf(shape - 1.0)
            }
            LifetimeDistribution::MinOf(cs) => cs
                .iter()
                .map(|c| c.hazard_unchecked(t, c.log_survival_unchecked(t)))
                .sum(),
            LifetimeDistribution::MaxOf(cs) => {
                if log_surv > -690.0 {
                    return self.density_unchecked(t) / log_surv.exp();
                }
                // Deep tail: assemble ln f = ln r_i + ln S_i + sum ln F_j in
                // log space. Components whose own survival underflowed are
                // negligible against whichever component carries the tail.
                let mut terms = Vec::with_capacity(cs.len());
                for (i, c) in cs.iter().enumerate() {
                    let ls_i = c.log_survival_unchecked(t);
                    if ls_i.exp() == 0.0 {
                        continue;
                    }
                    let mut term = c.hazard_unchecked(t, ls_i).ln() + ls_i;
                    for (j, o) in cs.iter().enumerate() {
                        if j != i {
                            term += (-o.survival_unchecked(t)).ln_1p();
                        }
                    }
                    terms.push(term);
                }
                (log_sum_exp(terms.into_iter()) - log_surv).exp()
            }
        }
    }

    // ==================================================================
    // Integral quantities
    // ==================================================================

    /// Expected lifetime. Closed forms for memoryless distributions and
    /// Weibulls; compositions integrate the survival function numerically.
    pub fn mean(&self) -> Result<f64> {
        if let Some(rate) = self.constant_hazard_rate() {
            return Ok(1.0 / rate);
        }
        if let LifetimeDistribution::Weibull { scale, shape } = self {
            return Ok(scale * libm::tgamma(1.0 + 1.0 / shape));
        }
        let upper = self.support_horizon(TRUNCATION_SURVIVAL)?;
        numeric::integrate(
            |x| Ok(self.survival_unchecked(x)),
            0.0,
            upper,
            QUAD_ABS_TOL,
            QUAD_REL_TOL,
            "mean of lifetime distribution",
        )
    }

    /// Integral of the survival function over `[0, t]` (accepts `t = inf`,
    /// where it equals the mean).
    pub fn integrated_survival(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if let Some(rate) = self.constant_hazard_rate() {
            return Ok(-(-rate * t).exp_m1() / rate);
        }
        let upper = t.min(self.support_horizon(TRUNCATION_SURVIVAL)?);
        numeric::integrate(
            |x| Ok(self.survival_unchecked(x)),
            0.0,
            upper,
            QUAD_ABS_TOL,
            QUAD_REL_TOL,
            "integrated survival",
        )
    }

    /// Integral of the survival function over `[t, inf)`, truncated where
    /// survival falls below `1e-12` of its value at `t`.
    pub fn tail_integral(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        if let Some(rate) = self.constant_hazard_rate() {
            return Ok(self.survival_unchecked(t) / rate);
        }
        let surv_t = self.survival_unchecked(t);
        if surv_t == 0.0 {
            return Err(Error::BeyondSupport(t));
        }
        let target = TRUNCATION_SURVIVAL * surv_t.min(1.0);
        let mut upper = self.support_horizon(target)?;
        while upper <= t {
            upper = 2.0 * t.max(upper);
            if self.survival_unchecked(upper) <= target {
                break;
            }
        }
        numeric::integrate(
            |x| Ok(self.survival_unchecked(x)),
            t,
            upper,
            0.0,
            QUAD_REL_TOL,
            "survival tail integral",
        )
    }

    /// Mean residual life m(t) = E[X - t | X > t].
    pub fn mrl(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        let surv = self.survival_unchecked(t);
        if surv == 0.0 {
            return Err(Error::BeyondSupport(t));
        }
        Ok(self.tail_integral(t)? / surv)
    }

    /// Derivative of the mean residual life, via m'(t) = m(t) r(t) - 1.
    pub fn mrl_slope(&self, t: f64) -> Result<f64> {
        Ok(self.mrl(t)? * self.hazard(t)? - 1.0)
    }

    // ==================================================================
    // Horizons, shape, and limits
    // ==================================================================

    /// Smallest time where survival falls to `target` (monotone bisection
    /// after geometric bracketing).
    pub fn support_horizon(&self, target: f64) -> Result<f64> {
        if !(target > 0.0 && target < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon survival target must lie in (0, 1), got {target}"
            )));
        }
        let mut lo = 0.0;
        let mut hi = self.rough_scale();
        for _ in 0..4096 {
            if self.survival_unchecked(hi) <= target {
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        if self.survival_unchecked(hi) > target {
            return Err(Error::NoBracket("survival never reaches horizon target"));
        }
        for _ in 0..128 {
            if hi - lo <= 1e-12 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.survival_unchecked(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Horizon at the default survival level used by classification and grids.
    pub fn default_horizon(&self) -> Result<f64> {
        self.support_horizon(DEFAULT_HORIZON_SURVIVAL)
    }

    /// Scans the hazard slope on a log grid over `(0, horizon]` with the
    /// default resolution. See [`classify_hazard_shape_with`](Self::classify_hazard_shape_with).
    pub fn classify_hazard_shape(&self, horizon: f64) -> Result<HazardShape> {
        self.classify_hazard_shape_with(horizon, DEFAULT_CLASSIFY_POINTS)
    }

    /// Classifies the hazard as IFR / DFR / bathtub / upside-down bathtub by
    /// counting slope sign changes on a log-spaced grid, then sharpening each
    /// detected extremum by golden-section search to `1e-9 * horizon`.
    ///
    /// Slope differences within a few ulps are treated as flat, so constant
    /// hazards classify as IFR. More than one sign change yields
    /// [`ShapeKind::Unclassified`].
    pub fn classify_hazard_shape_with(&self, horizon: f64, points: usize) -> Result<HazardShape> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "classification horizon must be finite and positive, got {horizon}"
            )));
        }
        if points < 16 {
            return Err(Error::InvalidParameter(format!(
                "classification grid needs at least 16 points, got {points}"
            )));
        }
        let eps = CLASSIFY_EPS_FACTOR * horizon;
        let grid = numeric::log_spaced(eps, horizon, points);
        let mut rates = Vec::with_capacity(points);
        for &t in &grid {
            rates.push(self.hazard(t)?);
        }

        // Slope sign per grid interval, with a noise floor so that equal
        // hazards (up to rounding) register as flat.
        let mut last_sign = 0i8;
        let mut last_signed_interval = 0usize;
        let mut transitions: Vec<(usize, usize, i8)> = Vec::new();
        for i in 0..points - 1 {
            let d = rates[i + 1] - rates[i];
            let floor = 4.0 * f64::EPSILON * rates[i].abs().max(rates[i + 1].abs());
            let sign = if d > floor {
                1
            } else if d < -floor {
                -1
            } else {
                0
            };
            if sign == 0 {
                continue;
            }
            if last_sign != 0 && sign != last_sign {
                transitions.push((last_signed_interval, i, sign));
            }
            last_sign = sign;
            last_signed_interval = i;
        }

        let diagnostics = ShapeDiagnostics {
            grid_points: points,
            sign_changes: transitions.len(),
            horizon,
        };
        let kind = match transitions.as_slice() {
            [] => {
                if last_sign < 0 {
                    ShapeKind::Dfr
                } else {
                    ShapeKind::Ifr
                }
            }
            [(from, to, new_sign)] => {
                let lo = grid[*from];
                let hi = grid[to + 1];
                let tol = CLASSIFY_EPS_FACTOR * horizon;
                if *new_sign > 0 {
                    let t_min = numeric::golden_min(|x| self.hazard(x), lo, hi, tol)?;
                    ShapeKind::Bfr { t_min }
                } else {
                    let t_max = numeric::golden_min(|x| Ok(-self.hazard(x)?), lo, hi, tol)?;
                    ShapeKind::Ubfr { t_max }
                }
            }
            _ => ShapeKind::Unclassified,
        };
        Ok(HazardShape { kind, diagnostics })
    }

    /// Limiting hazard rate as `t -> inf`.
    ///
    /// Exact for exponentials, Weibulls, minima of exact components, and
    /// maxima of memoryless components (the smallest rate wins the tail);
    /// otherwise a numeric estimate at the default horizon.
    pub fn hazard_limit(&self) -> Result<HazardLimit> {
        match self {
            LifetimeDistribution::Exponential { rate } => Ok(HazardLimit::Exact(*rate)),
            LifetimeDistribution::Weibull { scale, shape } => {
                Ok(HazardLimit::Exact(if *shape > 1.0 {
                    f64::INFINITY
                } else if *shape == 1.0 {
                    1.0 / scale
                } else {
                    0.0
                }))
            }
            LifetimeDistribution::MinOf(cs) => {
                let mut sum = 0.0;
                let mut exact = true;
                for c in cs {
                    let l = c.hazard_limit()?;
                    exact &= l.is_exact();
                    sum += l.value();
                }
                Ok(if exact {
                    HazardLimit::Exact(sum)
                } else {
                    HazardLimit::Estimate(sum)
                })
            }
            LifetimeDistribution::MaxOf(cs) => {
                let rates: Option<Vec<f64>> = cs.iter().map(Self::constant_hazard_rate).collect();
                if let Some(rates) = rates {
                    let min = rates.into_iter().fold(f64::INFINITY, f64::min);
                    return Ok(HazardLimit::Exact(min));
                }
                let horizon = self.default_horizon()?;
                Ok(HazardLimit::Estimate(self.hazard(horizon)?))
            }
        }
    }
}

/// log(sum exp(l_i)) guarded against empty input and total underflow.
fn log_sum_exp(ls: impl Iterator<Item = f64>) -> f64 {
    let ls: Vec<f64> = ls.collect();
    let m = ls.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = ls.iter().map(|l| (l - m).exp()).sum();
    m + s.ln()
}

// ======================================================================
// Tests
// ======================================================================
