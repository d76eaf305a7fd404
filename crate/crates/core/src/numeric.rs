//! Low-level numerical kernels: adaptive quadrature, bracketing root and
//! extremum searches, grid construction, and order-stable summation.
//!
//! Everything here is deterministic: identical inputs produce bit-identical
//! results, which the simulation and report layers rely on.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

// ======================================================================
// Gauss-Kronrod 15-point rule
// ======================================================================

/// Kronrod abscissae on [0, 1] side of the symmetric rule. The tables keep
/// the published 33-digit values; the compiler rounds them once, here,
/// instead of a human rounding them by hand.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule; node i uses XGK[2i + 1],
/// except the last which sits on the midpoint.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod panel: returns (kronrod value, error estimate).
fn gk15<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    ctx: &'static str,
) -> Result<(f64, f64)> {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::QuadratureFailed(ctx));
        }
        Ok(v)
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for i in 0..7 {
        let dx = half * XGK[i];
        let f_sum = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[i] * f_sum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * f_sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    Ok((kronrod, (kronrod - gauss).abs()))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Largest number of panels before giving up on an integral.
const MAX_PANELS: usize = 2048;

/// Adaptive quadrature of `f` over `[a, b]`, subdividing the panel with the
/// largest error estimate until the summed estimate drops below
/// `max(abs_tol, rel_tol * |integral|)`.
pub(crate) fn integrate<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    ctx: &'static str,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::QuadratureFailed(ctx));
    }
    if a == b {
        return Ok(0.0);
    }

    let (value, error) = gk15(&mut f, a, b, ctx)?;
    let mut panels = Vec::with_capacity(32);
    panels.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_error = error;

    while total_error > abs_tol.max(rel_tol * total.abs()) {
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureFailed(ctx));
        }
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let Panel { a, b, value, error } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval no longer splittable in f64; accept its estimate.
            panels.push(Panel {
                a,
                b,
                value,
                error: 0.0,
            });
            total_error -= error;
            continue;
        }
        let (lv, le) = gk15(&mut f, a, mid, ctx)?;
        let (rv, re) = gk15(&mut f, mid, b, ctx)?;
        total += lv + rv - value;
        total_error += le + re - error;
        panels.push(Panel {
            a,
            b: mid,
            value: lv,
            error: le,
        });
        panels.push(Panel {
            a: mid,
            b,
            value: rv,
            error: re,
        });
    }

    // Recompute the total from the panels to shed accumulated drift.
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    Ok(pairwise_sum(&values))
}

// ======================================================================
// Root and extremum bracketing
// ======================================================================

/// Bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must have opposite signs
/// (an exact zero at either end is returned immediately).
pub(crate) fn bisect<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    ctx: &'static str,
) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::NoBracket(ctx));
    }
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoBracket(ctx));
    }
    for _ in 0..200 {
        if hi - lo <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for a local minimum of `f` inside `[lo, hi]`.
pub(crate) fn golden_min<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
) -> Result<f64> {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..400 {
        if hi - lo <= x_tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ======================================================================
// Grids and summation
// ======================================================================

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub(crate) fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2 && lo > 0.0 && hi > lo);
    let ln_lo = lo.ln();
    let step = (hi.ln() - ln_lo) / (n - 1) as f64;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((ln_lo + step * i as f64).exp());
    }
    out[0] = lo;
    out[n - 1] = hi;
    out
}

/// Pairwise (cascade) summation; order-insensitive callers get bit-identical
/// totals for the same input slice regardless of how it was produced.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn integrates_polynomial_exactly() {
        let v = integrate(ok(|x| x * x), 0.0, 1.0, 1e-12, 1e-12, "test").unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_decaying_exponential() {
        let v = integrate(ok(|x| (-x).exp()), 0.0, 40.0, 1e-12, 1e-10, "test").unwrap();
        assert!((v - (1.0 - (-40.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn respects_relative_tolerance_on_small_magnitudes() {
        // Integral of e^-x over [50, 60]: about 1.93e-22.
        let v = integrate(ok(|x| (-x).exp()), 50.0, 60.0, 1e-300, 1e-10, "test").unwrap();
        let exact = (-50.0f64).exp() - (-60.0f64).exp();
        assert!((v - exact).abs() / exact < 1e-10, "v={v} exact={exact}");
    }

    #[test]
    fn integrates_sqrt_cusp() {
        let v = integrate(ok(|x: f64| x.sqrt()), 0.0, 1.0, 1e-10, 1e-9, "test").unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn propagates_integrand_error() {
        let r = integrate(
            |_| Err(Error::BeyondSupport(1.0)),
            0.0,
            1.0,
            1e-9,
            1e-9,
            "test",
        );
        assert_eq!(r, Err(Error::BeyondSupport(1.0)));
    }

    #[test]
    fn rejects_non_finite_integrand() {
        let r = integrate(ok(|_| f64::NAN), 0.0, 1.0, 1e-9, 1e-9, "test");
        assert!(matches!(r, Err(Error::QuadratureFailed(_))));
    }

    #[test]
    fn bisect_finds_root() {
        let root = bisect(ok(|x| x * x - 2.0), 0.0, 2.0, 1e-12, "test").unwrap();
        assert!((root - 2.0f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn bisect_requires_sign_change() {
        let r = bisect(ok(|x| x * x + 1.0), 0.0, 2.0, 1e-12, "test");
        assert!(matches!(r, Err(Error::NoBracket(_))));
    }

    #[test]
    fn golden_locates_minimum() {
        let m = golden_min(ok(|x| (x - 1.3) * (x - 1.3)), 0.0, 4.0, 1e-10).unwrap();
        assert!((m - 1.3).abs() < 1e-8);
    }

    #[test]
    fn log_grid_hits_endpoints_and_increases() {
        let g = log_spaced(1e-6, 10.0, 100);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[99], 10.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pairwise_sum_matches_exact_on_integers() {
        let xs: Vec<f64> = (1..=100_000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 5_000_050_000.0);
    }
}
