//! Spherical cap measure.
//!
//! A cap `Cap(theta)` is the set of points of the unit sphere `S^{d-1}` within
//! angular radius `theta` of a pole. Its share of the sphere measure is
//! `int_0^theta sin^{d-2} t dt / int_0^pi sin^{d-2} t dt`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, Result};

/// Absolute tolerance of the adaptive Simpson rule.
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;

const INITIAL_PANELS: usize = 64;
const MAX_DEPTH: u32 = 48;

/// Fraction of the measure of `S^{d-1}` covered by a cap of angular radius
/// `theta`.
///
/// Accurate for dimensions up to `10^4`; the integrals are rescaled by their
/// maxima and combined in the log domain so that `sin^{d-2}` never
/// underflows the whole panel.
pub fn cap_fraction(d: usize, theta: f64) -> Result<f64> {
    Ok(log_cap_fraction(d, theta)?.exp())
}

/// Natural logarithm of [`cap_fraction`].
pub fn log_cap_fraction(d: usize, theta: f64) -> Result<f64> {
    if d < 2 {
        return Err(invalid("d", format!("cap measure needs d >= 2, got {d}")));
    }
    if !(theta > 0.0 && theta <= PI) {
        return Err(invalid("theta", format!("{theta} is outside (0, pi]")));
    }
    if theta > FRAC_PI_2 {
        let complement = PI - theta;
        if complement <= 0.0 {
            return Ok(0.0);
        }
        let small = log_cap_fraction(d, complement)?.exp();
        return Ok((1.0 - small).ln());
    }
    let n = (d - 2) as f64;
    let log_half = log_sin_power_integral(n, FRAC_PI_2);
    let log_num = log_sin_power_integral(n, theta);
    Ok(log_num - log_half - std::f64::consts::LN_2)
}

/// `ln int_0^b sin^n t dt` for `0 < b <= pi/2`.
fn log_sin_power_integral(n: f64, b: f64) -> f64 {
    if n == 0.0 {
        return b.ln();
    }
    let peak = b.sin();
    let ln_peak = peak.ln();
    // (sin t / sin b)^n <= 1 on [0, b]
    let scaled = |t: f64| {
        let s = t.sin();
        if s <= 0.0 {
            0.0
        } else {
            (n * (s.ln() - ln_peak)).exp()
        }
    };
    let integral = adaptive_simpson(scaled, 0.0, b, QUADRATURE_TOLERANCE);
    n * ln_peak + integral.ln()
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance
/// `tol`. The interval is first cut into equal panels so narrow peaks are
/// not skipped by the coarse estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    (0..INITIAL_PANELS)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == INITIAL_PANELS {
                b
            } else {
                lo + width
            };
            let (flo, fhi) = (f(lo), f(hi));
            let mid = 0.5 * (lo + hi);
            let fmid = f(mid);
            let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            simpson_step(&f, lo, hi, flo, fmid, fhi, whole, panel_tol, MAX_DEPTH)
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// `ln Gamma(d/2)` for a positive integer `d`, by the half-integer recursion.
pub(crate) fn ln_gamma_half(d: usize) -> f64 {
    debug_assert!(d >= 1);
    // Gamma(1) = 1, Gamma(1/2) = sqrt(pi)
    let (mut acc, mut k) = if d.is_multiple_of(2) {
        (0.0, 2usize)
    } else {
        (0.5 * PI.ln(), 1usize)
    };
    while k < d {
        // Gamma(k/2 + 1) = (k/2) Gamma(k/2)
        acc += (k as f64 / 2.0).ln();
        k += 2;
    }
    acc
}

/// Surface measure of the unit sphere `S^{d-1}` in `R^d`:
/// `2 pi^{d/2} / Gamma(d/2)`.
pub fn sphere_area(d: usize) -> Result<f64> {
    if d < 1 {
        return Err(invalid("d", "sphere needs d >= 1"));
    }
    let ln = std::f64::consts::LN_2 + 0.5 * d as f64 * PI.ln() - ln_gamma_half(d);
    Ok(ln.exp())
}
