//! Closed-form bounds: the sweep-colouring chain, the clique volume bound,
//! the Kabatiansky–Levenshtein exponent for spherical codes, and the
//! per-dimension exponent of the sphere-net ratio.
//!
//! Exponents drop the vanishing-in-`d` corrections and are therefore
//! asymptotic per-dimension quantities (nats), not certified finite-`d`
//! bounds.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{cap_fraction, covering_number_witness};

/// Upper end of the domain of [`analysis_function`]: `arcsin(1 / 1.2)`.
pub fn analysis_domain_end() -> f64 {
    (1.0f64 / 1.2).asin()
}

/// Label attached to every exponent derived by dropping `o(1)` terms.
pub const ASYMPTOTIC_NOTE: &str =
    "asymptotic exponent (o_d(1) terms dropped); not a certified bound for finite d";

/// Kabatiansky–Levenshtein exponent: `A ln A - B ln B` with `s = sin phi`,
/// `A = (1 + s) / (2 s)`, `B = (1 - s) / (2 s)` and `0 ln 0 = 0`.
/// Bounds `(1/d) ln M(d, phi)` asymptotically, in nats per dimension.
pub fn kl_exponent(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi <= std::f64::consts::PI) {
        return Err(invalid("phi", format!("{phi} is outside (0, pi]")));
    }
    let s = phi.sin().min(1.0);
    if s < 1e-12 {
        return Err(invalid("phi", format!("exponent diverges at phi = {phi}")));
    }
    let a = (1.0 + s) / (2.0 * s);
    let b = (1.0 - s) / (2.0 * s);
    let b_term = if b > 0.0 { b * b.ln() } else { 0.0 };
    Ok(a * a.ln() - b_term)
}

/// `sin(theta) exp(kl_exponent(2 theta))` on `(0, arcsin(1/1.2)]`.
pub fn analysis_function(theta: f64) -> Result<f64> {
    let end = analysis_domain_end();
    if !(theta > 0.0 && theta <= end + 1e-15) {
        return Err(invalid("theta", format!("{theta} is outside (0, {end}]")));
    }
    Ok(theta.sin() * kl_exponent(2.0 * theta)?.exp())
}

/// Maximises [`analysis_function`] on the grid `lo, lo + step, ...` plus the
/// right endpoint; returns `(argmax, max)`, first maximiser on ties.
pub fn analysis_grid_max(lo: f64, step: f64) -> Result<(f64, f64)> {
    if !(step > 0.0) {
        return Err(invalid("step", "must be positive"));
    }
    let end = analysis_domain_end();
    let count = ((end - lo) / step).floor() as usize;
    let grid = (0..=count)
        .map(|i| lo + step * i as f64)
        .filter(|&t| t < end)
        .chain(std::iter::once(end));
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for t in grid {
        let v = analysis_function(t)?;
        if v > best.1 {
            best = (t, v);
        }
    }
    Ok(best)
}

/// Per-dimension log of the sphere-net chromatic ratio:
/// `-ln sin(arcsin(1/x) + delta) - kl_exponent(2 arcsin(1/x))`.
pub fn ratio_exponent(x: f64, delta: f64) -> Result<f64> {
    if !(x >= 1.2 && x.is_finite()) {
        return Err(invalid("x", format!("{x} must be finite and >= 1.2")));
    }
    if !(delta > 0.0) {
        return Err(invalid("delta", "must be positive"));
    }
    let theta = (1.0 / x).asin();
    if theta + delta >= std::f64::consts::FRAC_PI_2 {
        return Err(invalid(
            "delta",
            format!(
                "arcsin(1/x) + delta = {} must stay below pi/2",
                theta + delta
            ),
        ));
    }
    Ok(-(theta + delta).sin().ln() - kl_exponent(2.0 * theta)?)
}

/// `floor(((r2 + r1/2) / (r1/2))^d)`: how many disjoint balls of radius
/// `r1/2` fit in a ball of radius `r2 + r1/2`, hence a clique bound.
pub fn clique_volume_bound(d: usize, r1: f64, r2: f64) -> Result<u128> {
    if !(r1 > 0.0) {
        return Err(invalid("r1", "the volume bound needs r1 > 0"));
    }
    if !(r2 >= r1 && r2.is_finite()) {
        return Err(invalid("r2", "must be finite and >= r1"));
    }
    let base = (r2 + r1 / 2.0) / (r1 / 2.0);
    let value = base.powi(d as i32);
    if !(value < 1e38) {
        return Err(Error::BudgetExceeded(format!(
            "volume bound {base}^{d} overflows"
        )));
    }
    Ok((value * (1.0 + 1e-12)).floor() as u128)
}

/// The sweep-colouring chain `k <= nu(T, d) 7^d omega` with `T = 2 + r1/r2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepBound {
    pub d: usize,
    pub r1: f64,
    pub r2: f64,
    pub t: f64,
    pub nu_witness_count: usize,
    /// `nu_witness_count * 7^d`
    pub sweep_bound: u128,
    pub note: String,
}

pub fn sweep_chi_bound(d: usize, r1: f64, r2: f64) -> Result<SweepBound> {
    if d == 0 {
        return Err(invalid("d", "must be positive"));
    }
    if !(r1 >= 0.0 && r2 > 0.0 && r2 >= r1 && r2.is_finite()) {
        return Err(invalid(
            "radii",
            format!("need 0 <= r1 <= r2, r2 > 0; got ({r1}, {r2})"),
        ));
    }
    let t = 2.0 + r1 / r2;
    let nu = covering_number_witness(t, d, r2 / 2.0)?.count();
    let seven = 7u128
        .checked_pow(d as u32)
        .ok_or_else(|| Error::BudgetExceeded(format!("7^{d} overflows")))?;
    let sweep_bound = seven
        .checked_mul(nu as u128)
        .ok_or_else(|| Error::BudgetExceeded("nu * 7^d overflows".into()))?;
    Ok(SweepBound {
        d,
        r1,
        r2,
        t,
        nu_witness_count: nu,
        sweep_bound,
        note: "chi <= k <= nu(T,d) * 7^d * omega; asymptotically (21 + o_d(1))^d * omega".into(),
    })
}

/// Every evaluated quantity for one `(d, r1, r2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: usize,
    pub r1: f64,
    pub r2: f64,
    pub t: f64,
    pub nu_witness_count: usize,
    pub sweep_bound: u128,
    /// `kl_exponent(2 arcsin(r1/r2))`, when `r1 > 0`.
    pub kl_exponent: Option<f64>,
    /// `(theta, cap_fraction(d, theta))` for `theta = arcsin(r1/r2)` and
    /// `arcsin(r1/r2) + delta`.
    pub cap_fraction_values: Vec<(f64, f64)>,
    /// `ratio_exponent(r2/r1, delta)`, when defined.
    pub ratio_exponent: Option<f64>,
    pub clique_volume_bound: Option<u128>,
    pub notes: Vec<String>,
}

pub fn bound_report(d: usize, r1: f64, r2: f64, delta: f64) -> Result<BoundReport> {
    let sweep = sweep_chi_bound(d, r1, r2)?;
    let mut notes = vec![sweep.note.clone()];
    let mut kl = None;
    let mut caps = Vec::new();
    let mut ratio = None;
    let mut volume = None;
    if r1 > 0.0 {
        volume = Some(clique_volume_bound(d, r1, r2)?);
        let theta = (r1 / r2).asin();
        kl = Some(kl_exponent(2.0 * theta)?);
        notes.push(format!("kl_exponent: {ASYMPTOTIC_NOTE}"));
        if d >= 2 {
            caps.push((theta, cap_fraction(d, theta)?));
            if theta + delta <= std::f64::consts::PI {
                caps.push((theta + delta, cap_fraction(d, theta + delta)?));
            }
        }
        let x = r2 / r1;
        if x >= 1.2 {
            if let Ok(r) = ratio_exponent(x, delta) {
                ratio = Some(r);
                notes.push(format!("ratio_exponent: {ASYMPTOTIC_NOTE}"));
            }
        }
    }
    Ok(BoundReport {
        d,
        r1,
        r2,
        t: sweep.t,
        nu_witness_count: sweep.nu_witness_count,
        sweep_bound: sweep.sweep_bound,
        kl_exponent: kl,
        cap_fraction_values: caps,
        ratio_exponent: ratio,
        clique_volume_bound: volume,
        notes,
    })
}
