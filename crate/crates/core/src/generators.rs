//! Instance families: lattice restrictions, one-dimensional odd cycles,
//! sphere nets, the explicit far-apart configurations, and uniform random
//! point clouds.

use std::f64::consts::PI;

use num_rational::Ratio;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::sampling::{rng_for_stream, unit_sphere};
use crate::geometry::{n_gamma_witness, Point, EXPLICIT_RADIUS};
use crate::graph::{AnnulusInstance, DEFAULT_TOLERANCE};
use crate::rational::{rationalize, Rational};

/// Default cap on generated point counts.
pub const DEFAULT_POINT_CAP: usize = 100_000;
/// Default net radius for sphere nets.
pub const DEFAULT_NET_EPS: f64 = PI / 16.0;
/// Generated float instances keep every pair this many tolerances away
/// from the radii.
pub const BOUNDARY_MARGIN_FACTOR: f64 = 10.0;

/// `eps Z^d` restricted to the closed ball `B(0, n)`, with radii `(1, x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub d: usize,
    pub x: f64,
    #[serde(with = "crate::rational::as_string")]
    pub eps: Rational,
    pub n: f64,
}

/// Natural lattice instance in exact-integer mode.
pub fn gen_lattice(spec: &LatticeSpec) -> Result<AnnulusInstance> {
    gen_lattice_capped(spec, DEFAULT_POINT_CAP)
}

pub fn gen_lattice_capped(spec: &LatticeSpec, cap: usize) -> Result<AnnulusInstance> {
    let LatticeSpec { d, x, eps, n } = *spec;
    if d == 0 {
        return Err(invalid("d", "must be positive"));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(invalid("x", format!("{x} must be finite and >= 1")));
    }
    if eps <= Ratio::from_integer(0) || eps > Ratio::from_integer(1) {
        return Err(invalid("eps", "must lie in (0, 1]"));
    }
    if !(n > 0.0 && n.is_finite()) {
        return Err(invalid("n", "must be positive and finite"));
    }
    let n_exact = rationalize(n)?;
    // |k|^2 eps^2 <= n^2  <=>  |k|^2 <= (n / eps)^2
    let ratio = n_exact / eps;
    let (num, den) = (*ratio.numer() as i128, *ratio.denom() as i128);
    let max_norm_sq = (num * num) / (den * den);
    let reach = (num / den) as i64;
    let side = (2 * reach + 1) as u128;
    if side
        .checked_pow(d as u32)
        .is_none_or(|box_count| box_count > 64 * cap as u128)
    {
        return Err(Error::BudgetExceeded(format!(
            "lattice box of side {side} in dimension {d} is too large"
        )));
    }
    let mut cells = Vec::new();
    let mut k = vec![-reach; d];
    loop {
        let norm_sq: i128 = k.iter().map(|&c| (c as i128) * (c as i128)).sum();
        if norm_sq <= max_norm_sq {
            if cells.len() == cap {
                return Err(Error::BudgetExceeded(format!(
                    "lattice has more than {cap} points"
                )));
            }
            cells.push(k.clone());
        }
        let mut axis = 0;
        while axis < d {
            k[axis] += 1;
            if k[axis] <= reach {
                break;
            }
            k[axis] = -reach;
            axis += 1;
        }
        if axis == d {
            break;
        }
    }
    AnnulusInstance::exact(d, Ratio::from_integer(1), rationalize(x)?, eps, cells)
}

/// One-dimensional instance with radii `(1, x)` whose graph contains a
/// spanning odd cycle, listed in cycle order.
///
/// For `x >= 2` the points are `0, x, 2x, x + 0.99, x - 0.99`. For `x < 2`,
/// with `k >= 2` the least integer such that `k x >= k + 1`, the points are
/// `0, x, ..., k x` followed by `(k - j k / (k + 1)) x` for `j = 1..=k`.
/// Coordinates are exact multiples of a rational unit.
pub fn gen_cycle_1d(x: f64) -> Result<AnnulusInstance> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(invalid("x", format!("{x} must be finite and > 1")));
    }
    let x_exact = rationalize(x)?;
    if x_exact <= Ratio::from_integer(1) {
        return Err(invalid("x", format!("{x} is indistinguishable from 1")));
    }
    let (p, q) = (*x_exact.numer(), *x_exact.denom());
    let one = Ratio::from_integer(1);
    if x_exact >= Ratio::from_integer(2) {
        // unit 1/(100 q): x = 100 p units, 0.99 = 99 q units
        let scale = Ratio::new(1, 100 * q);
        let cells = [0, 100 * p, 200 * p, 100 * p + 99 * q, 100 * p - 99 * q]
            .into_iter()
            .map(|c| vec![c])
            .collect();
        return AnnulusInstance::exact(1, one, x_exact, scale, cells);
    }
    // k (p - q) >= q
    let k = (q + (p - q) - 1) / (p - q);
    let k = k.max(2);
    if 2 * k + 1 > DEFAULT_POINT_CAP as i64 {
        return Err(Error::BudgetExceeded(format!(
            "x = {x} needs a cycle of length {}",
            2 * k + 1
        )));
    }
    // unit x / (k + 1)
    let scale = Ratio::new(p, q * (k + 1));
    let mut cells: Vec<Vec<i64>> = (0..=k).map(|j| vec![j * (k + 1)]).collect();
    cells.extend((1..=k).map(|j| vec![k * (k + 1) - j * k]));
    AnnulusInstance::exact(1, one, x_exact, scale, cells)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NetMethod {
    /// Maximal `eps`-separated set, which is an `eps`-net.
    GreedyNet { eps: f64 },
    /// Poisson number of uniform points with intensity `lambda` per unit
    /// of sphere measure.
    Poisson { lambda: f64 },
}

/// Points on `S^{d-1}` with radii `(2/x, 2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereNetSpec {
    pub d: usize,
    pub x: f64,
    pub method: NetMethod,
    pub seed: u64,
    /// Probes per verification round of the greedy net.
    pub probes: usize,
}

impl SphereNetSpec {
    pub fn greedy(d: usize, x: f64, eps: f64, seed: u64) -> Self {
        Self {
            d,
            x,
            method: NetMethod::GreedyNet { eps },
            seed,
            probes: crate::geometry::DEFAULT_PROBES,
        }
    }

    pub fn poisson(d: usize, x: f64, lambda: f64, seed: u64) -> Self {
        Self {
            d,
            x,
            method: NetMethod::Poisson { lambda },
            seed,
            probes: crate::geometry::DEFAULT_PROBES,
        }
    }
}

const MAX_NET_ROUNDS: usize = 64;

pub fn gen_sphere_net(spec: &SphereNetSpec) -> Result<AnnulusInstance> {
    let SphereNetSpec {
        d,
        x,
        method,
        seed,
        probes,
    } = *spec;
    if d < 2 {
        return Err(invalid("d", "sphere nets need d >= 2"));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(invalid("x", format!("{x} must be finite and >= 1")));
    }
    let points = match method {
        NetMethod::GreedyNet { eps } => greedy_net(d, eps, seed, probes)?,
        NetMethod::Poisson { lambda } => {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(invalid("lambda", "must be positive and finite"));
            }
            let mean = lambda * crate::geometry::sphere_area(d)?;
            let mut rng = rng_for_stream(seed, 10);
            let count = Poisson::new(mean)
                .map_err(|e| invalid("lambda", e.to_string()))?
                .sample(&mut rng) as usize;
            if count > DEFAULT_POINT_CAP {
                return Err(Error::BudgetExceeded(format!("{count} Poisson points")));
            }
            (0..count).map(|_| unit_sphere(&mut rng, d)).collect()
        }
    };
    let points = points.into_iter().map(Point::from_vec).collect();
    let inst = AnnulusInstance::float(d, 2.0 / x, 2.0, points)?;
    // no pair is farther than the diameter, so only the inner radius can flip
    let margin = BOUNDARY_MARGIN_FACTOR * DEFAULT_TOLERANCE;
    for u in 0..inst.n() {
        for v in u + 1..inst.n() {
            let dist = inst.distance(u, v);
            if (dist - inst.r1()).abs() <= margin {
                return Err(Error::BoundaryAmbiguity {
                    u,
                    v,
                    distance: dist,
                    radius: inst.r1(),
                });
            }
        }
    }
    Ok(inst)
}

fn greedy_net(d: usize, eps: f64, seed: u64, probes: usize) -> Result<Vec<Vec<f64>>> {
    if !(eps > 0.0 && eps < PI) {
        return Err(invalid("eps", format!("{eps} is outside (0, pi)")));
    }
    let mut net: Vec<Vec<f64>> = if d == 2 {
        let m = (2.0 * PI / eps + 1e-9).floor() as usize;
        (0..m)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / m as f64;
                vec![a.cos(), a.sin()]
            })
            .collect()
    } else {
        vec![Point::axis(d, 0, 1.0).into_coords()]
    };
    let cos_eps = eps.cos();
    let mut rng = rng_for_stream(seed, 11);
    for _ in 0..MAX_NET_ROUNDS {
        let mut added = 0;
        for _ in 0..probes.max(1) {
            let q = unit_sphere(&mut rng, d);
            let covered = net
                .iter()
                .any(|p| p.iter().zip(&q).map(|(a, b)| a * b).sum::<f64>() >= cos_eps);
            if !covered {
                if d == 2 {
                    return Err(Error::Verification(format!(
                        "circle net with eps {eps} misses a probe"
                    )));
                }
                net.push(q);
                added += 1;
                if net.len() > DEFAULT_POINT_CAP {
                    return Err(Error::BudgetExceeded("sphere net too large".into()));
                }
            }
        }
        if added == 0 {
            return Ok(net);
        }
    }
    Err(Error::Verification(format!(
        "sphere net did not stabilise after {MAX_NET_ROUNDS} probe rounds"
    )))
}

/// The explicit far-apart configuration (radius 0.99) as an instance with
/// radii `(1, 2)`, so that it induces a complete graph.
pub fn gen_easy_lemma_instance(d: usize) -> Result<AnnulusInstance> {
    let pts = n_gamma_witness(d, EXPLICIT_RADIUS)?;
    AnnulusInstance::float(d, 1.0, 2.0, pts)
}

/// `n` uniform points of `[0, side]^d` with the given radii.
pub fn gen_uniform_box(
    d: usize,
    n: usize,
    r1: f64,
    r2: f64,
    side: f64,
    seed: u64,
) -> Result<AnnulusInstance> {
    if !(side > 0.0 && side.is_finite()) {
        return Err(invalid("side", "must be positive and finite"));
    }
    if n > DEFAULT_POINT_CAP {
        return Err(Error::BudgetExceeded(format!("{n} points")));
    }
    let mut rng = rng_for_stream(seed, 12);
    let pts = (0..n)
        .map(|_| Point::from_vec((0..d).map(|_| rng.random::<f64>() * side).collect()))
        .collect();
    AnnulusInstance::float(d, r1, r2, pts)
}
