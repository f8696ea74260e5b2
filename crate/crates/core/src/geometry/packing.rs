//! Greedy packings: balls in a ball, points on the sphere, and the
//! explicit many-points-far-apart configurations in a ball of radius just
//! below one.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::point::{dist_sq_raw, spherical_distance_raw, Point, UNIT_TOLERANCE};
use super::sampling::{in_ball, rng_for_stream, unit_sphere};
use crate::error::{invalid, Error, Result};

/// Angular slack accepted when validating spherical codes built from
/// closed-form angles.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

const PACKING_POOL: usize = 2048;
const PACKING_STARTS: usize = 8;
const CODE_POOL: usize = 4096;

/// Disjoint balls of radius `radius` whose centres lie in a container ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingWitness {
    pub centers: Vec<Point>,
    pub radius: f64,
    pub container_radius: f64,
}

impl PackingWitness {
    pub fn count(&self) -> usize {
        self.centers.len()
    }

    /// Checks pairwise separation `>= 2 radius` and containment.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.centers.iter().enumerate() {
            if c.norm() > self.container_radius + 1e-12 {
                return Err(Error::Verification(format!(
                    "centre {i} at norm {} outside container {}",
                    c.norm(),
                    self.container_radius
                )));
            }
            for (j, other) in self.centers.iter().enumerate().skip(i + 1) {
                let d = super::point::dist(c, other)?;
                if d < 2.0 * self.radius {
                    return Err(Error::Verification(format!(
                        "centres {i} and {j} at distance {d} < {}",
                        2.0 * self.radius
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Points on the unit sphere pairwise at angular distance at least
/// `min_angle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalCode {
    pub points: Vec<Point>,
    pub min_angle: f64,
}

impl SphericalCode {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            if (p.norm() - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::NotUnit { norm: p.norm() });
            }
            for (j, q) in self.points.iter().enumerate().skip(i + 1) {
                let a = super::point::spherical_distance(p, q)?;
                if a < self.min_angle - ANGLE_TOLERANCE {
                    return Err(Error::Verification(format!(
                        "code points {i} and {j} at angle {a} < {}",
                        self.min_angle
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Farthest-point insertion over a candidate pool: starting from
/// `pool[start]`, repeatedly adds the candidate farthest from the chosen
/// set while `accept(distance)` holds. Ties go to the lowest pool index.
fn farthest_insertion<D, A>(pool: &[Vec<f64>], start: usize, metric: D, accept: A) -> Vec<usize>
where
    D: Fn(&[f64], &[f64]) -> f64,
    A: Fn(f64) -> bool,
{
    let mut chosen = vec![start];
    let mut nearest: Vec<f64> = pool.iter().map(|p| metric(p, &pool[start])).collect();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (i, &d) in nearest.iter().enumerate() {
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        let Some((idx, d)) = best else { break };
        if !accept(d) {
            break;
        }
        chosen.push(idx);
        for (i, p) in pool.iter().enumerate() {
            let nd = metric(p, &pool[idx]);
            if nd < nearest[i] {
                nearest[i] = nd;
            }
        }
    }
    chosen
}

/// Greedy lower-bound witness for the number of disjoint balls of radius
/// `ball_radius` that fit inside a ball of radius `container_radius`.
///
/// Centres are drawn from a pool made of the origin, the axis points on the
/// inner sphere of radius `R - r`, and seeded uniform samples of `B(0, R - r)`;
/// several farthest-point starts are tried and the largest packing wins
/// (lowest start index on ties).
pub fn greedy_ball_packing(
    container_radius: f64,
    ball_radius: f64,
    d: usize,
    seed: u64,
) -> Result<PackingWitness> {
    if d == 0 {
        return Err(invalid("d", "dimension must be positive"));
    }
    if !(ball_radius > 0.0 && ball_radius.is_finite()) {
        return Err(invalid("ball_radius", "must be positive and finite"));
    }
    if !(container_radius >= ball_radius && container_radius.is_finite()) {
        return Err(invalid(
            "container_radius",
            "must be finite and >= ball_radius",
        ));
    }
    let inner = container_radius - ball_radius;
    let mut pool: Vec<Vec<f64>> = vec![vec![0.0; d]];
    if inner > 0.0 {
        for axis in 0..d {
            for sign in [1.0, -1.0] {
                let mut v = vec![0.0; d];
                v[axis] = sign * inner;
                pool.push(v);
            }
        }
        let mut rng = rng_for_stream(seed, 0);
        pool.extend((0..PACKING_POOL).map(|_| in_ball(&mut rng, d, inner)));
    }
    let separation_sq = 4.0 * ball_radius * ball_radius;
    let mut best: Vec<usize> = Vec::new();
    for start in 0..PACKING_STARTS.min(pool.len()) {
        let chosen = farthest_insertion(&pool, start, dist_sq_raw, |dsq| dsq >= separation_sq);
        if chosen.len() > best.len() {
            best = chosen;
        }
    }
    let witness = PackingWitness {
        centers: best
            .into_iter()
            .map(|i| Point::from_vec(pool[i].clone()))
            .collect(),
        radius: ball_radius,
        container_radius,
    };
    debug_assert!(witness.validate().is_ok());
    Ok(witness)
}

/// Greedy spherical code with minimal angle `min_angle`; a lower-bound
/// witness for the number of disjoint caps of angular radius `min_angle / 2`.
///
/// On the circle the optimal equally spaced code is returned. Otherwise the
/// code is seeded with the cross-polytope `+-e_i` (kept greedily) and
/// extended by farthest-point insertion from seeded sphere samples.
pub fn greedy_spherical_code(d: usize, min_angle: f64, seed: u64) -> Result<SphericalCode> {
    if d < 2 {
        return Err(invalid("d", "spherical codes need d >= 2"));
    }
    if !(min_angle > 0.0 && min_angle <= PI) {
        return Err(invalid(
            "min_angle",
            format!("{min_angle} is outside (0, pi]"),
        ));
    }
    if d == 2 {
        let m = ((2.0 * PI / min_angle) + ANGLE_TOLERANCE).floor().max(1.0) as usize;
        let points = (0..m)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / m as f64;
                Point::from_vec(vec![a.cos(), a.sin()])
            })
            .collect();
        return Ok(SphericalCode { points, min_angle });
    }

    let mut pool: Vec<Vec<f64>> = Vec::with_capacity(2 * d + CODE_POOL);
    for axis in 0..d {
        for sign in [1.0, -1.0] {
            let mut v = vec![0.0; d];
            v[axis] = sign;
            pool.push(v);
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..pool.len() {
        if chosen
            .iter()
            .all(|&j| spherical_distance_raw(&pool[i], &pool[j]) >= min_angle - ANGLE_TOLERANCE)
        {
            chosen.push(i);
        }
    }
    let mut rng = rng_for_stream(seed, 1);
    pool.extend((0..CODE_POOL).map(|_| unit_sphere(&mut rng, d)));

    let mut nearest: Vec<f64> = pool
        .iter()
        .map(|p| {
            chosen
                .iter()
                .map(|&j| spherical_distance_raw(p, &pool[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (i, &a) in nearest.iter().enumerate() {
            if best.is_none_or(|(_, ba)| a > ba) {
                best = Some((i, a));
            }
        }
        match best {
            Some((idx, a)) if a >= min_angle => {
                chosen.push(idx);
                for (i, p) in pool.iter().enumerate() {
                    let na = spherical_distance_raw(p, &pool[idx]);
                    if na < nearest[i] {
                        nearest[i] = na;
                    }
                }
            }
            _ => break,
        }
    }
    Ok(SphericalCode {
        points: chosen
            .into_iter()
            .map(|i| Point::from_vec(pool[i].clone()))
            .collect(),
        min_angle,
    })
}

/// Radius used by the explicit constructions.
pub const EXPLICIT_RADIUS: f64 = 0.99;
/// First coordinate `x` of the `a`/`b` points; the second is
/// `sqrt(0.99^2 - x^2)`.
pub const EXPLICIT_X: f64 = 0.6;

const N_GAMMA_SEED: u64 = 0x6e67;

/// Points in `B(0, gamma)` pairwise at distance more than one.
///
/// For `gamma >= 0.99` this is the explicit configuration: a regular
/// pentagon of circumradius 0.99 when `d = 2`, and for `d >= 3` the eight
/// points `(+-x, +-y, 0, ...)`, `(+-x, 0, +-y, ...)` with `x = 0.6`,
/// `x^2 + y^2 = 0.99^2`, plus `+-0.99 e_i` for every axis `i >= 4`, for
/// `2d + 2` points in total. Smaller `gamma` falls back to a greedy search.
pub fn n_gamma_witness(d: usize, gamma: f64) -> Result<Vec<Point>> {
    if d < 2 {
        return Err(invalid("d", "needs d >= 2"));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid("gamma", format!("{gamma} is outside (0, 1)")));
    }
    if gamma >= EXPLICIT_RADIUS {
        return Ok(explicit_configuration(d));
    }
    Ok(greedy_far_points(d, gamma))
}

fn explicit_configuration(d: usize) -> Vec<Point> {
    let r = EXPLICIT_RADIUS;
    if d == 2 {
        return (0..5)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / 5.0;
                Point::from_vec(vec![r * a.cos(), r * a.sin()])
            })
            .collect();
    }
    let x = EXPLICIT_X;
    let y = (r * r - x * x).sqrt();
    let mut pts = Vec::with_capacity(2 * d + 2);
    for second_axis in [1usize, 2] {
        for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let mut v = vec![0.0; d];
            v[0] = sx * x;
            v[second_axis] = sy * y;
            pts.push(Point::from_vec(v));
        }
    }
    for axis in 3..d {
        pts.push(Point::axis(d, axis, r));
        pts.push(Point::axis(d, axis, -r));
    }
    pts
}

fn greedy_far_points(d: usize, gamma: f64) -> Vec<Point> {
    let mut rng = rng_for_stream(N_GAMMA_SEED, 2);
    let mut pool: Vec<Vec<f64>> = (0..PACKING_POOL)
        .map(|_| {
            unit_sphere(&mut rng, d)
                .into_iter()
                .map(|c| c * gamma)
                .collect()
        })
        .collect();
    pool.extend((0..PACKING_POOL / 4).map(|_| in_ball(&mut rng, d, gamma)));
    let mut best = Vec::new();
    for start in 0..PACKING_STARTS {
        let chosen = farthest_insertion(&pool, start, dist_sq_raw, |dsq| dsq > 1.0);
        if chosen.len() > best.len() {
            best = chosen;
        }
    }
    best.into_iter()
        .map(|i| Point::from_vec(pool[i].clone()))
        .collect()
}
