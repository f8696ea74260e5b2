//! Constructive coverings of a ball of radius `T r` by balls of radius `r`.
//!
//! The centres are the midpoints of a cubic grid whose cells have half
//! diagonal exactly `r`, so every cell is contained in the ball around its
//! midpoint; cells that miss the big ball are dropped. The centre count is
//! an upper bound on the covering number.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::point::{dist_sq_raw, Point};
use super::sampling::{in_ball, rng_for_stream};
use crate::error::{invalid, Error, Result};

/// Default number of random probes used to check a covering.
pub const DEFAULT_PROBES: usize = 100_000;
/// Hard cap on the number of grid cells examined.
pub const MAX_CELLS: u128 = 10_000_000;
const PROBE_SEED: u64 = 0xc0_7e_15;
const COVER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringWitness {
    pub centers: Vec<Point>,
    pub small_radius: f64,
    pub big_radius: f64,
    pub ratio: f64,
}

impl CoveringWitness {
    pub fn count(&self) -> usize {
        self.centers.len()
    }

    /// Samples `probes` uniform points of the big ball and returns how many
    /// are farther than the small radius from every centre. Linear scan;
    /// independent of the grid used for construction.
    pub fn count_misses(&self, probes: usize, seed: u64) -> usize {
        let d = self.centers.first().map_or(1, Point::dim);
        let limit = (self.small_radius * (1.0 + COVER_SLACK)).powi(2);
        let mut rng = rng_for_stream(seed, 3);
        (0..probes)
            .filter(|_| {
                let q = in_ball(&mut rng, d, self.big_radius);
                !self
                    .centers
                    .iter()
                    .any(|c| dist_sq_raw(c.coords(), &q) <= limit)
            })
            .count()
    }
}

/// Builds a covering of `B(0, T r)` by balls of radius `r` and checks it on
/// [`DEFAULT_PROBES`] random probes.
pub fn covering_number_witness(ratio: f64, d: usize, small_radius: f64) -> Result<CoveringWitness> {
    covering_number_witness_with(ratio, d, small_radius, DEFAULT_PROBES, PROBE_SEED)
}

pub fn covering_number_witness_with(
    ratio: f64,
    d: usize,
    small_radius: f64,
    probes: usize,
    seed: u64,
) -> Result<CoveringWitness> {
    if d == 0 {
        return Err(invalid("d", "dimension must be positive"));
    }
    if !(ratio >= 1.0 && ratio.is_finite()) {
        return Err(invalid("T", format!("{ratio} must be finite and >= 1")));
    }
    if !(small_radius > 0.0 && small_radius.is_finite()) {
        return Err(invalid("small_radius", "must be positive and finite"));
    }
    let big_radius = ratio * small_radius;
    if ratio == 1.0 {
        return Ok(CoveringWitness {
            centers: vec![Point::origin(d)],
            small_radius,
            big_radius,
            ratio,
        });
    }

    let sqrt_d = (d as f64).sqrt();
    let side = 2.0 * small_radius / sqrt_d;
    let per_axis = (ratio * sqrt_d - 1e-12).ceil().max(1.0) as usize;
    if (per_axis as u128)
        .checked_pow(d as u32)
        .is_none_or(|c| c > MAX_CELLS)
    {
        return Err(Error::BudgetExceeded(format!(
            "covering grid would need {per_axis}^{d} cells"
        )));
    }
    let offset = (per_axis as f64 - 1.0) / 2.0;
    let center_of = |i: usize| (i as f64 - offset) * side;

    let mut index = vec![0usize; d];
    let mut centers = Vec::new();
    let mut lookup: HashMap<Vec<usize>, usize> = HashMap::new();
    loop {
        // closest point of the cell to the origin
        let near_sq: f64 = index
            .iter()
            .map(|&i| {
                let c = center_of(i);
                let gap = (c.abs() - side / 2.0).max(0.0);
                gap * gap
            })
            .sum();
        if near_sq <= big_radius * big_radius * (1.0 + 1e-12) {
            lookup.insert(index.clone(), centers.len());
            centers.push(Point::from_vec(
                index.iter().map(|&i| center_of(i)).collect(),
            ));
        }
        // odometer
        let mut axis = 0;
        while axis < d {
            index[axis] += 1;
            if index[axis] < per_axis {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
        if axis == d {
            break;
        }
    }

    let limit = (small_radius * (1.0 + COVER_SLACK)).powi(2);
    let mut rng = rng_for_stream(seed, 4);
    for _ in 0..probes {
        let q = in_ball(&mut rng, d, big_radius);
        let cell: Vec<usize> = q
            .iter()
            .map(|&x| ((x / side + offset).round().max(0.0) as usize).min(per_axis - 1))
            .collect();
        let hit = lookup
            .get(&cell)
            .is_some_and(|&k| dist_sq_raw(centers[k].coords(), &q) <= limit)
            || centers.iter().any(|c| dist_sq_raw(c.coords(), &q) <= limit);
        if !hit {
            return Err(Error::Verification(format!(
                "covering probe {q:?} is not covered"
            )));
        }
    }

    Ok(CoveringWitness {
        centers,
        small_radius,
        big_radius,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_balls() {
        for d in 1..5 {
            assert_eq!(covering_number_witness(1.0, d, 0.7).unwrap().count(), 1);
        }
    }

    #[test]
    fn interval_coverings_are_exact() {
        assert_eq!(covering_number_witness(3.0, 1, 1.0).unwrap().count(), 3);
        assert_eq!(covering_number_witness(2.0, 1, 1.0).unwrap().count(), 2);
        assert_eq!(covering_number_witness(2.5, 1, 0.3).unwrap().count(), 3);
    }

    #[test]
    fn probes_find_no_gap() {
        for (t, d) in [(2.0, 2), (3.0, 2), (2.5, 3), (3.0, 3)] {
            let w = covering_number_witness_with(t, d, 1.0, 20_000, 1).unwrap();
            assert_eq!(w.count_misses(20_000, 99), 0, "T={t} d={d}");
        }
    }

    #[test]
    fn a_missing_centre_is_noticed() {
        let mut w = covering_number_witness(3.0, 2, 1.0).unwrap();
        let n = w.centers.len();
        w.centers.remove(n / 2);
        assert!(w.count_misses(20_000, 5) > 0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(covering_number_witness(0.5, 2, 1.0).is_err());
        assert!(covering_number_witness(2.0, 0, 1.0).is_err());
        assert!(covering_number_witness(2.0, 2, -1.0).is_err());
        assert!(matches!(
            covering_number_witness(3.0, 12, 1.0),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
