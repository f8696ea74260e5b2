use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the norm of points that are meant to be on the unit sphere.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// A point of Euclidean space with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Malformed(format!("non-finite coordinate {bad}")));
        }
        Ok(Self { coords })
    }

    /// Builds a point without the finiteness check; for values computed
    /// from finite inputs.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Self { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self::from_vec(vec![0.0; dim])
    }

    /// `scale * e_axis`.
    pub fn axis(dim: usize, axis: usize, scale: f64) -> Self {
        let mut coords = vec![0.0; dim];
        coords[axis] = scale;
        Self::from_vec(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Point) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn translate(&self, shift: &[f64]) -> Point {
        Point::from_vec(self.coords.iter().zip(shift).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<f64>> for Point {
    /// Panics on non-finite input; use [`Point::new`] for untrusted data.
    fn from(coords: Vec<f64>) -> Self {
        Point::new(coords).expect("finite coordinates")
    }
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

/// Squared Euclidean distance on raw coordinate slices of equal length.
#[inline]
pub(crate) fn dist_sq_raw(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Euclidean distance between two points of the same dimension.
pub fn dist(p: &Point, q: &Point) -> Result<f64> {
    check_dims(p, q)?;
    Ok(dist_sq_raw(&p.coords, &q.coords).sqrt())
}

/// Geodesic distance on the unit sphere: `acos` of the clamped inner product.
pub fn spherical_distance(u: &Point, v: &Point) -> Result<f64> {
    check_dims(u, v)?;
    for p in [u, v] {
        let norm = p.norm();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit { norm });
        }
    }
    Ok(spherical_distance_raw(&u.coords, &v.coords))
}

#[inline]
pub(crate) fn spherical_distance_raw(u: &[f64], v: &[f64]) -> f64 {
    let inner: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    inner.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn p(c: &[f64]) -> Point {
        Point::from(c.to_vec())
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(dist(&p(&[0.0]), &p(&[2.0])).unwrap(), 2.0);
        assert_eq!(dist(&p(&[0.0, 0.0]), &p(&[3.0, 4.0])).unwrap(), 5.0);
        let q = p(&[1.5, -2.0, 7.25]);
        assert_eq!(dist(&q, &q).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = dist(&p(&[0.0]), &p(&[0.0, 1.0])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 1,
                found: 2
            }
        );
    }

    #[test]
    fn spherical_examples() {
        let d = spherical_distance(&p(&[1.0, 0.0]), &p(&[0.0, 1.0])).unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        let d = spherical_distance(&p(&[1.0, 0.0]), &p(&[-1.0, 0.0])).unwrap();
        assert!((d - PI).abs() < 1e-15);
        let e = p(&[1.0, 0.0, 0.0]);
        assert_eq!(spherical_distance(&e, &e).unwrap(), 0.0);
    }

    #[test]
    fn spherical_rejects_non_unit() {
        assert!(matches!(
            spherical_distance(&p(&[2.0, 0.0]), &p(&[0.0, 1.0])),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
    }
}
