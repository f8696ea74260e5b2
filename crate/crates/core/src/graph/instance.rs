//! Embedded point sets with annulus radii, and the pairwise relations the
//! rest of the crate asks of them.

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::geometry::{dist_sq_raw, Point};
use crate::rational::{
    div_ceil, div_floor, format_rational, parse_rational, rationalize, squared_over, to_f64,
    Rational,
};

/// Default boundary tolerance of the floating-point mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// How pairwise distances are compared against the radii.
#[derive(Debug, Clone, PartialEq)]
pub enum ArithmeticMode {
    /// `r1 - tolerance <= |p - q| <= r2 + tolerance`.
    Float { tolerance: f64 },
    /// Points are integer multiples of `scale`; squared distances are
    /// compared against squared rational radii exactly.
    ExactInteger { scale: Rational },
}

impl ArithmeticMode {
    pub fn label(&self) -> String {
        match self {
            ArithmeticMode::Float { tolerance } => format!("float(tolerance={tolerance:e})"),
            ArithmeticMode::ExactInteger { scale } => {
                format!("exact-integer(scale={})", format_rational(scale))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct ExactFrame {
    cells: Vec<Vec<i64>>,
    r1: Rational,
    r2: Rational,
    /// smallest integer squared cell distance that reaches `r1`
    edge_min: i128,
    /// largest integer squared cell distance within `r2`
    edge_max: i128,
    /// largest integer squared cell distance within `r1 / 2`
    half_max: i128,
}

impl ExactFrame {
    fn cell_dist_sq(&self, i: usize, j: usize) -> i128 {
        self.cells[i]
            .iter()
            .zip(&self.cells[j])
            .map(|(&a, &b)| {
                let d = a as i128 - b as i128;
                d * d
            })
            .sum()
    }
}

/// A dimension, radii `0 <= r1 <= r2`, `r2 > 0`, and a finite point set.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusInstance {
    dim: usize,
    r1: f64,
    r2: f64,
    points: Vec<Point>,
    mode: ArithmeticMode,
    exact: Option<ExactFrame>,
}

fn check_radii(r1: f64, r2: f64) -> Result<()> {
    if !(r1.is_finite() && r2.is_finite()) {
        return Err(invalid("radii", "must be finite"));
    }
    if r1 < 0.0 {
        return Err(invalid("r1", format!("{r1} is negative")));
    }
    if r2 <= 0.0 || r2 < r1 {
        return Err(invalid(
            "r2",
            format!("need r2 > 0 and r2 >= r1, got ({r1}, {r2})"),
        ));
    }
    Ok(())
}

impl AnnulusInstance {
    /// Floating-point instance with the default tolerance.
    pub fn float(dim: usize, r1: f64, r2: f64, points: Vec<Point>) -> Result<Self> {
        Self::float_with_tolerance(dim, r1, r2, points, DEFAULT_TOLERANCE)
    }

    pub fn float_with_tolerance(
        dim: usize,
        r1: f64,
        r2: f64,
        points: Vec<Point>,
        tolerance: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dim", "must be positive"));
        }
        check_radii(r1, r2)?;
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(invalid("tolerance", "must be finite and non-negative"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Self {
            dim,
            r1,
            r2,
            points,
            mode: ArithmeticMode::Float { tolerance },
            exact: None,
        })
    }

    /// Exact instance whose points are `scale * cell` for integer cells.
    pub fn exact(
        dim: usize,
        r1: Rational,
        r2: Rational,
        scale: Rational,
        cells: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dim", "must be positive"));
        }
        if scale <= Rational::from_integer(0) {
            return Err(invalid("scale", "must be positive"));
        }
        let (r1f, r2f) = (to_f64(&r1), to_f64(&r2));
        if r1 < Rational::from_integer(0) || r2 <= Rational::from_integer(0) || r2 < r1 {
            return Err(invalid(
                "radii",
                format!("need 0 <= r1 <= r2, r2 > 0, got ({r1}, {r2})"),
            ));
        }
        if let Some(c) = cells.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        let s = to_f64(&scale);
        let points = cells
            .iter()
            .map(|c| Point::new(c.iter().map(|&k| k as f64 * s).collect()))
            .collect::<Result<Vec<_>>>()?;
        let (n1, d1) = squared_over(&r1, &scale);
        let (n2, d2) = squared_over(&r2, &scale);
        let frame = ExactFrame {
            cells,
            r1,
            r2,
            edge_min: div_ceil(n1, d1),
            edge_max: div_floor(n2, d2),
            half_max: div_floor(n1, 4 * d1),
        };
        Ok(Self {
            dim,
            r1: r1f,
            r2: r2f,
            points,
            mode: ArithmeticMode::ExactInteger { scale },
            exact: Some(frame),
        })
    }

    /// Same points and radii with a different floating tolerance. Exact
    /// instances are returned unchanged.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if let ArithmeticMode::Float { tolerance: t } = &mut self.mode {
            *t = tolerance;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn mode(&self) -> &ArithmeticMode {
        &self.mode
    }

    /// Integer cells of an exact instance.
    pub fn cells(&self) -> Option<&[Vec<i64>]> {
        self.exact.as_ref().map(|f| f.cells.as_slice())
    }

    /// Exact radii of an exact instance.
    pub fn exact_radii(&self) -> Option<(Rational, Rational)> {
        self.exact.as_ref().map(|f| (f.r1, f.r2))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn tolerance(&self) -> f64 {
        match self.mode {
            ArithmeticMode::Float { tolerance } => tolerance,
            ArithmeticMode::ExactInteger { .. } => 0.0,
        }
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        dist_sq_raw(self.points[i].coords(), self.points[j].coords()).sqrt()
    }

    /// Whether `i` and `j` (distinct) are joined: distance in `[r1, r2]`.
    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match &self.exact {
            Some(f) => {
                let d = f.cell_dist_sq(i, j);
                f.edge_min <= d && d <= f.edge_max
            }
            None => {
                let t = self.tolerance();
                let d = self.distance(i, j);
                self.r1 - t <= d && d <= self.r2 + t
            }
        }
    }

    /// Whether `|p_i - p_j| <= r1 / 2`.
    pub fn within_half_inner(&self, i: usize, j: usize) -> bool {
        match &self.exact {
            Some(f) => f.cell_dist_sq(i, j) <= f.half_max,
            None => self.distance(i, j) <= self.r1 / 2.0 + self.tolerance(),
        }
    }

    /// In float mode, the radius a pair sits within tolerance of, if any.
    /// The lower radius only counts when it is positive; exact instances
    /// never report boundary pairs.
    pub fn boundary_radius(&self, i: usize, j: usize, margin: f64) -> Option<f64> {
        if self.exact.is_some() || i == j {
            return None;
        }
        let d = self.distance(i, j);
        if self.r1 > 0.0 && (d - self.r1).abs() <= margin {
            Some(self.r1)
        } else if (d - self.r2).abs() <= margin {
            Some(self.r2)
        } else {
            None
        }
    }

    /// All pairs within `margin` of a radius, as `(u, v, distance, radius)`.
    pub fn boundary_pairs(&self, margin: f64) -> Vec<(usize, usize, f64, f64)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if let Some(r) = self.boundary_radius(u, v, margin) {
                    out.push((u, v, self.distance(u, v), r));
                }
            }
        }
        out
    }

    /// Compares two vertices by last coordinate, then by the remaining
    /// coordinates in order, then by index.
    pub fn sweep_cmp(&self, i: usize, j: usize) -> Ordering {
        let by_coords = match &self.exact {
            Some(f) => {
                let (a, b) = (&f.cells[i], &f.cells[j]);
                let last = self.dim - 1;
                a[last]
                    .cmp(&b[last])
                    .then_with(|| a[..last].cmp(&b[..last]))
            }
            None => {
                let (a, b) = (self.points[i].coords(), self.points[j].coords());
                let last = self.dim - 1;
                a[last].total_cmp(&b[last]).then_with(|| {
                    a[..last]
                        .iter()
                        .zip(&b[..last])
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                })
            }
        };
        by_coords.then(i.cmp(&j))
    }

    /// Vertices in sweep order (ascending last coordinate, ties broken
    /// lexicographically).
    pub fn sweep_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.sweep_cmp(a, b));
        order
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum ModeFile {
    Float {
        #[serde(default = "default_tolerance")]
        tolerance: f64,
    },
    ExactInteger {
        scale: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r1: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r2: Option<String>,
    },
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoordsFile {
    Integer(Vec<Vec<i64>>),
    Float(Vec<Vec<f64>>),
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    dim: usize,
    r1: f64,
    r2: f64,
    mode: ModeFile,
    points: CoordsFile,
}

impl Serialize for AnnulusInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (mode, points) = match (&self.mode, &self.exact) {
            (ArithmeticMode::ExactInteger { scale }, Some(f)) => (
                ModeFile::ExactInteger {
                    scale: format_rational(scale),
                    r1: Some(format_rational(&f.r1)),
                    r2: Some(format_rational(&f.r2)),
                },
                CoordsFile::Integer(f.cells.clone()),
            ),
            (ArithmeticMode::Float { tolerance }, _) => (
                ModeFile::Float {
                    tolerance: *tolerance,
                },
                CoordsFile::Float(self.points.iter().map(|p| p.coords().to_vec()).collect()),
            ),
            _ => return Err(serde::ser::Error::custom("inconsistent arithmetic mode")),
        };
        InstanceFile {
            dim: self.dim,
            r1: self.r1,
            r2: self.r2,
            mode,
            points,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnnulusInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = InstanceFile::deserialize(d)?;
        let built = match file.mode {
            ModeFile::Float { tolerance } => {
                let coords: Vec<Vec<f64>> = match file.points {
                    CoordsFile::Float(v) => v,
                    CoordsFile::Integer(v) => v
                        .into_iter()
                        .map(|c| c.into_iter().map(|k| k as f64).collect())
                        .collect(),
                };
                coords
                    .into_iter()
                    .map(Point::new)
                    .collect::<Result<Vec<_>>>()
                    .and_then(|pts| {
                        AnnulusInstance::float_with_tolerance(
                            file.dim, file.r1, file.r2, pts, tolerance,
                        )
                    })
            }
            ModeFile::ExactInteger { scale, r1, r2 } => {
                let cells = match file.points {
                    CoordsFile::Integer(v) => v,
                    CoordsFile::Float(_) => {
                        return Err(D::Error::custom(
                            "exact-integer instances need integer coordinates",
                        ))
                    }
                };
                let radius = |text: Option<String>, value: f64| match text {
                    Some(t) => parse_rational(&t),
                    None => rationalize(value),
                };
                parse_rational(&scale).and_then(|scale| {
                    let r1 = radius(r1, file.r1)?;
                    let r2 = radius(r2, file.r2)?;
                    AnnulusInstance::exact(file.dim, r1, r2, scale, cells)
                })
            }
        };
        built.map_err(D::Error::custom)
    }
}
