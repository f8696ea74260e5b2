//! Squared-hinge penalties on pairwise distances.

/// A requirement on the distance between points `i` and `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Requirement {
    /// `|p_i - p_j| >= bound`
    AtLeast(f64),
    /// `|p_i - p_j| <= bound`
    AtMost(f64),
    /// `|p_i - p_j| < lo` or `|p_i - p_j| > hi`; with `lo == 0` only the
    /// upper side is available.
    Outside { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub i: usize,
    pub j: usize,
    pub requirement: Requirement,
    pub weight: f64,
}

impl Constraint {
    /// Signed-free violation magnitude at distance `dist`, with every bound
    /// tightened by `slack`. Returns the violation and `d violation / d dist`.
    fn hinge(&self, dist: f64, slack: f64) -> (f64, f64) {
        match self.requirement {
            Requirement::AtLeast(b) => {
                let v = b + slack - dist;
                if v > 0.0 {
                    (v, -1.0)
                } else {
                    (0.0, 0.0)
                }
            }
            Requirement::AtMost(b) => {
                let v = dist - (b - slack);
                if v > 0.0 {
                    (v, 1.0)
                } else {
                    (0.0, 0.0)
                }
            }
            Requirement::Outside { lo, hi } => {
                let up = hi + slack - dist;
                if lo > 0.0 {
                    let down = dist - (lo - slack);
                    if down <= 0.0 || up <= 0.0 {
                        (0.0, 0.0)
                    } else if down < up {
                        (down, 1.0)
                    } else {
                        (up, -1.0)
                    }
                } else if up > 0.0 {
                    (up, -1.0)
                } else {
                    (0.0, 0.0)
                }
            }
        }
    }
}

/// Weighted sum of squared hinges over a flat coordinate vector
/// (`n` points of dimension `dim`, row-major).
#[derive(Debug, Clone)]
pub struct PenaltyModel {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
    /// Amount by which every bound is tightened during optimisation.
    pub slack: f64,
}

fn pair_distance(x: &[f64], dim: usize, i: usize, j: usize) -> f64 {
    let (a, b) = (&x[i * dim..(i + 1) * dim], &x[j * dim..(j + 1) * dim]);
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

impl PenaltyModel {
    pub fn value(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let (h, _) = c.hinge(pair_distance(x, self.dim, c.i, c.j), self.slack);
                c.weight * h * h
            })
            .sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let dim = self.dim;
        let mut g = vec![0.0; x.len()];
        for c in &self.constraints {
            let dist = pair_distance(x, dim, c.i, c.j);
            let (h, dh) = c.hinge(dist, self.slack);
            if h == 0.0 || dist == 0.0 {
                continue;
            }
            let scale = 2.0 * c.weight * h * dh / dist;
            for k in 0..dim {
                let diff = x[c.i * dim + k] - x[c.j * dim + k];
                g[c.i * dim + k] += scale * diff;
                g[c.j * dim + k] -= scale * diff;
            }
        }
        g
    }

    /// Largest unweighted violation of the original (untightened) bounds.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.hinge(pair_distance(x, self.dim, c.i, c.j), 0.0).0)
            .fold(0.0, f64::max)
    }

    /// Distance from each constraint's kink points; used to keep finite
    /// difference checks away from non-smooth spots.
    pub fn kink_clearance(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let d = pair_distance(x, self.dim, c.i, c.j);
                let s = self.slack;
                match c.requirement {
                    Requirement::AtLeast(b) => (d - b - s).abs(),
                    Requirement::AtMost(b) => (d - b + s).abs(),
                    Requirement::Outside { lo, hi } => {
                        let mid = 0.5 * (lo + hi);
                        let m = (d - hi - s).abs().min(d.abs());
                        if lo > 0.0 {
                            m.min((d - lo + s).abs()).min((d - mid).abs())
                        } else {
                            m
                        }
                    }
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Gradient descent with Armijo backtracking. Stops when the penalty is
    /// exactly zero, the step collapses, or `max_iters` is reached.
    pub fn minimize(&self, x: &mut [f64], max_iters: usize) -> f64 {
        let mut f = self.value(x);
        let mut step = 1.0;
        let mut trial = vec![0.0; x.len()];
        for _ in 0..max_iters {
            if f == 0.0 {
                break;
            }
            let g = self.gradient(x);
            let gnorm_sq: f64 = g.iter().map(|v| v * v).sum();
            if gnorm_sq == 0.0 {
                break;
            }
            let mut accepted = false;
            while step > 1e-18 {
                for ((t, xi), gi) in trial.iter_mut().zip(x.iter()).zip(&g) {
                    *t = xi - step * gi;
                }
                let ft = self.value(&trial);
                if ft <= f - 1e-4 * step * gnorm_sq {
                    x.copy_from_slice(&trial);
                    f = ft;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
            step = (step * 2.0).min(1e6);
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sampling::rng_from_seed;
    use rand::Rng;

    fn model() -> PenaltyModel {
        let mut constraints = Vec::new();
        let reqs = [
            Requirement::AtLeast(1.1),
            Requirement::AtMost(1.0),
            Requirement::Outside { lo: 1.0, hi: 2.0 },
            Requirement::Outside { lo: 0.0, hi: 1.5 },
        ];
        for i in 0..5 {
            for j in i + 1..5 {
                constraints.push(Constraint {
                    i,
                    j,
                    requirement: reqs[(i + j) % 4],
                    weight: if (i + j) % 2 == 0 { 1.0 } else { 50.0 },
                });
            }
        }
        PenaltyModel {
            dim: 2,
            constraints,
            slack: 1e-3,
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let m = model();
        let mut rng = rng_from_seed(4);
        let mut checked = 0;
        while checked < 50 {
            let x: Vec<f64> = (0..10).map(|_| rng.random::<f64>() * 3.0 - 1.5).collect();
            if m.kink_clearance(&x) < 1e-3 {
                continue;
            }
            let g = m.gradient(&x);
            let h = 1e-6;
            let mut fd = vec![0.0; x.len()];
            for k in 0..x.len() {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                fd[k] = (m.value(&xp) - m.value(&xm)) / (2.0 * h);
            }
            let err: f64 = g
                .iter()
                .zip(&fd)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            let norm: f64 = g.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm > 1e-8 {
                assert!(err / norm < 1e-6, "relative error {}", err / norm);
            }
            checked += 1;
        }
    }

    #[test]
    fn residual_ignores_slack() {
        let m = PenaltyModel {
            dim: 1,
            constraints: vec![Constraint {
                i: 0,
                j: 1,
                requirement: Requirement::AtLeast(1.0),
                weight: 1.0,
            }],
            slack: 0.1,
        };
        let x = [0.0, 1.05];
        assert_eq!(m.residual(&x), 0.0);
        assert!(m.value(&x) > 0.0);
        let mut y = x;
        assert_eq!(m.minimize(&mut y, 100), 0.0);
        assert!(y[1] - y[0] >= 1.1);
    }
}
