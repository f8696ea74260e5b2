//! Heuristic feasibility search for annulus embeddings, and numeric probes
//! of point configurations that cannot exist.
//!
//! Both minimise a squared-hinge penalty from random starts. A residual
//! below [`FEASIBILITY_TOLERANCE`] comes with a witness; a larger residual is
//! evidence only.

mod penalty;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use penalty::{Constraint, PenaltyModel, Requirement};

use crate::error::{invalid, Error, Result};
use crate::geometry::sampling::rng_for_stream;
use crate::geometry::{n_gamma_witness, Point};
use crate::graph::{build_graph, AdjacencyGraph, AnnulusInstance, BuildOptions};

pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MARGIN: f64 = 0.1;
pub const DEFAULT_MAX_VERTICES: usize = 100;
/// Weight of the separation constraints that carry the margin; they are
/// treated as (nearly) hard so the residual lands on the containment side.
pub const SEPARATION_WEIGHT: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedProblem {
    pub graph: AdjacencyGraph,
    pub d: usize,
    pub r1: f64,
    pub r2: f64,
    #[serde(default = "default_margin")]
    pub margin: f64,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

fn default_margin() -> f64 {
    DEFAULT_MARGIN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedResult {
    pub coords: Vec<Point>,
    /// Largest constraint violation at `coords`.
    pub residual: f64,
    /// Final residual of every restart, by restart index.
    pub restart_stats: Vec<f64>,
    /// For residuals under the feasibility tolerance: whether the induced
    /// annulus graph of `coords` reproduces the target.
    pub verified: Option<bool>,
}

fn run_restarts(
    model: &PenaltyModel,
    n: usize,
    spread: f64,
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    let dim = model.dim;
    let runs: Vec<(Vec<f64>, f64)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for_stream(seed, 100 + r as u64);
            let mut x: Vec<f64> = (0..n * dim)
                .map(|_| (rng.random::<f64>() - 0.5) * spread)
                .collect();
            minimize_staged(model, &mut x, max_iters);
            let res = model.residual(&x);
            (x, res)
        })
        .collect();
    let stats: Vec<f64> = runs.iter().map(|(_, r)| *r).collect();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.1.total_cmp(&b.1).then(ia.cmp(ib)))
        .map(|(_, run)| run.0.clone())
        .unwrap_or_default();
    (best, stats)
}

/// Minimises with the heavy weights raised tenfold per stage, so the soft
/// constraints can move before the stiff ones lock the configuration.
fn minimize_staged(model: &PenaltyModel, x: &mut [f64], max_iters: usize) {
    let top = model
        .constraints
        .iter()
        .map(|c| c.weight)
        .fold(1.0, f64::max);
    let stages = top.log10().ceil().max(0.0) as u32;
    let per_stage = max_iters / (stages as usize + 1);
    let mut staged = model.clone();
    for k in 0..stages {
        let cap = 10f64.powi(k as i32);
        for (c, orig) in staged.constraints.iter_mut().zip(&model.constraints) {
            c.weight = orig.weight.min(cap);
        }
        staged.minimize(x, per_stage);
    }
    model.minimize(x, max_iters - per_stage * stages as usize);
}

fn to_points(x: &[f64], dim: usize) -> Vec<Point> {
    x.chunks(dim).map(|c| Point::from_vec(c.to_vec())).collect()
}

/// The penalty whose zero set is the set of `(r1, r2)` annulus embeddings of
/// `graph` in `R^d`.
pub fn embedding_model(graph: &AdjacencyGraph, d: usize, r1: f64, r2: f64) -> PenaltyModel {
    let n = graph.n();
    let mut constraints = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut push = |requirement| {
                constraints.push(Constraint {
                    i,
                    j,
                    requirement,
                    weight: 1.0,
                })
            };
            if graph.has_edge(i, j) {
                if r1 > 0.0 {
                    push(Requirement::AtLeast(r1));
                }
                push(Requirement::AtMost(r2));
            } else {
                push(Requirement::Outside { lo: r1, hi: r2 });
            }
        }
    }
    PenaltyModel {
        dim: d,
        constraints,
        slack: (1e-4 * r2).min((r2 - r1) / 4.0),
    }
}

/// Multi-start search for an `(r1, r2)` annulus embedding of the graph.
pub fn embed_search(p: &EmbedProblem) -> Result<EmbedResult> {
    embed_search_with_budget(p, DEFAULT_MAX_VERTICES)
}

pub fn embed_search_with_budget(p: &EmbedProblem, max_vertices: usize) -> Result<EmbedResult> {
    let n = p.graph.n();
    if n > max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "embedding search on {n} vertices exceeds the limit of {max_vertices}"
        )));
    }
    if p.d == 0 {
        return Err(invalid("d", "must be positive"));
    }
    if !(p.r1 >= 0.0 && p.r2 > 0.0 && p.r2 >= p.r1 && p.r2.is_finite()) {
        return Err(invalid(
            "radii",
            format!("need 0 <= r1 <= r2, r2 > 0; got ({}, {})", p.r1, p.r2),
        ));
    }
    let model = embedding_model(&p.graph, p.d, p.r1, p.r2);
    let spread = p.r2 * (n.max(1) as f64).powf(1.0 / p.d as f64).max(1.0);
    let (best, stats) = run_restarts(&model, n, spread, p.restarts, p.max_iters, p.seed);
    let residual = model.residual(&best);
    let coords = to_points(&best, p.d);
    let verified = if residual < FEASIBILITY_TOLERANCE {
        let inst = AnnulusInstance::float(p.d, p.r1, p.r2, coords.clone())?;
        Some(build_graph(&inst, BuildOptions::default())? == p.graph)
    } else {
        None
    };
    Ok(EmbedResult {
        coords,
        residual,
        restart_stats: stats,
        verified,
    })
}

/// Configurations probed by [`forbidden_config_residual`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForbiddenKind {
    /// Two centres `a`, `b` at distance `>= 1 + margin` and `count` points in
    /// `B(a, 1) ∩ B(b, 1)` pairwise `>= 1 + margin` apart. Without an
    /// explicit count, the size of the far-apart witness in `B(0, gamma)`.
    ThreePoints {
        d: usize,
        count: Option<usize>,
        gamma: f64,
    },
    /// Two groups of `d + 1` points in `R^d`, each group pairwise
    /// `>= 1 + margin` apart, every cross pair at most `cross_limit` apart.
    BipartiteSphericity {
        d: usize,
        #[serde(default = "default_cross_limit")]
        cross_limit: f64,
    },
}

fn default_cross_limit() -> f64 {
    1.0
}

impl ForbiddenKind {
    pub fn three_points(d: usize, count: usize) -> Self {
        ForbiddenKind::ThreePoints {
            d,
            count: Some(count),
            gamma: 0.99,
        }
    }

    pub fn bipartite(d: usize) -> Self {
        ForbiddenKind::BipartiteSphericity {
            d,
            cross_limit: 1.0,
        }
    }

    fn dim(&self) -> usize {
        match self {
            ForbiddenKind::ThreePoints { d, .. } | ForbiddenKind::BipartiteSphericity { d, .. } => {
                *d
            }
        }
    }
}

/// Builds the penalty model of a forbidden configuration; returns it with
/// the number of points.
pub fn forbidden_model(kind: &ForbiddenKind, margin: f64) -> Result<(PenaltyModel, usize)> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(invalid(
            "margin",
            "must be positive: with zero margin the violation infimum is 0 at the boundary",
        ));
    }
    let sep = 1.0 + margin;
    let d = kind.dim();
    if d == 0 {
        return Err(invalid("d", "must be positive"));
    }
    let mut constraints = Vec::new();
    let hard = |i, j| Constraint {
        i,
        j,
        requirement: Requirement::AtLeast(sep),
        weight: SEPARATION_WEIGHT,
    };
    let soft = |i, j, bound| Constraint {
        i,
        j,
        requirement: Requirement::AtMost(bound),
        weight: 1.0,
    };
    let n = match kind {
        ForbiddenKind::ThreePoints { count, gamma, .. } => {
            let count = match count {
                Some(c) => *c,
                None => n_gamma_witness(d.max(2), *gamma)?.len(),
            };
            // 0 = a, 1 = b
            constraints.push(hard(0, 1));
            for i in 2..count + 2 {
                constraints.push(soft(i, 0, 1.0));
                constraints.push(soft(i, 1, 1.0));
                for j in i + 1..count + 2 {
                    constraints.push(hard(i, j));
                }
            }
            count + 2
        }
        ForbiddenKind::BipartiteSphericity { cross_limit, .. } => {
            if !(*cross_limit > 0.0) {
                return Err(invalid("cross_limit", "must be positive"));
            }
            let part = d + 1;
            for i in 0..2 * part {
                for j in i + 1..2 * part {
                    if (i < part) == (j < part) {
                        constraints.push(hard(i, j));
                    } else {
                        constraints.push(soft(i, j, *cross_limit));
                    }
                }
            }
            2 * part
        }
    };
    Ok((
        PenaltyModel {
            dim: d,
            constraints,
            slack: 1e-4,
        },
        n,
    ))
}

/// Minimised residual of a forbidden configuration over `restarts` random
/// starts.
pub fn forbidden_config_residual(
    kind: &ForbiddenKind,
    margin: f64,
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> Result<EmbedResult> {
    let (model, n) = forbidden_model(kind, margin)?;
    let (best, stats) = run_restarts(&model, n, 3.0, restarts, max_iters, seed);
    Ok(EmbedResult {
        residual: model.residual(&best),
        coords: to_points(&best, model.dim),
        restart_stats: stats,
        verified: None,
    })
}
