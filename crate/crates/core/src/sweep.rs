//! Sweep-hyperplane colouring of annulus graphs.
//!
//! A hyperplane orthogonal to the last axis moves upwards. When it meets an
//! uncoloured vertex `v`, the uncoloured vertices within `r1 / 2` of `v` form
//! a batch that receives the smallest colour unused by every coloured
//! neighbour of every batch member; `v` is the token of the batch. With
//! `r1 = 0` every batch is a single vertex and this is the classical
//! unit-disc sweep.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, AdjacencyGraph, AnnulusInstance, BuildOptions};

/// Output of [`sweep_color`]. Colours are `1..`; `tokens[u]` is the vertex
/// whose batch coloured `u`; `order` lists vertices in sweep order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepColoring {
    pub colors: Vec<usize>,
    pub tokens: Vec<usize>,
    pub order: Vec<usize>,
}

impl SweepColoring {
    pub fn max_color(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn distinct_tokens(&self) -> Vec<usize> {
        self.tokens
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Colours `inst` by the sweep. Batch members are never adjacent to each
/// other: a candidate adjacent to a vertex already in the batch (possible
/// only at distance exactly `r1`) is left for a later batch.
pub fn sweep_color(inst: &AnnulusInstance) -> SweepColoring {
    let g = build_graph(inst, BuildOptions::default()).expect("lenient build cannot fail");
    sweep_color_on(inst, &g)
}

/// [`sweep_color`] with a precomputed graph of `inst`.
pub fn sweep_color_on(inst: &AnnulusInstance, g: &AdjacencyGraph) -> SweepColoring {
    let n = inst.n();
    let order = inst.sweep_order();
    let mut colors = vec![0usize; n];
    let mut tokens = vec![usize::MAX; n];
    let mut forbidden: Vec<bool> = Vec::new();

    for (pos, &v) in order.iter().enumerate() {
        if colors[v] != 0 {
            continue;
        }
        let mut batch = vec![v];
        // everything before `pos` is already coloured
        for &u in &order[pos + 1..] {
            if colors[u] == 0
                && inst.within_half_inner(v, u)
                && !batch.iter().any(|&b| g.has_edge(b, u))
            {
                batch.push(u);
            }
        }
        forbidden.clear();
        forbidden.resize(n + 2, false);
        for &b in &batch {
            for w in g.neighbors(b) {
                if colors[w] != 0 {
                    forbidden[colors[w]] = true;
                }
            }
        }
        let colour = (1..)
            .find(|&c| !forbidden[c])
            .expect("a free colour exists");
        for &b in &batch {
            colors[b] = colour;
            tokens[b] = v;
        }
    }
    SweepColoring {
        colors,
        tokens,
        order,
    }
}

/// A broken invariant of a sweep colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TokenViolation {
    Shape { reason: String },
    Improper { u: usize, v: usize },
    TokenTooFar { vertex: usize, token: usize },
    ColorMismatch { vertex: usize, token: usize },
    TokenNotOwnToken { token: usize },
    TokenAfterMember { vertex: usize, token: usize },
    TokensTooClose { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenReport {
    pub ok: bool,
    pub violations: Vec<TokenViolation>,
}

/// Checks every sweep-colouring invariant: properness, `|u - t(u)| <= r1/2`,
/// equal colours within a batch, tokens first in sweep order, and distinct
/// tokens more than `r1/2` apart (unless the later token was held out of
/// the earlier batch for being adjacent to one of its members).
pub fn verify_token_invariants(inst: &AnnulusInstance, col: &SweepColoring) -> TokenReport {
    let n = inst.n();
    let mut violations = Vec::new();
    let shape = |reason: &str| TokenReport {
        ok: false,
        violations: vec![TokenViolation::Shape {
            reason: reason.to_string(),
        }],
    };
    if col.colors.len() != n || col.tokens.len() != n || col.order.len() != n {
        return shape("colouring does not cover every vertex");
    }
    if col.tokens.iter().any(|&t| t >= n) || col.colors.contains(&0) {
        return shape("token out of range or missing colour");
    }
    if col.order != inst.sweep_order() {
        return shape("order is not the sweep order of the instance");
    }
    let g = build_graph(inst, BuildOptions::default()).expect("lenient build cannot fail");
    for (u, v) in g.edges() {
        if col.colors[u] == col.colors[v] {
            violations.push(TokenViolation::Improper { u, v });
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in col.order.iter().enumerate() {
        position[v] = i;
    }
    for u in 0..n {
        let t = col.tokens[u];
        if t == u {
            continue;
        }
        if !inst.within_half_inner(u, t) {
            violations.push(TokenViolation::TokenTooFar {
                vertex: u,
                token: t,
            });
        }
        if col.colors[u] != col.colors[t] {
            violations.push(TokenViolation::ColorMismatch {
                vertex: u,
                token: t,
            });
        }
        if position[t] > position[u] {
            violations.push(TokenViolation::TokenAfterMember {
                vertex: u,
                token: t,
            });
        }
    }
    let tokens = col.distinct_tokens();
    for &t in &tokens {
        if col.tokens[t] != t {
            violations.push(TokenViolation::TokenNotOwnToken { token: t });
        }
    }
    let mut by_sweep = tokens.clone();
    by_sweep.sort_by_key(|&t| position[t]);
    for (i, &first) in by_sweep.iter().enumerate() {
        for &second in &by_sweep[i + 1..] {
            if inst.within_half_inner(first, second) {
                let held_out = (0..n)
                    .filter(|&m| col.tokens[m] == first)
                    .any(|m| g.has_edge(m, second));
                if !held_out {
                    violations.push(TokenViolation::TokensTooClose { first, second });
                }
            }
        }
    }
    TokenReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Number of distinct colours among the vertices within `radius` of
/// vertex `v` (closed ball).
pub fn colors_in_ball(
    inst: &AnnulusInstance,
    col: &SweepColoring,
    v: usize,
    radius: f64,
) -> Result<usize> {
    if v >= inst.n() {
        return Err(Error::InvalidParameter {
            name: "v",
            reason: format!("vertex {v} out of range for n={}", inst.n()),
        });
    }
    if col.colors.len() != inst.n() {
        return Err(Error::Malformed("colouring does not match instance".into()));
    }
    let reach = radius + inst.tolerance() + 1e-12 * radius.abs().max(1.0);
    let colours: BTreeSet<usize> = (0..inst.n())
        .filter(|&u| u == v || inst.distance(u, v) <= reach)
        .map(|u| col.colors[u])
        .collect();
    Ok(colours.len())
}
