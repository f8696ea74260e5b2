//! Exact chromatic number: iterative deepening on `k` between the clique
//! lower bound and a DSATUR upper bound, with DSATUR backtracking for each
//! `k`-colourability test.

use serde::{Deserialize, Serialize};

use super::adjacency::AdjacencyGraph;
use super::clique::{max_clique, Budget};
use crate::error::{Error, Result};

/// Chromatic number with a proper colouring using colours `1..=value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringResult {
    pub value: usize,
    pub witness: Vec<usize>,
}

/// Whether no edge is monochromatic. Colours are positive integers, one
/// per vertex.
pub fn is_proper(g: &AdjacencyGraph, colors: &[usize]) -> Result<bool> {
    if colors.len() != g.n() {
        return Err(Error::Malformed(format!(
            "colouring covers {} of {} vertices",
            colors.len(),
            g.n()
        )));
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(Error::Malformed(format!("vertex {v} has no colour")));
    }
    Ok(g.edges().iter().all(|&(u, v)| colors[u] != colors[v]))
}

/// Colour state shared by the greedy and the exact DSATUR passes.
struct Dsatur<'a> {
    g: &'a AdjacencyGraph,
    /// 0 = uncoloured, otherwise colour index + 1
    colour: Vec<usize>,
    /// `forbid[v][c]`: neighbours of `v` currently using colour `c`
    forbid: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a AdjacencyGraph, colours: usize) -> Self {
        let n = g.n();
        Self {
            g,
            colour: vec![0; n],
            forbid: vec![vec![0; colours]; n],
            saturation: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c + 1;
        for u in self.g.neighbors(v) {
            if self.forbid[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.forbid[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colour[v] - 1;
        self.colour[v] = 0;
        for u in self.g.neighbors(v) {
            self.forbid[u][c] -= 1;
            if self.forbid[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    /// Uncoloured vertex of maximum saturation, then degree, then lowest
    /// index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colour[v] == 0)
            .max_by(|&a, &b| {
                self.saturation[a]
                    .cmp(&self.saturation[b])
                    .then(self.g.degree(a).cmp(&self.g.degree(b)))
                    .then(b.cmp(&a))
            })
    }
}

/// DSATUR greedy colouring; colours are `1..`.
pub fn dsatur_coloring(g: &AdjacencyGraph) -> Vec<usize> {
    let n = g.n();
    let mut state = Dsatur::new(g, n.max(1));
    while let Some(v) = state.pick() {
        let c = (0..n).find(|&c| state.forbid[v][c] == 0).unwrap_or(0);
        state.assign(v, c);
    }
    state.colour
}

struct Exact<'a> {
    state: Dsatur<'a>,
    k: usize,
    used: usize,
    nodes: u64,
    max_nodes: u64,
}

impl Exact<'_> {
    fn search(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "colouring search exceeded {} nodes",
                self.max_nodes
            )));
        }
        let Some(v) = self.state.pick() else {
            return Ok(true);
        };
        if self.state.saturation[v] >= self.k {
            return Ok(false);
        }
        // a fresh colour is interchangeable with every other unused one
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.state.forbid[v][c] != 0 {
                continue;
            }
            let previous = self.used;
            self.used = self.used.max(c + 1);
            self.state.assign(v, c);
            if self.search()? {
                return Ok(true);
            }
            self.state.unassign(v);
            self.used = previous;
        }
        Ok(false)
    }
}

fn k_colouring(
    g: &AdjacencyGraph,
    k: usize,
    clique: &[usize],
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<Option<Vec<usize>>> {
    let mut exact = Exact {
        state: Dsatur::new(g, k),
        k,
        used: clique.len(),
        nodes: *nodes,
        max_nodes,
    };
    for (c, &v) in clique.iter().enumerate() {
        exact.state.assign(v, c);
    }
    let found = exact.search()?;
    *nodes = exact.nodes;
    Ok(found.then(|| exact.state.colour.clone()))
}

/// Exact chromatic number `chi(g)` with a witness colouring.
pub fn chromatic_number(g: &AdjacencyGraph, budget: Budget) -> Result<ColoringResult> {
    let n = g.n();
    budget.check_size(n, "chromatic number")?;
    if n == 0 {
        return Ok(ColoringResult {
            value: 0,
            witness: Vec::new(),
        });
    }
    let clique = max_clique(g, budget)?;
    let greedy = dsatur_coloring(g);
    let upper = greedy.iter().copied().max().unwrap_or(1);
    let mut nodes = 0;
    for k in clique.value..upper {
        if let Some(witness) = k_colouring(g, k, &clique.witness, &mut nodes, budget.max_nodes)? {
            return Ok(ColoringResult { value: k, witness });
        }
    }
    Ok(ColoringResult {
        value: upper,
        witness: greedy,
    })
}
