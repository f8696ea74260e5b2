//! Exact maximum clique by branch and bound with a greedy colouring bound.

use serde::{Deserialize, Serialize};

use super::adjacency::AdjacencyGraph;
use super::bitset::BitSet;
use crate::error::{Error, Result};

/// Size limits for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    /// Branch-and-bound nodes before giving up.
    pub max_nodes: u64,
}

impl Budget {
    pub const CLIQUE: Budget = Budget {
        max_vertices: 200,
        max_nodes: 50_000_000,
    };
    pub const CHROMATIC: Budget = Budget {
        max_vertices: 80,
        max_nodes: 50_000_000,
    };

    pub fn with_max_vertices(self, max_vertices: usize) -> Self {
        Budget {
            max_vertices,
            ..self
        }
    }

    pub(crate) fn check_size(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{what} on {n} vertices exceeds the limit of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

/// Maximum clique size with a witness (vertices in ascending order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub value: usize,
    pub witness: Vec<usize>,
}

/// Maximum independent set size with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndepResult {
    pub value: usize,
    pub witness: Vec<usize>,
}

struct CliqueSearch {
    rows: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl CliqueSearch {
    fn expand(&mut self, mut candidates: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "clique search exceeded {} nodes",
                self.max_nodes
            )));
        }
        // greedy colour classes give the bound
        let mut order = Vec::with_capacity(candidates.len());
        let mut bound = Vec::with_capacity(candidates.len());
        let mut uncoloured = candidates.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.remove(v);
                class.difference_with(&self.rows[v]);
                uncoloured.remove(v);
                order.push(v);
                bound.push(colour);
            }
        }
        for i in (0..order.len()).rev() {
            if self.current.len() + bound[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            self.current.push(v);
            let next = candidates.intersection(&self.rows[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            candidates.remove(v);
        }
        Ok(())
    }
}

/// Exact clique number `omega(g)`.
///
/// Vertices are relabelled by non-increasing degree (ties by index) and
/// the search is fully deterministic.
pub fn max_clique(g: &AdjacencyGraph, budget: Budget) -> Result<CliqueResult> {
    let n = g.n();
    budget.check_size(n, "maximum clique")?;
    if n == 0 {
        return Ok(CliqueResult {
            value: 0,
            witness: Vec::new(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let rows: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(n);
            for u in g.neighbors(v) {
                row.insert(position[u]);
            }
            row
        })
        .collect();
    let mut search = CliqueSearch {
        rows,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    search.expand(BitSet::full(n))?;
    let mut witness: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    Ok(CliqueResult {
        value: witness.len(),
        witness,
    })
}

/// Exact independence number, as the clique number of the complement.
pub fn max_independent_set(g: &AdjacencyGraph, budget: Budget) -> Result<IndepResult> {
    budget.check_size(g.n(), "maximum independent set")?;
    let c = max_clique(&g.complement(), budget)?;
    Ok(IndepResult {
        value: c.value,
        witness: c.witness,
    })
}
