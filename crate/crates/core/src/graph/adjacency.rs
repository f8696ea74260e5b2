use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bitset::BitSet;
use crate::error::{Error, Result};

/// A simple undirected graph: symmetric, irreflexive adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    rows: Vec<BitSet>,
}

impl AdjacencyGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.add_edge(u, (u + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!(
                    "edge ({u}, {v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Panics on out-of-range or equal endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.rows[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Whether some three vertices are pairwise adjacent.
    pub fn has_triangle(&self) -> bool {
        (0..self.n()).any(|u| {
            self.rows[u].iter().filter(|&v| v > u).any(|v| {
                self.rows[u]
                    .intersection(&self.rows[v])
                    .iter()
                    .any(|w| w > v)
            })
        })
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for AdjacencyGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdjacencyGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(d)?;
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        AdjacencyGraph::from_edges(file.n, &edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_zero_based() {
        let g = AdjacencyGraph::from_edges(4, &[(3, 1), (2, 0), (0, 1)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,1],[0,2],[1,3]]}"#);
        let back: AdjacencyGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn malformed_edges_rejected() {
        assert!(AdjacencyGraph::from_edges(2, &[(0, 2)]).is_err());
        assert!(AdjacencyGraph::from_edges(2, &[(1, 1)]).is_err());
        assert!(serde_json::from_str::<AdjacencyGraph>(r#"{"n":1,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn complement_and_triangles() {
        let c5 = AdjacencyGraph::cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert!(!c5.has_triangle());
        assert_eq!(c5.complement(), AdjacencyGraph::cycle(5).complement());
        assert_eq!(c5.complement().edge_count(), 5);
        assert!(AdjacencyGraph::complete(3).has_triangle());
    }
}
