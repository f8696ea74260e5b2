//! Annulus graphs: instances, adjacency, and exact solvers for the clique,
//! chromatic and independence numbers on small graphs.

mod adjacency;
mod bitset;
mod build;
mod clique;
mod coloring;
mod instance;

pub use adjacency::AdjacencyGraph;
pub use bitset::BitSet;
pub use build::{build_graph, BuildOptions};
pub use clique::{max_clique, max_independent_set, Budget, CliqueResult, IndepResult};
pub use coloring::{chromatic_number, dsatur_coloring, is_proper, ColoringResult};
pub use instance::{AnnulusInstance, ArithmeticMode, DEFAULT_TOLERANCE};
