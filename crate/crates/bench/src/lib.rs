//! Fixed workloads shared by the criterion benches.

use annulus_core::{build_graph, gen_uniform_box, AdjacencyGraph, AnnulusInstance, BuildOptions};

/// `n` uniform points in a cube sized for about `density` points per unit
/// volume, radii `(r1, 1)`.
pub fn uniform_instance(d: usize, n: usize, r1: f64, density: f64, seed: u64) -> AnnulusInstance {
    let side = (n as f64 / density).powf(1.0 / d as f64);
    gen_uniform_box(d, n, r1, 1.0, side, seed).expect("valid workload")
}

pub fn graph(inst: &AnnulusInstance) -> AdjacencyGraph {
    build_graph(inst, BuildOptions::default()).expect("float instance")
}
