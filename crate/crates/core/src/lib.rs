//! Annulus graphs: graphs on point sets in `R^d` whose edges join the pairs
//! at distance in `[r1, r2]`.
//!
//! The crate builds such graphs from embeddings ([`graph`]), colours them
//! with the sweep-hyperplane algorithm ([`sweep`]), generates the standard
//! instance families ([`generators`]), evaluates the closed-form chi/omega
//! bounds ([`bounds`]) and probes embeddability numerically ([`probe`]).
//! Exact clique, chromatic and independence numbers for small graphs serve
//! as oracles throughout.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod probe;
pub mod rational;
pub mod sweep;

pub use bounds::{
    analysis_function, bound_report, clique_volume_bound, kl_exponent, ratio_exponent,
    sweep_chi_bound, BoundReport, SweepBound,
};
pub use error::{Error, Result};
pub use generators::{
    gen_cycle_1d, gen_easy_lemma_instance, gen_lattice, gen_sphere_net, gen_uniform_box,
    LatticeSpec, NetMethod, SphereNetSpec,
};
pub use geometry::{
    cap_fraction, covering_number_witness, dist, greedy_ball_packing, greedy_spherical_code,
    n_gamma_witness, spherical_distance, CoveringWitness, PackingWitness, Point, SphericalCode,
};
pub use graph::{
    build_graph, chromatic_number, is_proper, max_clique, max_independent_set, AdjacencyGraph,
    AnnulusInstance, ArithmeticMode, Budget, BuildOptions, CliqueResult, ColoringResult,
    IndepResult,
};
pub use probe::{
    embed_search, forbidden_config_residual, EmbedProblem, EmbedResult, ForbiddenKind,
};
pub use rational::Rational;
pub use sweep::{
    colors_in_ball, sweep_color, sweep_color_on, verify_token_invariants, SweepColoring,
    TokenReport,
};
