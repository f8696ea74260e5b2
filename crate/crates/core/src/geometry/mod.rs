//! Euclidean and spherical primitives, cap measure, and greedy packing and
//! covering witnesses.

mod cap;
mod covering;
mod packing;
mod point;
pub mod sampling;

pub use cap::{
    adaptive_simpson, cap_fraction, log_cap_fraction, sphere_area, QUADRATURE_TOLERANCE,
};
pub use covering::{
    covering_number_witness, covering_number_witness_with, CoveringWitness, DEFAULT_PROBES,
};
pub use packing::{
    greedy_ball_packing, greedy_spherical_code, n_gamma_witness, PackingWitness, SphericalCode,
    ANGLE_TOLERANCE, EXPLICIT_RADIUS, EXPLICIT_X,
};
pub use point::{dist, spherical_distance, Point, UNIT_TOLERANCE};

pub(crate) use point::dist_sq_raw;
