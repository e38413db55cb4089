//! Domains, dyadic grid functions, model solutions, and residual oracles.

pub mod geometry;
pub mod gridfn;
pub mod models;

pub use geometry::{ball_family, distance_to_boundary, lshape_vertices, BBox, Ball, DomainSpec};
pub use gridfn::{GridFunction, Lp};
pub use models::{
    corner_singularity, eval_corner_singularity, eval_flat_singularity, eval_smooth_bump,
    flat_singularity, laplacian_residual, p_laplacian_residual, smooth_bump,
};
