//! Numerical toolkit for wavelet-based Besov regularity analysis of
//! p-Poisson model solutions on plane domains.
//!
//! The crate provides dyadic grid functions on reference domains, periodized
//! Daubechies wavelet transforms with boundary-band classification,
//! Hoelder / modulus-of-smoothness / Whitney semi-norms, wavelet quasi-norms
//! on the adaptivity scale, closed-form regularity bound tables, and
//! best-n-term approximation diagnostics.

pub mod approx;
pub mod bounds;
pub mod domain;
pub mod error;
pub mod jsonio;
pub mod quasinorm;
pub mod seminorms;
pub mod suites;
mod util;
pub mod wavelet;

pub use domain::{
    ball_family, corner_singularity, distance_to_boundary, flat_singularity, smooth_bump, BBox,
    Ball, DomainSpec, GridFunction, Lp,
};
pub use error::{Error, Result};

/// Library version, echoed into every output manifest.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
