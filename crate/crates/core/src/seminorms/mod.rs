//! Direct smoothness functionals computed from grid samples: Hoelder and
//! locally weighted Hoelder semi-norms, moduli of smoothness, Besov
//! semi-norms by dyadic moduli, fractional Sobolev (Gagliardo) semi-norms,
//! and Whitney local best-polynomial-approximation errors.
//!
//! These are deliberately wavelet-free so they can serve as independent
//! oracles for the wavelet-side quasi-norms.

mod hoelder;
mod modulus;
mod sobolev;
mod whitney;

pub use hoelder::{hoelder_seminorm, hoelder_seminorm_seeded, weighted_hoelder_seminorm};
pub use modulus::{besov_seminorm_modulus, modulus_of_smoothness};
pub use sobolev::sobolev_fractional_seminorm;
pub use whitney::whitney_error;

use serde::{Deserialize, Serialize};

use crate::domain::Ball;
use crate::error::{Error, Result};

/// Fixed default seed for Hoelder pair subsampling; recorded in CLI
/// manifests so reported suprema are reproducible.
pub const DEFAULT_PAIR_SEED: u64 = 0x5eed_9a17;

/// Parameters of a (possibly weighted) Hoelder semi-norm of order
/// `ell + alpha`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HolderParams {
    /// Integer derivative order; 0 and 1 are supported.
    pub ell: u32,
    /// Hoelder exponent in (0, 1].
    pub alpha: f64,
    /// Weight exponent, required by the locally weighted variant only.
    pub gamma: Option<f64>,
}

impl HolderParams {
    pub fn new(ell: u32, alpha: f64) -> Self {
        HolderParams { ell, alpha, gamma: None }
    }

    pub fn weighted(ell: u32, alpha: f64, gamma: f64) -> Self {
        HolderParams { ell, alpha, gamma: Some(gamma) }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParam(format!(
                "Hoelder exponent must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.ell > 1 {
            return Err(Error::InvalidParam(format!(
                "derivative order {} unsupported: finite-difference fields exist for orders 0 and 1",
                self.ell
            )));
        }
        if let Some(g) = self.gamma {
            if !(g > 0.0) {
                return Err(Error::InvalidParam(format!("weight exponent must be positive, got {g}")));
            }
        }
        Ok(())
    }
}

/// A compact evaluation region: a closed ball or an axis-aligned cube.
/// For 1-D grids only the first coordinate is used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Region {
    Ball(Ball),
    Cube { origin: [f64; 2], side: f64 },
}

impl Region {
    pub fn cube(origin: [f64; 2], side: f64) -> Self {
        Region::Cube { origin, side }
    }

    /// Extent across the region (diameter or side), used for the resolution
    /// precondition.
    pub fn extent(&self) -> f64 {
        match self {
            Region::Ball(b) => 2.0 * b.radius,
            Region::Cube { side, .. } => *side,
        }
    }

    pub fn contains(&self, x: [f64; 2], d: usize) -> bool {
        match self {
            Region::Ball(b) => {
                let mut r2 = (x[0] - b.center[0]).powi(2);
                if d == 2 {
                    r2 += (x[1] - b.center[1]).powi(2);
                }
                r2 <= b.radius * b.radius * (1.0 + 1e-12)
            }
            Region::Cube { origin, side } => {
                (0..d).all(|i| x[i] >= origin[i] - 1e-12 && x[i] <= origin[i] + side + 1e-12)
            }
        }
    }
}
