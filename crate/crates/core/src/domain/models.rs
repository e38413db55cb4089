//! Closed-form model solutions and finite-difference residual oracles.

use std::f64::consts::PI;

use crate::domain::geometry::{distance_to_boundary, Ball, DomainSpec};
use crate::domain::gridfn::GridFunction;
use crate::error::{Error, Result};

/// Value of the flat-singularity model at `x`: `c_p * |x_1|^{p/(p-1)}` with
/// `c_p = (p-1)/p`, the constant that makes `div(|grad u|^{p-2} grad u) = 1`
/// exactly (checked by the residual oracle in the test suite).
pub fn eval_flat_singularity(p: f64, x: [f64; 2]) -> f64 {
    let kappa = p / (p - 1.0);
    (p - 1.0) / p * x[0].abs().powf(kappa)
}

/// Flat-singularity model sampled on a grid: even in `x_1`, constant in
/// `x_2`, with a derivative singularity along the line `x_1 = 0`.
pub fn flat_singularity(p: f64, domain: &DomainSpec, level: u32) -> Result<GridFunction> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParam(format!("flat_singularity needs p > 1, got {p}")));
    }
    Ok(GridFunction::sample(domain, level, |x| eval_flat_singularity(p, x)))
}

/// Value of the harmonic corner singularity `r^{pi/omega} sin(pi*theta/omega)`
/// at `x` (angle normalized to [0, 2*pi)); zero outside the sector closure.
pub fn eval_corner_singularity(omega: f64, x: [f64; 2]) -> f64 {
    let r = x[0].hypot(x[1]);
    if r == 0.0 {
        return 0.0;
    }
    let mut theta = x[1].atan2(x[0]);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    r.powf(PI / omega) * (PI * theta / omega).sin()
}

/// Harmonic corner singularity on the circular sector of radius 1 and
/// opening `omega`; vanishes on the two straight edges.
pub fn corner_singularity(omega: f64, level: u32) -> Result<GridFunction> {
    if !(omega > 0.0 && omega < 2.0 * PI) {
        return Err(Error::InvalidParam(format!(
            "corner_singularity needs omega in (0, 2*pi), got {omega}"
        )));
    }
    let domain = DomainSpec::CircularSector { radius: 1.0, omega };
    Ok(GridFunction::sample(&domain, level, |x| eval_corner_singularity(omega, x)))
}

/// Value of the standard compactly supported bump on the given ball.
pub fn eval_smooth_bump(support: &Ball, x: [f64; 2]) -> f64 {
    let dx = (x[0] - support.center[0]) / support.radius;
    let dy = (x[1] - support.center[1]) / support.radius;
    let rho2 = dx * dx + dy * dy;
    if rho2 < 1.0 {
        (-1.0 / (1.0 - rho2)).exp()
    } else {
        0.0
    }
}

/// C-infinity bump supported on `support`, which must lie inside the domain.
/// Its value at the center is `exp(-1)`.
pub fn smooth_bump(domain: &DomainSpec, level: u32, support: Ball) -> Result<GridFunction> {
    let sd = distance_to_boundary(domain, support.center);
    if sd < support.radius {
        return Err(Error::InvalidParam(format!(
            "bump support ball (center {:?}, radius {}) is not inside the domain (signed distance {sd})",
            support.center, support.radius
        )));
    }
    Ok(GridFunction::sample(domain, level, |x| eval_smooth_bump(&support, x)))
}

/// Pointwise residual of the discrete p-Laplacian `div(|grad u|^{p-2} grad u)`
/// with face-centered fluxes. Returns the residual grid and a validity mask
/// (true where the full 3x3 stencil lies inside the domain mask).
pub fn p_laplacian_residual(g: &GridFunction, p: f64) -> Result<(Vec<f64>, Vec<bool>)> {
    if g.d != 2 {
        return Err(Error::InvalidParam("p_laplacian_residual needs a 2-D grid".into()));
    }
    let n = g.n();
    let h = g.spacing();
    let s = &g.samples;
    let at = |ix: usize, iy: usize| s[iy * n + ix];
    let mut res = vec![0.0; n * n];
    let mut valid = vec![false; n * n];
    for iy in 1..n - 1 {
        for ix in 1..n - 1 {
            let mut ok = true;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let jx = (ix as i64 + dx) as usize;
                    let jy = (iy as i64 + dy) as usize;
                    ok &= g.mask[jy * n + jx];
                }
            }
            if !ok {
                continue;
            }
            // Face flux in direction +x at (ix+1/2, iy): normal derivative by
            // a two-point difference, transverse derivative by averaging the
            // four surrounding central differences.
            let flux = |u0: f64, u1: f64, t: f64| {
                let gn = (u1 - u0) / h;
                let grad = (gn * gn + t * t).sqrt();
                if grad == 0.0 {
                    0.0
                } else {
                    grad.powf(p - 2.0) * gn
                }
            };
            let ty_e = (at(ix, iy + 1) + at(ix + 1, iy + 1) - at(ix, iy - 1) - at(ix + 1, iy - 1))
                / (4.0 * h);
            let ty_w = (at(ix - 1, iy + 1) + at(ix, iy + 1) - at(ix - 1, iy - 1) - at(ix, iy - 1))
                / (4.0 * h);
            let tx_n = (at(ix + 1, iy) + at(ix + 1, iy + 1) - at(ix - 1, iy) - at(ix - 1, iy + 1))
                / (4.0 * h);
            let tx_s = (at(ix + 1, iy - 1) + at(ix + 1, iy) - at(ix - 1, iy - 1) - at(ix - 1, iy))
                / (4.0 * h);
            let fe = flux(at(ix, iy), at(ix + 1, iy), ty_e);
            let fw = flux(at(ix - 1, iy), at(ix, iy), ty_w);
            let fn_ = flux(at(ix, iy), at(ix, iy + 1), tx_n);
            let fs = flux(at(ix, iy - 1), at(ix, iy), tx_s);
            res[iy * n + ix] = (fe - fw + fn_ - fs) / h;
            valid[iy * n + ix] = true;
        }
    }
    Ok((res, valid))
}

/// Five-point Laplacian residual (the p = 2 case of the flux form).
pub fn laplacian_residual(g: &GridFunction) -> Result<(Vec<f64>, Vec<bool>)> {
    p_laplacian_residual(g, 2.0)
}
