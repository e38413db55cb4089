//! Fractional Sobolev (Gagliardo) semi-norm by direct double-sum
//! quadrature; quadratic in the point count, so capped to small grids and
//! used purely as an oracle.

use rayon::prelude::*;

use crate::domain::GridFunction;
use crate::error::{Error, Result};
use crate::seminorms::hoelder::derivative_fields;
use crate::util::Kahan;

/// Largest sample count accepted by the O(N^2) double sum (a 64 x 64 grid).
const MAX_POINTS: usize = 64 * 64;

/// Gagliardo semi-norm of smoothness `s` in (0,1) or (1,2) in `L_p`:
/// `( sum_{|nu|=l} sum_{x != y} |D^nu g(x) - D^nu g(y)|^p / |x-y|^{d + beta p}
///   h^{2d} )^{1/p}` with `l = floor(s)`, `beta = s - l`, over mask points
/// where the derivative stencil is valid.
pub fn sobolev_fractional_seminorm(g: &GridFunction, s: f64, p: f64) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) || (s - 1.0).abs() < 1e-14 {
        return Err(Error::InvalidParam(format!(
            "fractional smoothness must lie in (0,1) or (1,2), got {s}"
        )));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParam(format!(
            "integrability must lie in [1, inf), got {p}"
        )));
    }
    if g.samples.len() > MAX_POINTS {
        return Err(Error::GridTooLarge(format!(
            "double sum needs at most {MAX_POINTS} samples, got {}",
            g.samples.len()
        )));
    }
    let ell = s.floor() as u32;
    let beta = s - ell as f64;
    let fields = derivative_fields(g, ell)?;
    let n = g.n();
    let rows = if g.d == 1 { 1 } else { n };
    let h = g.spacing();
    let quad = h.powi(2 * g.d as i32);
    // Kernel lookup over coordinate offsets: (h |dx|)^{-(d + beta p)}.
    let expo = -(g.d as f64 + beta * p);
    let mut kernel = vec![0.0; n * rows];
    for dy in 0..rows {
        for dx in 0..n {
            if dx == 0 && dy == 0 {
                continue;
            }
            let dist = h * ((dx * dx + dy * dy) as f64).sqrt();
            kernel[dy * n + dx] = dist.powf(expo);
        }
    }
    let pts: Vec<usize> = (0..g.samples.len())
        .filter(|&i| fields.iter().all(|(_, valid)| valid[i]))
        .collect();
    let total: f64 = fields
        .par_iter()
        .map(|(field, _)| {
            let mut sum = Kahan::default();
            for (a, &i) in pts.iter().enumerate() {
                let (ix, iy) = (i % n, i / n);
                for &jj in pts.iter().skip(a + 1) {
                    let (jx, jy) = (jj % n, jj / n);
                    let dx = ix.abs_diff(jx);
                    let dy = iy.abs_diff(jy);
                    let k = kernel[dy * n + dx];
                    sum.add((field[i] - field[jj]).abs().powf(p) * k);
                }
            }
            // Unordered pairs counted once above; the double integral runs
            // over ordered pairs.
            2.0 * sum.total() * quad
        })
        .sum();
    Ok(total.powf(1.0 / p))
}
