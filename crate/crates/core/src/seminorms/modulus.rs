//! Moduli of smoothness by iterated finite differences, and the Besov
//! semi-norm as a dyadic sum of weighted moduli.

use rayon::prelude::*;

use crate::domain::{GridFunction, Lp};
use crate::error::{Error, Result};
use crate::util::{binomial, Kahan};

/// Difference directions: grid axes and diagonals, both orientations.
fn directions(d: usize) -> Vec<(i64, i64)> {
    if d == 1 {
        vec![(1, 0), (-1, 0)]
    } else {
        vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
    }
}

/// `L_p` norm of the r-th difference with step `k * h * dir`, over the
/// points whose whole difference stencil stays inside the mask.
fn difference_norm(g: &GridFunction, r: usize, step: (i64, i64), p: Lp) -> f64 {
    let n = g.n() as i64;
    let rows = if g.d == 1 { 1i64 } else { n };
    let h = g.spacing();
    let cell = h.powi(g.d as i32);
    let signs: Vec<f64> =
        (0..=r).map(|i| if (r - i) % 2 == 0 { binomial(r, i) } else { -binomial(r, i) }).collect();
    let mut sum = Kahan::default();
    let mut sup: f64 = 0.0;
    for iy in 0..rows {
        'pt: for ix in 0..n {
            let mut delta = 0.0;
            for (i, w) in signs.iter().enumerate() {
                let px = ix + step.0 * i as i64;
                let py = iy + step.1 * i as i64;
                if px < 0 || px >= n || py < 0 || py >= rows {
                    continue 'pt;
                }
                let idx = (py * n + px) as usize;
                if !g.mask[idx] {
                    continue 'pt;
                }
                delta += w * g.samples[idx];
            }
            match p {
                Lp::Inf => sup = sup.max(delta.abs()),
                Lp::P(p) => sum.add(delta.abs().powf(p) * cell),
            }
        }
    }
    match p {
        Lp::Inf => sup,
        Lp::P(p) => sum.total().powf(1.0 / p),
    }
}

/// Modulus of smoothness `omega_r(g, t)_p`: the maximum over directions
/// (axes and diagonals) and step lengths `|h| <= t` in grid multiples of the
/// `L_p` norm of the r-th iterated difference, restricted to points whose
/// full stencil stays inside the domain.
pub fn modulus_of_smoothness(g: &GridFunction, r: usize, t: f64, p: Lp) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidParam("difference order must be at least 1".into()));
    }
    let h = g.spacing();
    if t < h * (1.0 - 1e-12) {
        return Err(Error::GridTooCoarse(format!(
            "step bound t = {t} lies below the grid spacing {h}"
        )));
    }
    let mut jobs = Vec::new();
    for dir in directions(g.d) {
        let dir_len = h * (((dir.0 * dir.0 + dir.1 * dir.1) as f64).sqrt());
        let mut k = 1i64;
        while k as f64 * dir_len <= t * (1.0 + 1e-12) {
            jobs.push((dir.0 * k, dir.1 * k));
            k += 1;
        }
    }
    let best = jobs
        .into_par_iter()
        .map(|step| difference_norm(g, r, step, p))
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// Besov semi-norm through dyadic moduli: with `t_j = 2^-j` for
/// `j = 0 .. J - r`,
/// `( sum_j (2^{j s} omega_r(g, t_j)_p)^q )^{1/q}` (supremum for q = inf).
/// Requires `r >= floor(s) + 1`.
pub fn besov_seminorm_modulus(g: &GridFunction, s: f64, p: Lp, q: Lp, r: usize) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParam(format!("smoothness must be positive, got {s}")));
    }
    if r < s.floor() as usize + 1 {
        return Err(Error::InvalidParam(format!(
            "difference order {r} too small for smoothness {s}: the modulus characterization needs r >= floor(s) + 1"
        )));
    }
    if g.level < r as u32 {
        return Err(Error::GridTooCoarse(format!(
            "level {} grid cannot hold an order-{r} difference",
            g.level
        )));
    }
    let terms = besov_modulus_terms(g, s, p, r)?;
    Ok(match q {
        Lp::Inf => terms.iter().cloned().fold(0.0, f64::max),
        Lp::P(q) => {
            let mut sum = Kahan::default();
            for a in &terms {
                sum.add(a.powf(q));
            }
            sum.total().powf(1.0 / q)
        }
    })
}

/// The per-scale terms `2^{j s} omega_r(g, 2^-j)_p`, finest last; exposed
/// for divergence diagnostics.
pub fn besov_modulus_terms(g: &GridFunction, s: f64, p: Lp, r: usize) -> Result<Vec<f64>> {
    let j_top = g.level - r as u32;
    (0..=j_top)
        .map(|j| {
            let t = 0.5f64.powi(j as i32);
            Ok(2.0f64.powf(j as f64 * s) * modulus_of_smoothness(g, r, t, p)?)
        })
        .collect()
}
