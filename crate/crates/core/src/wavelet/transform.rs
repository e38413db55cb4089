//! Periodized tensor-product Daubechies transform on dyadic grids.
//!
//! Finest-level samples are taken as scaling coefficients (one-point
//! quadrature), the standard first-order approximation. Each level applies
//! the periodized filter bank along rows then columns of the active block;
//! periodization keeps the transform orthogonal at every even size, so
//! perfect reconstruction and Parseval hold to rounding on the whole cube.
//!
//! Stored detail values are coefficients against the `p'`-renormalized dual
//! wavelets: for `p_norm = p` the entry at index `I` is
//! `|I|^{1/p - 1/2} <g, eta_I>` with `|I|` the physical dyadic volume, so
//! `p_norm = 2` stores plain L2 coefficients. Coarse scaling coefficients
//! always stay L2-normalized.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{BBox, DomainSpec, GridFunction};
use crate::error::{Error, Result};
use crate::wavelet::filters::{daubechies_filters, FilterPair};

/// Wavelet type: the nonzero vertex of the unit square that labels the
/// tensor factor carrying the high-pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EType {
    /// High-pass in x, low-pass in y: vertex (1,0).
    Ex,
    /// Low-pass in x, high-pass in y: vertex (0,1).
    Ey,
    /// High-pass in both: vertex (1,1).
    Exy,
}

impl EType {
    pub const ALL: [EType; 3] = [EType::Ex, EType::Ey, EType::Exy];

    pub fn vertex(self) -> [u8; 2] {
        match self {
            EType::Ex => [1, 0],
            EType::Ey => [0, 1],
            EType::Exy => [1, 1],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EType::Ex => "10",
            EType::Ey => "01",
            EType::Exy => "11",
        }
    }

    fn plane(self) -> usize {
        match self {
            EType::Ex => 0,
            EType::Ey => 1,
            EType::Exy => 2,
        }
    }
}

/// Index of one wavelet: level `j`, translation `k` (periodized, in
/// `[0, 2^j)` per axis), type `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WaveletIndex {
    pub j: u32,
    pub k: [u32; 2],
    pub e: EType,
}

/// Detail planes of one level, each `(2^j)^2` row-major with x fastest,
/// ordered `[Ex, Ey, Exy]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailLevel {
    pub j: u32,
    pub planes: [Vec<f64>; 3],
}

/// Full multilevel decomposition of a 2-D grid function.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletCoeffs {
    pub m: usize,
    pub j0: u32,
    /// Finest sample level J; details run over `j0 <= j < J`.
    pub level: u32,
    /// Renormalization exponent of the stored detail values.
    pub p_norm: f64,
    pub bbox: BBox,
    pub domain: DomainSpec,
    /// L2-normalized coarse scaling coefficients, `(2^{j0})^2` entries.
    pub coarse: Vec<f64>,
    pub details: Vec<DetailLevel>,
}

impl WaveletCoeffs {
    /// Physical volume of a level-`j` dyadic cell on this cube.
    pub fn dyadic_volume(&self, j: u32) -> f64 {
        let side = self.bbox.side * 0.5f64.powi(j as i32);
        side * side
    }

    /// Number of stored detail coefficients.
    pub fn detail_count(&self) -> usize {
        self.details.iter().map(|l| 3 * l.planes[0].len()).sum()
    }

    pub fn detail(&self, idx: WaveletIndex) -> f64 {
        let lev = &self.details[(idx.j - self.j0) as usize];
        let n = 1usize << idx.j;
        lev.planes[idx.e.plane()][idx.k[1] as usize * n + idx.k[0] as usize]
    }

    pub fn detail_mut(&mut self, idx: WaveletIndex) -> &mut f64 {
        let lev = &mut self.details[(idx.j - self.j0) as usize];
        let n = 1usize << idx.j;
        &mut lev.planes[idx.e.plane()][idx.k[1] as usize * n + idx.k[0] as usize]
    }

    /// Iterate all detail indices with their stored values.
    pub fn iter_details(&self) -> impl Iterator<Item = (WaveletIndex, f64)> + '_ {
        self.details.iter().flat_map(move |lev| {
            let n = 1usize << lev.j;
            EType::ALL.into_iter().flat_map(move |e| {
                lev.planes[e.plane()].iter().enumerate().map(move |(i, &v)| {
                    let k = [(i % n) as u32, (i / n) as u32];
                    (WaveletIndex { j: lev.j, k, e }, v)
                })
            })
        })
    }

    /// Exact renormalization between storage exponents: stored values scale
    /// by `|I_j|^{1/p_new - 1/p_old}` per level. A round trip multiplies and
    /// divides by the same factor, so it is reproducible to rounding.
    pub fn to_p_norm(&self, p_new: f64) -> Result<WaveletCoeffs> {
        if !(p_new > 0.0) || !p_new.is_finite() {
            return Err(Error::InvalidParam(format!("p_norm must be in (0, inf), got {p_new}")));
        }
        let mut out = self.clone();
        out.p_norm = p_new;
        if (p_new - self.p_norm).abs() == 0.0 {
            return Ok(out);
        }
        let expo = 1.0 / p_new - 1.0 / self.p_norm;
        for lev in &mut out.details {
            let f = self.dyadic_volume(lev.j).powf(expo);
            for plane in &mut lev.planes {
                for v in plane.iter_mut() {
                    *v *= f;
                }
            }
        }
        Ok(out)
    }

    /// Empty coefficient set (all zeros) with the given shape; handy for
    /// building single-wavelet inputs in tests and diagnostics.
    pub fn zeros(
        m: usize,
        j0: u32,
        level: u32,
        p_norm: f64,
        domain: &DomainSpec,
    ) -> Result<WaveletCoeffs> {
        if j0 >= level {
            return Err(Error::LevelUnderflow(format!("j0 = {j0} must be below J = {level}")));
        }
        let n0 = 1usize << j0;
        let details = (j0..level)
            .map(|j| {
                let n = 1usize << j;
                DetailLevel { j, planes: [vec![0.0; n * n], vec![0.0; n * n], vec![0.0; n * n]] }
            })
            .collect();
        Ok(WaveletCoeffs {
            m,
            j0,
            level,
            p_norm,
            bbox: domain.bbox(),
            domain: domain.clone(),
            coarse: vec![0.0; n0 * n0],
            details,
        })
    }
}

/// One periodized analysis step along rows of the `n x n` active block.
fn step_rows(work: &mut [f64], full: usize, n: usize, f: &FilterPair) {
    let half = n / 2;
    let taps = f.len();
    work.par_chunks_mut(full).take(n).for_each(|row| {
        let mut out = vec![0.0; n];
        for k in 0..half {
            let mut a = 0.0;
            let mut d = 0.0;
            for i in 0..taps {
                let src = (2 * k + i) % n;
                a += f.lo[i] * row[src];
                d += f.hi[i] * row[src];
            }
            out[k] = a;
            out[half + k] = d;
        }
        row[..n].copy_from_slice(&out);
    });
}

/// One periodized synthesis step along rows (inverse of `step_rows`).
fn unstep_rows(work: &mut [f64], full: usize, n: usize, f: &FilterPair) {
    let half = n / 2;
    let taps = f.len();
    work.par_chunks_mut(full).take(n).for_each(|row| {
        let mut out = vec![0.0; n];
        for k in 0..half {
            let a = row[k];
            let d = row[half + k];
            for i in 0..taps {
                let dst = (2 * k + i) % n;
                out[dst] += f.lo[i] * a + f.hi[i] * d;
            }
        }
        row[..n].copy_from_slice(&out);
    });
}

fn transpose_block(work: &mut [f64], full: usize, n: usize) {
    for r in 0..n {
        for c in (r + 1)..n {
            work.swap(r * full + c, c * full + r);
        }
    }
}

/// Decompose a 2-D grid function down to coarse level `j0`, storing details
/// in `p_norm` renormalization.
pub fn analyze(g: &GridFunction, m: usize, j0: u32, p_norm: f64) -> Result<WaveletCoeffs> {
    if g.d != 2 {
        return Err(Error::InvalidParam("analyze requires a 2-D grid function".into()));
    }
    if j0 >= g.level {
        return Err(Error::LevelUnderflow(format!(
            "coarsest level j0 = {j0} must be below the sample level J = {}",
            g.level
        )));
    }
    if !(p_norm > 0.0) || !p_norm.is_finite() {
        return Err(Error::InvalidParam(format!("p_norm must be in (0, inf), got {p_norm}")));
    }
    let filters = daubechies_filters(m)?;
    let full = g.n();
    let mut work = g.samples.clone();
    let mut coeffs = WaveletCoeffs::zeros(m, j0, g.level, p_norm, &g.domain)?;
    coeffs.bbox = g.bbox;
    let h = g.spacing();
    let l2_scale = h; // h^{d/2} with d = 2
    for j in (j0..g.level).rev() {
        let n = 1usize << (j + 1);
        let half = n / 2;
        step_rows(&mut work, full, n, &filters);
        transpose_block(&mut work, full, n);
        step_rows(&mut work, full, n, &filters);
        transpose_block(&mut work, full, n);
        // Quadrants: x-halves hold [low | high] after the row pass, y-halves
        // after the column pass; extract the three detail planes.
        let renorm = l2_scale * coeffs.dyadic_volume(j).powf(1.0 / p_norm - 0.5);
        let lev = &mut coeffs.details[(j - j0) as usize];
        for ky in 0..half {
            for kx in 0..half {
                let i = ky * half + kx;
                lev.planes[0][i] = work[ky * full + (half + kx)] * renorm;
                lev.planes[1][i] = work[(half + ky) * full + kx] * renorm;
                lev.planes[2][i] = work[(half + ky) * full + (half + kx)] * renorm;
            }
        }
    }
    let n0 = 1usize << j0;
    for ky in 0..n0 {
        for kx in 0..n0 {
            coeffs.coarse[ky * n0 + kx] = work[ky * full + kx] * l2_scale;
        }
    }
    Ok(coeffs)
}

/// Reconstruct the grid function from a decomposition. Inverse of
/// [`analyze`] to rounding; the mask is regenerated from the domain and
/// samples are not re-zeroed outside it.
pub fn synthesize(coeffs: &WaveletCoeffs) -> Result<GridFunction> {
    let filters = daubechies_filters(coeffs.m)?;
    let full = 1usize << coeffs.level;
    let h = coeffs.bbox.spacing(coeffs.level);
    let l2_scale = h;
    let mut work = vec![0.0; full * full];
    let n0 = 1usize << coeffs.j0;
    for ky in 0..n0 {
        for kx in 0..n0 {
            work[ky * full + kx] = coeffs.coarse[ky * n0 + kx] / l2_scale;
        }
    }
    for j in coeffs.j0..coeffs.level {
        let half = 1usize << j;
        let n = half * 2;
        let renorm = l2_scale * coeffs.dyadic_volume(j).powf(1.0 / coeffs.p_norm - 0.5);
        let lev = &coeffs.details[(j - coeffs.j0) as usize];
        for ky in 0..half {
            for kx in 0..half {
                let i = ky * half + kx;
                work[ky * full + (half + kx)] = lev.planes[0][i] / renorm;
                work[(half + ky) * full + kx] = lev.planes[1][i] / renorm;
                work[(half + ky) * full + (half + kx)] = lev.planes[2][i] / renorm;
            }
        }
        transpose_block(&mut work, full, n);
        unstep_rows(&mut work, full, n, &filters);
        transpose_block(&mut work, full, n);
        unstep_rows(&mut work, full, n, &filters);
    }
    // Row-major layouts of the work buffer and GridFunction agree.
    let mut g = GridFunction::from_samples(&coeffs.domain, coeffs.level, work)?;
    g.bbox = coeffs.bbox;
    Ok(g)
}

/// Reconstruct only the coarse projection (details zeroed).
pub fn synthesize_coarse(coeffs: &WaveletCoeffs) -> Result<GridFunction> {
    let mut trimmed = coeffs.clone();
    for lev in &mut trimmed.details {
        for plane in &mut lev.planes {
            plane.iter_mut().for_each(|v| *v = 0.0);
        }
    }
    synthesize(&trimmed)
}
