//! Grid functions: dyadic cell-centered samples on a domain's bounding cube
//! with a boolean interior mask, plus file I/O.
//!
//! File format: a JSON header (dimension, level, bounding cube, domain) next
//! to a little-endian f64 binary sidecar holding the samples row-major with
//! x fastest. The mask is regenerated from the domain on load.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::domain::geometry::{BBox, DomainSpec};
use crate::error::{Error, Result};
use crate::jsonio;

/// Integrability index for L_p norms; `P` must be positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lp {
    P(f64),
    Inf,
}

impl Lp {
    pub fn finite(self) -> Option<f64> {
        match self {
            Lp::P(p) => Some(p),
            Lp::Inf => None,
        }
    }
}

/// Samples of a function on the `(2^level)^d` cell-centered dyadic grid of
/// the domain's bounding cube, row-major with x fastest. Samples at masked
/// (exterior) nodes are zero for model functions; synthesized grids may hold
/// reconstruction spill there.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub d: usize,
    pub level: u32,
    pub bbox: BBox,
    pub domain: DomainSpec,
    pub samples: Vec<f64>,
    pub mask: Vec<bool>,
}

impl GridFunction {
    /// Nodes per axis.
    pub fn n(&self) -> usize {
        1usize << self.level
    }

    /// Grid spacing.
    pub fn spacing(&self) -> f64 {
        self.bbox.spacing(self.level)
    }

    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.n() + ix
    }

    /// Physical position of node `i` (1-D) or `(ix, iy)` flattened (2-D).
    pub fn position(&self, i: usize) -> [f64; 2] {
        let n = self.n();
        if self.d == 1 {
            let h = self.spacing();
            [self.bbox.origin[0] + (i as f64 + 0.5) * h, 0.0]
        } else {
            self.bbox.cell_center(self.level, i % n, i / n)
        }
    }

    fn mask_for(domain: &DomainSpec, bbox: &BBox, d: usize, level: u32) -> Vec<bool> {
        let n = 1usize << level;
        if d == 1 {
            let h = bbox.spacing(level);
            (0..n)
                .map(|i| {
                    let x = bbox.origin[0] + (i as f64 + 0.5) * h;
                    x > bbox.origin[0] && x < bbox.origin[0] + bbox.side
                })
                .collect()
        } else {
            (0..n * n)
                .map(|i| domain.contains(bbox.cell_center(level, i % n, i / n)))
                .collect()
        }
    }

    /// Sample `f` on the 2-D grid; exterior nodes get zero (zero-extension
    /// convention standing in for a boundary extension operator, exact for
    /// functions with vanishing trace).
    pub fn sample(domain: &DomainSpec, level: u32, f: impl Fn([f64; 2]) -> f64) -> Self {
        let bbox = domain.bbox();
        let mask = Self::mask_for(domain, &bbox, 2, level);
        let n = 1usize << level;
        let samples = (0..n * n)
            .map(|i| {
                if mask[i] {
                    f(bbox.cell_center(level, i % n, i / n))
                } else {
                    0.0
                }
            })
            .collect();
        GridFunction { d: 2, level, bbox, domain: domain.clone(), samples, mask }
    }

    /// Sample `f` on the 1-D grid over `[a, b]` (oracle support).
    pub fn sample_1d(a: f64, b: f64, level: u32, f: impl Fn(f64) -> f64) -> Self {
        let bbox = BBox { origin: [a, 0.0], side: b - a };
        let domain = DomainSpec::ScaledCube { origin: bbox.origin, side: bbox.side };
        let n = 1usize << level;
        let h = bbox.spacing(level);
        let samples = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).collect();
        let mask = vec![true; n];
        GridFunction { d: 1, level, bbox, domain, samples, mask }
    }

    /// Wrap raw samples (2-D); the mask comes from the domain, samples are
    /// stored as given.
    pub fn from_samples(domain: &DomainSpec, level: u32, samples: Vec<f64>) -> Result<Self> {
        let bbox = domain.bbox();
        let n = 1usize << level;
        if samples.len() != n * n {
            return Err(Error::InvalidParam(format!(
                "expected {} samples for level {level}, got {}",
                n * n,
                samples.len()
            )));
        }
        let mask = Self::mask_for(domain, &bbox, 2, level);
        Ok(GridFunction { d: 2, level, bbox, domain: domain.clone(), samples, mask })
    }

    /// L_p norm by midpoint quadrature. `mask_only` restricts to interior
    /// nodes; otherwise the whole cube contributes.
    pub fn lp_norm(&self, p: Lp, mask_only: bool) -> f64 {
        let h = self.spacing();
        let cell = h.powi(self.d as i32);
        match p {
            Lp::Inf => self
                .samples
                .iter()
                .zip(&self.mask)
                .filter(|(_, m)| !mask_only || **m)
                .map(|(v, _)| v.abs())
                .fold(0.0, f64::max),
            Lp::P(p) => {
                assert!(p > 0.0, "Lp exponent must be positive");
                let mut sum = crate::util::Kahan::default();
                for (v, m) in self.samples.iter().zip(&self.mask) {
                    if mask_only && !m {
                        continue;
                    }
                    sum.add(v.abs().powf(p) * cell);
                }
                sum.total().powf(1.0 / p)
            }
        }
    }

    /// L_p distance between two grid functions on the same grid.
    pub fn lp_distance(&self, other: &GridFunction, p: Lp, mask_only: bool) -> Result<f64> {
        if self.level != other.level || self.d != other.d {
            return Err(Error::InvalidParam("grid mismatch in lp_distance".into()));
        }
        let mut diff = self.clone();
        for (a, b) in diff.samples.iter_mut().zip(&other.samples) {
            *a -= b;
        }
        Ok(diff.lp_norm(p, mask_only))
    }

    /// Write the JSON header to `path` and the samples to a `.bin` sidecar
    /// with the same stem. Both writes are atomic.
    pub fn save(&self, path: &Path) -> Result<()> {
        let sidecar_name = sidecar_path(path)
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "grid.bin".into());
        let header = json!({
            "format": "wavreg-grid",
            "version": 1,
            "d": self.d,
            "level": self.level,
            "bbox": serde_json::to_value(self.bbox)?,
            "domain": serde_json::to_value(&self.domain)?,
            "sidecar": sidecar_name,
            "byte_order": "little-endian",
            "sample_count": self.samples.len(),
        });
        let mut bytes = Vec::with_capacity(self.samples.len() * 8);
        for v in &self.samples {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        jsonio::write_atomic(&sidecar_path(path), &bytes)?;
        jsonio::write_atomic(path, jsonio::to_string_17(&header).as_bytes())?;
        Ok(())
    }

    /// Load a grid function; the mask is regenerated from the domain spec.
    pub fn load(path: &Path) -> Result<Self> {
        #[derive(Deserialize, Serialize)]
        struct Header {
            format: String,
            version: u32,
            d: usize,
            level: u32,
            bbox: BBox,
            domain: DomainSpec,
            sidecar: String,
            sample_count: usize,
        }
        let text = std::fs::read_to_string(path)?;
        let header: Header = serde_json::from_str(&text)?;
        if header.format != "wavreg-grid" || header.version != 1 {
            return Err(Error::Format(format!(
                "unsupported grid file format {} v{}",
                header.format, header.version
            )));
        }
        if header.d != 1 && header.d != 2 {
            return Err(Error::Format(format!("unsupported dimension {}", header.d)));
        }
        let n = 1usize << header.level;
        let expect = n.pow(header.d as u32);
        if header.sample_count != expect {
            return Err(Error::Format(format!(
                "sample_count {} does not match level {} (expected {expect})",
                header.sample_count, header.level
            )));
        }
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        let bytes = std::fs::read(dir.join(&header.sidecar))?;
        if bytes.len() != expect * 8 {
            return Err(Error::Format(format!(
                "sidecar holds {} bytes, expected {}",
                bytes.len(),
                expect * 8
            )));
        }
        let samples: Vec<f64> = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk size")))
            .collect();
        let mask = Self::mask_for(&header.domain, &header.bbox, header.d, header.level);
        Ok(GridFunction {
            d: header.d,
            level: header.level,
            bbox: header.bbox,
            domain: header.domain,
            samples,
            mask,
        })
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("bin")
}
