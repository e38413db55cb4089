//! Boundary/interior classification of wavelet indices by dyadic distance
//! bands.
//!
//! Each index at level `j` carries an anchor point `2^{-j} k` and a support
//! cube of side `(2m-1) 2^{-j}` anchored there; `B(I)` is the circumscribed
//! ball of that cube and `B_c(I)` its concentric dilation by the family
//! ratio `c`. An index is retained when `B_c(I)` meets the domain, banded by
//! `n = floor(2^j dist(anchor, boundary))`, and called interior when
//! `n > C0 = ceil(c diam(Q)/2)`.
//!
//! Because the transform periodizes at the cube edge, an index near the edge
//! stands for several translated copies of one wavelet. Classification uses
//! the copy whose support ball sits deepest inside the domain (largest
//! signed distance); with that convention a dropped index reads only
//! zero-extended samples, so its coefficients are exactly zero.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{distance_to_boundary, DomainSpec};
use crate::error::{Error, Result};
use crate::wavelet::transform::{EType, WaveletCoeffs, WaveletIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandClass {
    Boundary,
    Interior,
}

impl BandClass {
    pub fn label(self) -> &'static str {
        match self {
            BandClass::Boundary => "boundary",
            BandClass::Interior => "interior",
        }
    }
}

/// Distance-band label of one retained index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandLabel {
    pub j: u32,
    pub n: u32,
    pub class: BandClass,
}

/// Cutoff band index: `ceil(c diam(Q)/2)` with `diam(Q) = (2m-1) sqrt(d)`
/// measured in level-`j` cells, independent of `j`.
pub fn band_cutoff(c: f64, m: usize, d: u32) -> u32 {
    let diam = (2 * m - 1) as f64 * (d as f64).sqrt();
    (c * diam / 2.0).ceil() as u32
}

/// Labels of one level, indexed by shift `k` row-major with x fastest;
/// `None` marks a dropped index (`B_c(I)` misses the domain).
#[derive(Debug, Clone)]
pub struct LevelBands {
    pub j: u32,
    pub labels: Vec<Option<BandLabel>>,
}

/// Classification of every index of a decomposition.
#[derive(Debug, Clone)]
pub struct Classification {
    pub c: f64,
    pub c0: u32,
    pub j0: u32,
    pub levels: Vec<LevelBands>,
}

impl Classification {
    pub fn label(&self, j: u32, k: [u32; 2]) -> Option<BandLabel> {
        let lev = &self.levels[(j - self.j0) as usize];
        let n = 1usize << j;
        lev.labels[k[1] as usize * n + k[0] as usize]
    }

    /// Expand to the per-index map shape (all three types of one `(j,k)`
    /// share a label).
    pub fn to_map(&self) -> HashMap<WaveletIndex, BandLabel> {
        let mut map = HashMap::new();
        for lev in &self.levels {
            let n = 1u32 << lev.j;
            for (i, lab) in lev.labels.iter().enumerate() {
                if let Some(lab) = lab {
                    let k = [i as u32 % n, i as u32 / n];
                    for e in EType::ALL {
                        map.insert(WaveletIndex { j: lev.j, k, e }, *lab);
                    }
                }
            }
        }
        map
    }

    /// Count retained `(j,k)` slots per band index at level `j`.
    pub fn band_counts(&self, j: u32) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for lab in self.levels[(j - self.j0) as usize].labels.iter().flatten() {
            *counts.entry(lab.n).or_insert(0) += 1;
        }
        counts
    }

    pub fn retained(&self, j: u32) -> usize {
        self.levels[(j - self.j0) as usize].labels.iter().flatten().count()
    }
}

/// Classify every detail index of `coeffs` against `domain`.
///
/// The domain must share the decomposition's bounding cube, and `c > 1`.
pub fn classify(coeffs: &WaveletCoeffs, domain: &DomainSpec, c: f64) -> Result<Classification> {
    if !(c > 1.0) {
        return Err(Error::InvalidParam(format!("family ratio c must exceed 1, got {c}")));
    }
    let want = domain.bbox();
    if (want.origin[0] - coeffs.bbox.origin[0]).abs() > 1e-12
        || (want.origin[1] - coeffs.bbox.origin[1]).abs() > 1e-12
        || (want.side - coeffs.bbox.side).abs() > 1e-12
    {
        return Err(Error::InvalidParam(
            "domain bounding cube does not match the decomposition".into(),
        ));
    }
    let c0 = band_cutoff(c, coeffs.m, 2);
    let side = coeffs.bbox.side;
    let origin = coeffs.bbox.origin;
    let half_support = (2 * coeffs.m - 1) as f64 / 2.0;
    let levels = coeffs
        .details
        .iter()
        .map(|lev| {
            let j = lev.j;
            let nj = 1usize << j;
            let scale = 0.5f64.powi(j as i32);
            let radius = side * scale * half_support * std::f64::consts::SQRT_2;
            let labels: Vec<Option<BandLabel>> = (0..nj * nj)
                .into_par_iter()
                .map(|i| {
                    let k = [(i % nj) as u32, (i / nj) as u32];
                    let anchor = [k[0] as f64 * scale, k[1] as f64 * scale];
                    let center = [anchor[0] + half_support * scale, anchor[1] + half_support * scale];
                    // Reduce the support center into the cube, then test the
                    // nine nearest periodized copies.
                    let base = [center[0].floor(), center[1].floor()];
                    let mut best_sd = f64::NEG_INFINITY;
                    let mut best_shift = [0.0, 0.0];
                    for sx in -1i32..=1 {
                        for sy in -1i32..=1 {
                            let shift = [sx as f64 - base[0], sy as f64 - base[1]];
                            let pt = [
                                origin[0] + side * (center[0] + shift[0]),
                                origin[1] + side * (center[1] + shift[1]),
                            ];
                            let sd = distance_to_boundary(domain, pt);
                            if sd > best_sd {
                                best_sd = sd;
                                best_shift = shift;
                            }
                        }
                    }
                    if best_sd <= -c * radius {
                        return None;
                    }
                    let anchor_pt = [
                        origin[0] + side * (anchor[0] + best_shift[0]),
                        origin[1] + side * (anchor[1] + best_shift[1]),
                    ];
                    let dist = distance_to_boundary(domain, anchor_pt).abs() / side;
                    let n = (dist / scale).floor() as u32;
                    let class = if n > c0 { BandClass::Interior } else { BandClass::Boundary };
                    Some(BandLabel { j, n, class })
                })
                .collect();
            LevelBands { j, labels }
        })
        .collect();
    Ok(Classification { c, c0, j0: coeffs.j0, levels })
}

/// Diagnostic CSV of retained coefficients:
/// `j,k1,k2,e,n_band,class,value`.
pub fn coefficients_csv(coeffs: &WaveletCoeffs, cls: &Classification) -> String {
    let mut out = String::from("j,k1,k2,e,n_band,class,value\n");
    for (idx, value) in coeffs.iter_details() {
        if let Some(lab) = cls.label(idx.j, idx.k) {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                idx.j,
                idx.k[0],
                idx.k[1],
                idx.e.label(),
                lab.n,
                lab.class.label(),
                crate::jsonio::fmt_f64(value)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::GridFunction;
    use crate::wavelet::transform::analyze;

    fn unit_square_classification(level: u32) -> (WaveletCoeffs, Classification) {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, level, |x| {
            (3.1 * x[0]).sin() * (1.7 + x[1]).cos()
        });
        let coeffs = analyze(&g, 3, 2, 2.0).unwrap();
        let cls = classify(&coeffs, &DomainSpec::UnitSquare, 2.0).unwrap();
        (coeffs, cls)
    }

    #[test]
    fn cutoff_value() {
        // (2*3-1)*sqrt(2) = 7.07..; times c/2 = 1 gives ceil = 8.
        assert_eq!(band_cutoff(2.0, 3, 2), 8);
        assert_eq!(band_cutoff(2.0, 1, 2), 2);
    }

    #[test]
    fn center_index_is_interior() {
        let (_, cls) = unit_square_classification(7);
        let lab = cls.label(6, [32, 32]).unwrap();
        assert_eq!(lab.n, 32);
        assert_eq!(lab.class, BandClass::Interior);
    }

    #[test]
    fn anchor_on_boundary_is_band_zero() {
        let (_, cls) = unit_square_classification(7);
        let lab = cls.label(5, [0, 16]).unwrap();
        assert_eq!(lab.n, 0);
        assert_eq!(lab.class, BandClass::Boundary);
    }

    #[test]
    fn band_index_matches_anchor_distance() {
        // Anchor (3/32, 1/2) sits 3/32 from the left edge: band 3.
        let (_, cls) = unit_square_classification(7);
        let lab = cls.label(5, [3, 16]).unwrap();
        assert_eq!(lab.n, 3);
        assert_eq!(lab.class, BandClass::Boundary);
    }

    #[test]
    fn unit_square_retains_everything() {
        let (coeffs, cls) = unit_square_classification(7);
        for j in coeffs.j0..coeffs.level {
            assert_eq!(cls.retained(j), 1usize << (2 * j));
        }
    }

    #[test]
    fn band_cardinality_grows_linearly() {
        // |Lambda_{j,n}| tracks the boundary measure: about 2x per level at
        // fixed n, and at most 8 * 2^j on the unit square.
        let (_, cls) = unit_square_classification(9);
        for n in [0u32, 1, 2] {
            for j in 4..8u32 {
                let count = *cls.band_counts(j).get(&n).unwrap() as f64;
                let next = *cls.band_counts(j + 1).get(&n).unwrap() as f64;
                let ratio = next / count;
                assert!(
                    (1.4..=2.6).contains(&ratio),
                    "n={n} j={j}: counts {count} -> {next}"
                );
                assert!(count <= 8.0 * (1u64 << j) as f64);
            }
        }
    }

    #[test]
    fn dropped_indices_have_zero_coefficients() {
        // On the L-shape the notch quadrant supports no samples; indices
        // whose every periodized support copy misses the domain must carry
        // exactly-zero details.
        let domain = DomainSpec::LShape;
        let g = GridFunction::sample(&domain, 6, |x| (2.0 + x[0]).ln() + x[1] * x[1]);
        let coeffs = analyze(&g, 3, 2, 2.0).unwrap();
        let cls = classify(&coeffs, &domain, 2.0).unwrap();
        let mut dropped = 0usize;
        for (idx, value) in coeffs.iter_details() {
            if cls.label(idx.j, idx.k).is_none() {
                dropped += 1;
                assert!(value.abs() < 1e-13, "dropped {idx:?} has coefficient {value}");
            }
        }
        assert!(dropped > 0, "expected some dropped indices at fine levels");
    }

    #[test]
    fn partition_covers_retained_set() {
        let (_, cls) = unit_square_classification(6);
        for j in 2..6u32 {
            let total: usize = cls.band_counts(j).values().sum();
            assert_eq!(total, cls.retained(j));
        }
    }

    #[test]
    fn csv_dump_shape() {
        let (coeffs, cls) = unit_square_classification(5);
        let csv = coefficients_csv(&coeffs, &cls);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "j,k1,k2,e,n_band,class,value");
        let body: Vec<&str> = lines.collect();
        assert_eq!(body.len(), coeffs.detail_count());
        assert!(body[0].split(',').count() == 7);
    }

    #[test]
    fn mismatched_domain_rejected() {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, 5, |x| x[0]);
        let coeffs = analyze(&g, 2, 2, 2.0).unwrap();
        let sector = DomainSpec::CircularSector { radius: 1.0, omega: 3.0 };
        assert!(classify(&coeffs, &sector, 2.0).is_err());
        assert!(classify(&coeffs, &DomainSpec::UnitSquare, 1.0).is_err());
    }
}
