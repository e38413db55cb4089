//! Daubechies filter construction by spectral factorization.
//!
//! The low-pass filter of order `m` (2m taps, m vanishing moments) comes
//! from factoring the Daubechies half-band polynomial: roots of
//! `P(y) = sum_k C(m-1+k, k) y^k` are mapped to z-plane root pairs and the
//! minimum-phase root of each pair is kept (extremal-phase convention, the
//! standard "db" family). Filters are verified against the conjugate
//! quadrature conditions in the tests rather than against printed tables.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Orthonormal analysis filter pair. The high-pass is the quadrature mirror
/// `hi[i] = (-1)^i lo[2m-1-i]`; synthesis uses the same pair transposed.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterPair {
    pub m: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl FilterPair {
    pub fn len(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_empty()
    }
}

/// Build the order-`m` Daubechies filter pair, `1 <= m <= 10`.
pub fn daubechies_filters(m: usize) -> Result<FilterPair> {
    if m == 0 || m > 10 {
        return Err(Error::UnsupportedMoments(m));
    }
    let lo = daubechies_lowpass(m);
    let len = lo.len();
    let hi: Vec<f64> = (0..len)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * lo[len - 1 - i]
        })
        .collect();
    Ok(FilterPair { m, lo, hi })
}

fn daubechies_lowpass(m: usize) -> Vec<f64> {
    let sqrt2 = std::f64::consts::SQRT_2;
    if m == 1 {
        return vec![1.0 / sqrt2, 1.0 / sqrt2];
    }
    // P(y) = sum_{k=0}^{m-1} C(m-1+k, k) y^k.
    let mut p = Vec::with_capacity(m);
    let mut c = 1.0f64;
    p.push(c);
    for k in 1..m {
        c *= (m - 1 + k) as f64 / k as f64;
        p.push(c);
    }
    let roots = durand_kerner(&p);
    // Assemble the minimum-phase factor from the z-roots of
    // z^2 - (2 - 4y) z + 1 = 0 with |z| < 1.
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for y in roots {
        let b = Complex64::new(2.0, 0.0) - y * 4.0;
        let disc = (b * b - Complex64::new(4.0, 0.0)).sqrt();
        let z1 = (b + disc) * 0.5;
        let z2 = (b - disc) * 0.5;
        let z = if z1.norm() < z2.norm() { z1 } else { z2 };
        poly = conv(&poly, &[-z, Complex64::new(1.0, 0.0)]);
    }
    // Multiply by (1 + z)^m for the vanishing moments.
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        poly = conv(&poly, &[one, one]);
    }
    let mut h: Vec<f64> = poly.iter().map(|c| c.re).collect();
    let sum: f64 = h.iter().sum();
    let scale = sqrt2 / sum;
    for v in &mut h {
        *v *= scale;
    }
    // Ascending z-powers put the minimum-phase tail first; reverse into the
    // conventional table order (energy at the front).
    h.reverse();
    h
}

fn conv(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Roots of a real polynomial given by ascending coefficients, via
/// Durand-Kerner iteration with Newton polishing. Degrees here are at most
/// 9, far below anything numerically delicate.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let a: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            v = v * x + c;
        }
        v
    };
    let deriv = |x: Complex64| -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for (k, &c) in a.iter().enumerate().skip(1).rev() {
            v = v * x + c * k as f64;
        }
        v
    };
    let lead = a[deg];
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..200 {
        let mut shift: f64 = 0.0;
        for k in 0..deg {
            let mut den = lead;
            for j in 0..deg {
                if j != k {
                    den *= roots[k] - roots[j];
                }
            }
            let d = eval(roots[k]) / den;
            roots[k] -= d;
            shift = shift.max(d.norm());
        }
        if shift < 1e-14 {
            break;
        }
    }
    for r in &mut roots {
        for _ in 0..4 {
            let d = deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Conjugate-quadrature residuals: unit energy, vanishing even-lag
    /// autocorrelation, sum sqrt(2), and m discrete vanishing moments on the
    /// high-pass. This is the independent oracle for the construction.
    fn cqf_residual(f: &FilterPair) -> f64 {
        let n = f.len();
        let mut worst: f64 = 0.0;
        for lag in 0..n / 2 {
            let mut acc = 0.0;
            for i in 0..n - 2 * lag {
                acc += f.lo[i] * f.lo[i + 2 * lag];
            }
            let target = if lag == 0 { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).abs());
        }
        let sum: f64 = f.lo.iter().sum();
        worst = worst.max((sum - std::f64::consts::SQRT_2).abs());
        for t in 0..f.m {
            let mut mom = 0.0;
            let mut scale = 0.0;
            for (i, g) in f.hi.iter().enumerate() {
                let term = g * (i as f64).powi(t as i32);
                mom += term;
                scale += term.abs();
            }
            // Relative to the term magnitudes: raw moments grow like k^t.
            worst = worst.max(mom.abs() / scale.max(1.0));
        }
        worst
    }

    #[test]
    fn haar_exact() {
        let f = daubechies_filters(1).unwrap();
        assert_eq!(f.lo.len(), 2);
        assert!((f.lo[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(cqf_residual(&f) < 1e-15);
    }

    #[test]
    fn db2_matches_closed_form() {
        // h = (1+sqrt3, 3+sqrt3, 3-sqrt3, 1-sqrt3) / (4 sqrt2).
        let s3 = 3.0f64.sqrt();
        let k = 1.0 / (4.0 * std::f64::consts::SQRT_2);
        let expect = [(1.0 + s3) * k, (3.0 + s3) * k, (3.0 - s3) * k, (1.0 - s3) * k];
        let f = daubechies_filters(2).unwrap();
        for (a, b) in f.lo.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-13, "{:?} vs {:?}", f.lo, expect);
        }
    }

    #[test]
    fn db3_known_leading_tap() {
        let f = daubechies_filters(3).unwrap();
        assert_eq!(f.lo.len(), 6);
        assert!((f.lo[0] - 0.332670552950083).abs() < 1e-12, "{:?}", f.lo);
    }

    #[test]
    fn cqf_residuals_through_m10() {
        for m in 1..=10 {
            let f = daubechies_filters(m).unwrap();
            assert_eq!(f.lo.len(), 2 * m);
            let r = cqf_residual(&f);
            assert!(r < 1e-12, "m={m}: residual {r}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(daubechies_filters(0).is_err());
        assert!(daubechies_filters(11).is_err());
    }
}
