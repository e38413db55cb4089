//! Best n-term and uniform wavelet approximation with error-decay slopes.
//!
//! Best n-term approximation keeps the n detail coefficients that are
//! largest after renormalizing to the error norm `L_p` (stored values in
//! the `p_norm = p` convention are exactly the coefficients against
//! L_p-normalized wavelets, so the sorted tail is the optimal selection in
//! coefficient space). Uniform truncation keeps every detail below a cut
//! level. Errors are measured in `L_p` over the domain interior — the mask
//! excludes zero-extension artifacts outside it — against the full
//! reconstruction, which equals the analyzed samples to rounding by perfect
//! reconstruction.

use rayon::prelude::*;

use crate::domain::{GridFunction, Lp};
use crate::error::{Error, Result};
use crate::wavelet::{synthesize, WaveletCoeffs, WaveletIndex};

/// One measured approximation-error curve with its fitted decay rate:
/// `error ≈ C n^{-slope}` over the recorded budget window.
#[derive(Debug, Clone)]
pub struct ApproxCurve {
    pub budgets: Vec<usize>,
    pub errors: Vec<f64>,
    pub slope: f64,
    /// Budget window `(n_lo, n_hi)` the slope was fitted on.
    pub fit_range: (f64, f64),
}

/// Adaptive vs uniform error curves at matched budgets, one row per cut
/// level, with slopes fitted on a shared window.
#[derive(Debug, Clone)]
pub struct ComparisonCurve {
    pub budgets: Vec<usize>,
    pub error_adaptive: Vec<f64>,
    pub error_uniform: Vec<f64>,
    pub slope_adaptive: f64,
    pub slope_uniform: f64,
    pub window: (f64, f64),
}

fn check_error_norm(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidParam(format!("error norm p must be in (0, inf), got {p}")));
    }
    Ok(())
}

/// All detail indices of `cp` (already in the target storage convention)
/// ranked by decreasing magnitude, ties broken by ascending (j, k, e).
fn rank(cp: &WaveletCoeffs) -> Vec<(WaveletIndex, f64)> {
    let mut entries: Vec<(WaveletIndex, f64)> = cp.iter_details().collect();
    entries
        .par_sort_unstable_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then_with(|| a.0.cmp(&b.0)));
    entries
}

/// Detail indices ranked by decreasing relevance for `L_p` approximation:
/// stored magnitude in the `p_norm = p` convention, deterministic
/// lexicographic tie-break.
pub fn ranked_details(coeffs: &WaveletCoeffs, p: f64) -> Result<Vec<(WaveletIndex, f64)>> {
    check_error_norm(p)?;
    Ok(rank(&coeffs.to_p_norm(p)?))
}

/// Reconstruction from the coarse part plus the selected details only.
fn synth_selection(cp: &WaveletCoeffs, selection: &[WaveletIndex]) -> Result<GridFunction> {
    let mut kept = WaveletCoeffs::zeros(cp.m, cp.j0, cp.level, cp.p_norm, &cp.domain)?;
    kept.bbox = cp.bbox;
    kept.coarse.clone_from(&cp.coarse);
    for &idx in selection {
        *kept.detail_mut(idx) = cp.detail(idx);
    }
    synthesize(&kept)
}

/// Reconstruction from the coarse part plus all details below `j_cut`.
fn synth_uniform(cp: &WaveletCoeffs, j_cut: u32) -> Result<GridFunction> {
    let mut kept = cp.clone();
    for lev in &mut kept.details {
        if lev.j >= j_cut {
            for plane in &mut lev.planes {
                plane.iter_mut().for_each(|v| *v = 0.0);
            }
        }
    }
    synthesize(&kept)
}

/// Number of stored detail coefficients below level `j_cut`.
fn count_below(cp: &WaveletCoeffs, j_cut: u32) -> usize {
    cp.details.iter().filter(|l| l.j < j_cut).map(|l| 3 * l.planes[0].len()).sum()
}

/// Best n-term approximation in `L_p`: keeps the coarse part and the `n`
/// largest renormalized details, and returns the kept index set with the
/// interior `L_p` error of the truncated reconstruction.
pub fn best_n_term(
    coeffs: &WaveletCoeffs,
    n: usize,
    p: f64,
) -> Result<(Vec<WaveletIndex>, f64)> {
    check_error_norm(p)?;
    let cp = coeffs.to_p_norm(p)?;
    let ranked = rank(&cp);
    let selection: Vec<WaveletIndex> = ranked.iter().take(n).map(|e| e.0).collect();
    let reference = synthesize(&cp)?;
    let approx = synth_selection(&cp, &selection)?;
    let error = approx.lp_distance(&reference, Lp::P(p), true)?;
    Ok((selection, error))
}

/// Uniform approximation: keeps everything below `j_cut` and returns the
/// kept count together with the interior `L_p` error.
pub fn uniform_truncation(coeffs: &WaveletCoeffs, j_cut: u32, p: f64) -> Result<(usize, f64)> {
    check_error_norm(p)?;
    if j_cut < coeffs.j0 || j_cut > coeffs.level {
        return Err(Error::InvalidParam(format!(
            "j_cut = {j_cut} must lie in [{}, {}]",
            coeffs.j0, coeffs.level
        )));
    }
    let cp = coeffs.to_p_norm(p)?;
    let count = count_below(&cp, j_cut);
    let reference = synthesize(&cp)?;
    let approx = synth_uniform(&cp, j_cut)?;
    let error = approx.lp_distance(&reference, Lp::P(p), true)?;
    Ok((count, error))
}

/// Least-squares decay exponent of `error ≈ C n^{-slope}` over the points
/// with `n` inside `window` (inclusive): the slope of `-log error` against
/// `log n`. Requires at least 4 points in the window, all with positive
/// error — a zero error means the representation is exact there and no
/// rate is defined.
pub fn decay_slope(points: &[(f64, f64)], window: (f64, f64)) -> Result<f64> {
    let sel: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(n, _)| n >= window.0 && n <= window.1)
        .collect();
    if sel.len() < 4 {
        return Err(Error::InvalidParam(format!(
            "slope fit needs at least 4 points in the window, got {}",
            sel.len()
        )));
    }
    for &(n, e) in &sel {
        if !(e > 0.0) {
            return Err(Error::Degenerate(format!(
                "error at n = {n} is zero: representation exact, decay rate undefined"
            )));
        }
        if !(n > 0.0) {
            return Err(Error::InvalidParam(format!("budget n = {n} must be positive")));
        }
    }
    let xs: Vec<f64> = sel.iter().map(|&(n, _)| n.ln()).collect();
    let ys: Vec<f64> = sel.iter().map(|&(_, e)| -e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all budgets in the window coincide".into()));
    }
    Ok(sxy / sxx)
}

/// Default fit window: the middle two decades of the positive budgets, to
/// avoid both the coarse regime and the machine-precision floor; falls back
/// to the full range when it spans at most two decades or the middle window
/// holds fewer than 4 points.
pub fn default_window(points: &[(f64, f64)]) -> (f64, f64) {
    let ns: Vec<f64> =
        points.iter().filter(|&&(n, e)| n > 0.0 && e > 0.0).map(|&(n, _)| n).collect();
    if ns.is_empty() {
        return (1.0, 1.0);
    }
    let lo = ns.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ns.iter().copied().fold(0.0f64, f64::max);
    if (hi / lo).log10() <= 2.0 {
        return (lo, hi);
    }
    let c = (lo.log10() + hi.log10()) / 2.0;
    let w = (10f64.powf(c - 1.0), 10f64.powf(c + 1.0));
    if ns.iter().filter(|&&n| n >= w.0 && n <= w.1).count() >= 4 {
        w
    } else {
        (lo, hi)
    }
}

/// Points kept for slope fitting: positive budget and error above the
/// machine-precision floor relative to the largest error. Points dropped
/// here indicate the curve has hit quadrature/rounding accuracy (or is
/// exactly zero), so no decay rate can be read off them.
pub fn fit_points(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let max_e = points.iter().map(|&(_, e)| e).fold(0.0f64, f64::max);
    let floor = max_e * 1e-12;
    points.iter().copied().filter(|&(n, e)| n > 0.0 && e > floor).collect()
}

/// Best n-term error curve over the given budgets (sorted and deduplicated),
/// with the decay slope fitted on the default window.
pub fn approx_curve(coeffs: &WaveletCoeffs, budgets: &[usize], p: f64) -> Result<ApproxCurve> {
    let (budgets, errors) = adaptive_rows(coeffs, budgets, p)?;
    let pts: Vec<(f64, f64)> =
        budgets.iter().zip(&errors).map(|(&n, &e)| (n as f64, e)).collect();
    let usable = fit_points(&pts);
    let fit_range = default_window(&usable);
    let slope = decay_slope(&usable, fit_range)?;
    Ok(ApproxCurve { budgets, errors, slope, fit_range })
}

/// Matched-budget rows `(n, adaptive error, uniform error)` for every
/// interior cut level, without any slope fitting: the raw data behind
/// `comparison_curve`, usable even when a slope is undefined (exact
/// representation or error at the quadrature floor).
pub fn comparison_rows(coeffs: &WaveletCoeffs, p: f64) -> Result<Vec<(usize, f64, f64)>> {
    check_error_norm(p)?;
    let cp = coeffs.to_p_norm(p)?;
    let ranked = rank(&cp);
    let reference = synthesize(&cp)?;
    let cuts: Vec<u32> = (cp.j0 + 1..cp.level).collect();
    if cuts.len() < 4 {
        return Err(Error::InvalidParam(format!(
            "comparison needs at least 4 detail levels, got {}",
            cuts.len()
        )));
    }
    cuts.par_iter()
        .map(|&jc| {
            let n = count_below(&cp, jc);
            let unif = synth_uniform(&cp, jc)?;
            let e_u = unif.lp_distance(&reference, Lp::P(p), true)?;
            let sel: Vec<WaveletIndex> = ranked.iter().take(n).map(|e| e.0).collect();
            let adap = synth_selection(&cp, &sel)?;
            let e_a = adap.lp_distance(&reference, Lp::P(p), true)?;
            Ok((n, e_a, e_u))
        })
        .collect()
}

/// Best n-term errors at the given budgets (sorted and deduplicated),
/// without slope fitting.
pub fn adaptive_rows(
    coeffs: &WaveletCoeffs,
    budgets: &[usize],
    p: f64,
) -> Result<(Vec<usize>, Vec<f64>)> {
    check_error_norm(p)?;
    let cp = coeffs.to_p_norm(p)?;
    let ranked = rank(&cp);
    let mut budgets: Vec<usize> = budgets.to_vec();
    budgets.sort_unstable();
    budgets.dedup();
    let reference = synthesize(&cp)?;
    let errors: Vec<f64> = budgets
        .par_iter()
        .map(|&n| {
            let sel: Vec<WaveletIndex> = ranked.iter().take(n).map(|e| e.0).collect();
            let approx = synth_selection(&cp, &sel)?;
            approx.lp_distance(&reference, Lp::P(p), true)
        })
        .collect::<Result<_>>()?;
    Ok((budgets, errors))
}

/// Adaptive vs uniform comparison: for every interior cut level, the
/// uniform error and the best n-term error at the same budget, plus decay
/// slopes fitted on a shared window.
pub fn comparison_curve(coeffs: &WaveletCoeffs, p: f64) -> Result<ComparisonCurve> {
    let rows = comparison_rows(coeffs, p)?;
    let budgets: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let error_adaptive: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let error_uniform: Vec<f64> = rows.iter().map(|r| r.2).collect();
    // Shared window: budgets where both curves sit above the noise floor.
    let pts_a: Vec<(f64, f64)> =
        budgets.iter().zip(&error_adaptive).map(|(&n, &e)| (n as f64, e)).collect();
    let pts_u: Vec<(f64, f64)> =
        budgets.iter().zip(&error_uniform).map(|(&n, &e)| (n as f64, e)).collect();
    let good_a = fit_points(&pts_a);
    let good_u = fit_points(&pts_u);
    let shared: Vec<(f64, f64)> = good_a
        .iter()
        .copied()
        .filter(|&(n, _)| good_u.iter().any(|&(nu, _)| nu == n))
        .collect();
    let window = default_window(&shared);
    let slope_adaptive = decay_slope(&good_a, window)?;
    let slope_uniform = decay_slope(&good_u, window)?;
    Ok(ComparisonCurve {
        budgets,
        error_adaptive,
        error_uniform,
        slope_adaptive,
        slope_uniform,
        window,
    })
}

/// CSV rendering of a comparison curve: `n,error_adaptive,error_uniform`.
pub fn comparison_csv(c: &ComparisonCurve) -> String {
    let mut out = String::from("n,error_adaptive,error_uniform\n");
    for ((&n, &ea), &eu) in c.budgets.iter().zip(&c.error_adaptive).zip(&c.error_uniform) {
        out.push_str(&format!(
            "{n},{},{}\n",
            crate::jsonio::fmt_f64(ea),
            crate::jsonio::fmt_f64(eu)
        ));
    }
    out
}

/// JSON summary of a comparison curve.
pub fn comparison_json(c: &ComparisonCurve) -> serde_json::Value {
    serde_json::json!({
        "slope_adaptive": c.slope_adaptive,
        "slope_uniform": c.slope_uniform,
        "window": [c.window.0, c.window.1],
    })
}
