//! Hoelder semi-norms on compact regions and their locally weighted
//! boundary-blowup variant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::domain::{ball_family, DomainSpec, GridFunction};
use crate::error::{Error, Result};
use crate::seminorms::{HolderParams, Region, DEFAULT_PAIR_SEED};

/// All-pairs evaluation is used up to this many points; beyond it a seeded
/// subsample of as many random pairs plus every nearest-neighbor pair.
const EXHAUSTIVE_LIMIT: usize = 1 << 12;

/// Derivative fields of total order `ell` with their validity masks.
/// Order 0 is the function itself on its mask; order 1 gives the `d`
/// centered-difference components at step `h`, valid only where the full
/// stencil stays inside the mask (one-sided differences are never used, so
/// mask-edge points drop out of any supremum).
pub(crate) fn derivative_fields(
    g: &GridFunction,
    ell: u32,
) -> Result<Vec<(Vec<f64>, Vec<bool>)>> {
    match ell {
        0 => Ok(vec![(g.samples.clone(), g.mask.clone())]),
        1 => {
            let n = g.n();
            let h = g.spacing();
            let len = g.samples.len();
            let mut fields = Vec::new();
            let axes: &[(usize, usize)] = if g.d == 1 { &[(1, 0)] } else { &[(1, 0), (0, 1)] };
            for &(dx, dy) in axes {
                let mut field = vec![0.0; len];
                let mut valid = vec![false; len];
                for i in 0..len {
                    let (ix, iy) = if g.d == 1 { (i, 0) } else { (i % n, i / n) };
                    let (fx, fy) = (ix as isize, iy as isize);
                    let (px, py) = (fx + dx as isize, fy + dy as isize);
                    let (mx, my) = (fx - dx as isize, fy - dy as isize);
                    let in_bounds = px >= 0
                        && (px as usize) < n
                        && mx >= 0
                        && py >= 0
                        && my >= 0
                        && (if g.d == 1 { true } else { (py as usize) < n });
                    if !in_bounds {
                        continue;
                    }
                    let ip = if g.d == 1 { px as usize } else { py as usize * n + px as usize };
                    let im = if g.d == 1 { mx as usize } else { my as usize * n + mx as usize };
                    if g.mask[i] && g.mask[ip] && g.mask[im] {
                        field[i] = (g.samples[ip] - g.samples[im]) / (2.0 * h);
                        valid[i] = true;
                    }
                }
                fields.push((field, valid));
            }
            Ok(fields)
        }
        _ => Err(Error::InvalidParam(format!("derivative order {ell} unsupported"))),
    }
}

struct PairContext<'a> {
    fields: &'a [(Vec<f64>, Vec<bool>)],
    /// Flat sample indices of usable points.
    pts: Vec<usize>,
    /// Grid coordinates of the usable points, same order as `pts`.
    coords: Vec<(u32, u32)>,
    /// `(h * hypot(dx, dy))^{-alpha}` indexed by `|dx| * stride + |dy|`.
    weights: Vec<f64>,
    stride: usize,
}

impl PairContext<'_> {
    fn rate(&self, a: usize, b: usize) -> f64 {
        let (ax, ay) = self.coords[a];
        let (bx, by) = self.coords[b];
        let dx = ax.abs_diff(bx) as usize;
        let dy = ay.abs_diff(by) as usize;
        if dx == 0 && dy == 0 {
            return 0.0;
        }
        let w = self.weights[dx * self.stride + dy];
        let (ia, ib) = (self.pts[a], self.pts[b]);
        let mut num: f64 = 0.0;
        for (field, _) in self.fields {
            num = num.max((field[ia] - field[ib]).abs());
        }
        num * w
    }
}

/// Hoelder semi-norm of `g` on `region` with the default subsampling seed.
pub fn hoelder_seminorm(g: &GridFunction, region: &Region, prm: &HolderParams) -> Result<f64> {
    hoelder_seminorm_seeded(g, region, prm, DEFAULT_PAIR_SEED)
}

/// Hoelder semi-norm with an explicit subsampling seed: the maximum of
/// `|D f(x) - D f(y)| / |x-y|^alpha` over sampled point pairs of the region,
/// over all derivative components of order `ell`.
pub fn hoelder_seminorm_seeded(
    g: &GridFunction,
    region: &Region,
    prm: &HolderParams,
    seed: u64,
) -> Result<f64> {
    prm.validate()?;
    let fields = derivative_fields(g, prm.ell)?;
    hoelder_core(g, &fields, region, prm.alpha, seed)
}

/// Index range of cells whose centers can fall in `[lo, hi]` along one axis.
fn cell_range(lo: f64, hi: f64, origin: f64, h: f64, n: usize) -> (usize, usize) {
    let a = ((lo - origin) / h - 0.5 - 1e-9).ceil().max(0.0) as usize;
    let b = ((hi - origin) / h - 0.5 + 1e-9).floor().min(n as f64 - 1.0).max(0.0) as usize;
    (a.min(n - 1), b)
}

fn hoelder_core(
    g: &GridFunction,
    fields: &[(Vec<f64>, Vec<bool>)],
    region: &Region,
    alpha: f64,
    seed: u64,
) -> Result<f64> {
    let h = g.spacing();
    if region.extent() / h < 8.0 - 1e-9 {
        return Err(Error::GridTooCoarse(format!(
            "region extent {} spans fewer than 8 grid points at spacing {h}",
            region.extent()
        )));
    }
    let n = g.n();
    let rows = if g.d == 1 { 1 } else { n };
    // Scan only cells inside the region's bounding box.
    let (lo, hi) = match region {
        Region::Ball(b) => {
            ([b.center[0] - b.radius, b.center[1] - b.radius],
             [b.center[0] + b.radius, b.center[1] + b.radius])
        }
        Region::Cube { origin, side } => {
            (*origin, [origin[0] + side, origin[1] + side])
        }
    };
    let (x0, x1) = cell_range(lo[0], hi[0], g.bbox.origin[0], h, n);
    let (y0, y1) = if g.d == 1 {
        (0, 0)
    } else {
        cell_range(lo[1], hi[1], g.bbox.origin[1], h, rows)
    };
    let mut pts = Vec::new();
    let mut coords = Vec::new();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (u32::MAX, 0u32, u32::MAX, 0u32);
    for iy in y0..=y1 {
        for ix in x0..=x1 {
            let i = iy * n + ix;
            if !fields.iter().all(|(_, valid)| valid[i]) {
                continue;
            }
            if !region.contains(g.position(i), g.d) {
                continue;
            }
            pts.push(i);
            coords.push((ix as u32, iy as u32));
            min_x = min_x.min(ix as u32);
            max_x = max_x.max(ix as u32);
            min_y = min_y.min(iy as u32);
            max_y = max_y.max(iy as u32);
        }
    }
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let max_dx = max_x - min_x;
    let max_dy = max_y - min_y;
    let stride = max_dy as usize + 1;
    let mut weights = vec![0.0; (max_dx as usize + 1) * stride];
    for dx in 0..=max_dx as usize {
        for dy in 0..=max_dy as usize {
            if dx == 0 && dy == 0 {
                continue;
            }
            let dist = h * ((dx * dx + dy * dy) as f64).sqrt();
            weights[dx * stride + dy] = dist.powf(-alpha);
        }
    }
    let ctx = PairContext { fields, pts, coords, weights, stride };
    let len = ctx.pts.len();
    let mut best: f64 = 0.0;
    if len <= 512 {
        for a in 0..len {
            for b in (a + 1)..len {
                best = best.max(ctx.rate(a, b));
            }
        }
    } else if len <= EXHAUSTIVE_LIMIT {
        best = (0..len)
            .into_par_iter()
            .map(|a| {
                let mut local: f64 = 0.0;
                for b in (a + 1)..len {
                    local = local.max(ctx.rate(a, b));
                }
                local
            })
            .reduce(|| 0.0, f64::max);
    } else {
        // Nearest-neighbor pairs catch local spikes the subsample may miss.
        let mut lookup = vec![u32::MAX; n * rows];
        for (pos, &i) in ctx.pts.iter().enumerate() {
            lookup[i] = pos as u32;
        }
        for a in 0..len {
            let i = ctx.pts[a];
            let (ix, iy) = ctx.coords[a];
            if (ix as usize) + 1 < n && lookup[i + 1] != u32::MAX {
                best = best.max(ctx.rate(a, lookup[i + 1] as usize));
            }
            if g.d == 2 && (iy as usize) + 1 < rows && lookup[i + n] != u32::MAX {
                best = best.max(ctx.rate(a, lookup[i + n] as usize));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..EXHAUSTIVE_LIMIT {
            let a = rng.random_range(0..len);
            let b = rng.random_range(0..len);
            if a != b {
                best = best.max(ctx.rate(a, b));
            }
        }
    }
    Ok(best)
}

/// Locally weighted Hoelder semi-norm: the supremum over the ball family of
/// `delta_K^gamma` times the Hoelder semi-norm on `K`. Requires
/// `prm.gamma`; the family uses dyadic radii down to the finest resolvable
/// level.
pub fn weighted_hoelder_seminorm(
    g: &GridFunction,
    domain: &DomainSpec,
    prm: &HolderParams,
    c: f64,
) -> Result<f64> {
    prm.validate()?;
    let gamma = prm.gamma.ok_or_else(|| {
        Error::InvalidParam("weighted Hoelder semi-norm requires a weight exponent".into())
    })?;
    // Finest radius the pair sampler can resolve: 2 * 2^-j >= 8 h.
    let j_max = -(4.0 * g.spacing()).log2().ceil();
    if j_max < 1.0 {
        return Err(Error::GridTooCoarse(format!(
            "level {} grid cannot resolve any dyadic ball",
            g.level
        )));
    }
    let balls = ball_family(domain, g.level, c, 1..=(j_max as u32))?;
    if balls.is_empty() {
        return Err(Error::Degenerate(
            "ball family is empty: no dyadic ball fits the domain at these levels".into(),
        ));
    }
    let fields = derivative_fields(g, prm.ell)?;
    let best = balls
        .par_iter()
        .map(|ball| -> Result<f64> {
            let val =
                hoelder_core(g, &fields, &Region::Ball(*ball), prm.alpha, DEFAULT_PAIR_SEED)?;
            Ok(ball.delta.powf(gamma) * val)
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Ball, DomainSpec};

    fn ball(center: [f64; 2], radius: f64, delta: f64) -> Region {
        Region::Ball(Ball { center, radius, delta })
    }

    #[test]
    fn constant_is_zero() {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, 6, |_| 3.25);
        let region = ball([0.5, 0.5], 0.25, 0.25);
        for ell in [0u32, 1] {
            let v = hoelder_seminorm(&g, &region, &HolderParams::new(ell, 0.5)).unwrap();
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn abs_value_lipschitz_constant() {
        // Exhaustive pairs on a 1-D interval right of the kink: the
        // Lipschitz quotient of |x| is exactly 1 there.
        let g = GridFunction::sample_1d(0.0, 1.0, 8, |x| (x - 0.3).abs());
        let region = ball([0.65, 0.0], 0.125, 0.2);
        let v = hoelder_seminorm(&g, &region, &HolderParams::new(0, 1.0)).unwrap();
        assert!((v - 1.0).abs() < 0.02, "got {v}");
    }

    #[test]
    fn flat_singularity_gradient_exponent() {
        // grad of the flat model for p=4 is Hoelder-1/3 and no better: the
        // 1/3 value stays bounded under refinement, the 1/2 value grows.
        // The ball is small enough that every level uses exhaustive pairs.
        let domain = DomainSpec::ScaledCube { origin: [-1.0, -1.0], side: 2.0 };
        let region = ball([0.0, 0.0], 0.0625, 0.9);
        let mut third = Vec::new();
        let mut half = Vec::new();
        for level in 7..=10u32 {
            let g = crate::domain::flat_singularity(4.0, &domain, level).unwrap();
            third.push(
                hoelder_seminorm(&g, &region, &HolderParams::new(1, 1.0 / 3.0)).unwrap(),
            );
            half.push(hoelder_seminorm(&g, &region, &HolderParams::new(1, 0.5)).unwrap());
        }
        let spread = third.iter().cloned().fold(f64::MIN, f64::max)
            / third.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1.6, "1/3-values not stable: {third:?}");
        for w in half.windows(2) {
            assert!(w[1] > w[0], "1/2-values not growing: {half:?}");
        }
        assert!(half[3] / half[0] > 1.3, "growth too weak: {half:?}");
    }

    #[test]
    fn homogeneity() {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, 6, |x| (x[0] * 3.0).sin() * x[1]);
        let mut scaled = g.clone();
        for v in scaled.samples.iter_mut() {
            *v *= -2.5;
        }
        let region = ball([0.5, 0.5], 0.3, 0.2);
        let prm = HolderParams::new(1, 0.5);
        let a = hoelder_seminorm(&g, &region, &prm).unwrap();
        let b = hoelder_seminorm(&scaled, &region, &prm).unwrap();
        assert!((b - 2.5 * a).abs() < 1e-12 * b.abs().max(1.0));
    }

    #[test]
    fn coarse_region_rejected() {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, 5, |x| x[0]);
        let region = ball([0.5, 0.5], 0.05, 0.4);
        assert!(matches!(
            hoelder_seminorm(&g, &region, &HolderParams::new(0, 1.0)),
            Err(Error::GridTooCoarse(_))
        ));
    }

    #[test]
    fn weighted_gamma_monotonicity() {
        // delta^{1.0} <= delta^{0.5} * max(1, diam)^{0.5} ball-by-ball, so
        // the suprema inherit the bound.
        let domain = DomainSpec::UnitSquare;
        let g = crate::domain::smooth_bump(
            &domain,
            7,
            Ball { center: [0.5, 0.5], radius: 0.3, delta: 0.2 },
        )
        .unwrap();
        let v1 = weighted_hoelder_seminorm(&g, &domain, &HolderParams::weighted(0, 1.0, 1.0), 2.0)
            .unwrap();
        let vh = weighted_hoelder_seminorm(&g, &domain, &HolderParams::weighted(0, 1.0, 0.5), 2.0)
            .unwrap();
        assert!(v1 > 0.0 && vh > 0.0);
        assert!(v1 <= vh * 1.0f64.max(2.0f64.sqrt()).sqrt() + 1e-12);
    }

    #[test]
    fn sqrt_face_weight_detects_blowup() {
        // g = x1^{1/2}: Lipschitz constant on a ball at distance delta from
        // the face x1 = 0 scales like delta^{-1/2}; the weighted semi-norm
        // is stable for gamma = 0.6 and grows like 2^{0.1 J} for gamma = 0.4.
        let domain = DomainSpec::UnitSquare;
        let value = |level: u32, gamma: f64| {
            let g = GridFunction::sample(&domain, level, |x| x[0].sqrt());
            weighted_hoelder_seminorm(&g, &domain, &HolderParams::weighted(0, 1.0, gamma), 2.0)
                .unwrap()
        };
        let stable = (value(8, 0.6), value(6, 0.6));
        let growing = (value(8, 0.4), value(6, 0.4));
        assert!(
            (stable.0 / stable.1) < 1.25,
            "gamma=0.6 should be stable: {stable:?}"
        );
        assert!(
            (growing.0 / growing.1) > 1.08,
            "gamma=0.4 should grow: {growing:?}"
        );
    }

    #[test]
    fn weighted_requires_gamma() {
        let g = GridFunction::sample(&DomainSpec::UnitSquare, 6, |x| x[0]);
        let err = weighted_hoelder_seminorm(
            &g,
            &DomainSpec::UnitSquare,
            &HolderParams::new(0, 1.0),
            2.0,
        );
        assert!(err.is_err());
    }
}
