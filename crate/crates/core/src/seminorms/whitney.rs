//! Whitney local approximation errors: distance of a grid function to
//! polynomials of bounded total degree on a cube, in L_2 (least squares)
//! or L_inf (discrete Chebyshev via linear programming).

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::domain::{GridFunction, Lp};
use crate::error::{Error, Result};
use crate::seminorms::Region;
use crate::util::Kahan;

/// Monomial exponent pairs of total degree <= k.
fn exponents(d: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=k {
        if d == 1 {
            out.push((a, 0));
        } else {
            for b in 0..=(k - a) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Best-approximation error `inf_P ||g - P||_{L_p(Q)}` over polynomials of
/// total degree <= k, from the grid points inside the cube. Supported
/// norms: L_2 (normal-equation least squares, which the midpoint quadrature
/// makes exact) and L_inf (discrete Chebyshev linear program).
pub fn whitney_error(g: &GridFunction, cube: &Region, k: usize, p: Lp) -> Result<f64> {
    let Region::Cube { origin, side } = cube else {
        return Err(Error::InvalidParam("Whitney error is defined on cubes".into()));
    };
    if k > 4 {
        return Err(Error::InvalidParam(format!("degree bound {k} exceeds the supported 4")));
    }
    let exps = exponents(g.d, k);
    let nb = exps.len();
    let mut pts = Vec::new();
    for i in 0..g.samples.len() {
        if g.mask[i] && cube.contains(g.position(i), g.d) {
            pts.push(i);
        }
    }
    if pts.len() < nb {
        return Err(Error::Degenerate(format!(
            "cube holds {} grid points but the degree-{k} fit needs {nb}",
            pts.len()
        )));
    }
    // Monomials in cube-local coordinates keep the basis well conditioned.
    let design: Vec<f64> = pts
        .iter()
        .flat_map(|&i| {
            let x = g.position(i);
            let u = (x[0] - origin[0]) / side;
            let v = if g.d == 2 { (x[1] - origin[1]) / side } else { 0.0 };
            exps.iter().map(move |&(a, b)| u.powi(a as i32) * v.powi(b as i32))
        })
        .collect();
    match p {
        Lp::P(two) if (two - 2.0).abs() < 1e-12 => {
            // Normal equations; the basis is tiny and scaled, so this is
            // numerically comfortable.
            let mut gram = vec![0.0; nb * nb];
            let mut rhs = vec![0.0; nb];
            for (r, &i) in pts.iter().enumerate() {
                let row = &design[r * nb..(r + 1) * nb];
                for a in 0..nb {
                    rhs[a] += row[a] * g.samples[i];
                    for b in a..nb {
                        gram[a * nb + b] += row[a] * row[b];
                    }
                }
            }
            for a in 0..nb {
                for b in 0..a {
                    gram[a * nb + b] = gram[b * nb + a];
                }
            }
            let coef = solve_dense(&mut gram, &mut rhs, nb)?;
            let cell = g.spacing().powi(g.d as i32);
            let mut sum = Kahan::default();
            for (r, &i) in pts.iter().enumerate() {
                let row = &design[r * nb..(r + 1) * nb];
                let fit: f64 = row.iter().zip(&coef).map(|(a, c)| a * c).sum();
                sum.add((g.samples[i] - fit).powi(2) * cell);
            }
            Ok(sum.total().sqrt())
        }
        Lp::Inf => {
            // minimize eps subject to -eps <= g_i - P(x_i) <= eps.
            let mut problem = Problem::new(OptimizationDirection::Minimize);
            let coef_vars: Vec<_> = (0..nb)
                .map(|_| problem.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
                .collect();
            let eps = problem.add_var(1.0, (0.0, f64::INFINITY));
            for (r, &i) in pts.iter().enumerate() {
                let row = &design[r * nb..(r + 1) * nb];
                let mut upper: Vec<(minilp::Variable, f64)> =
                    coef_vars.iter().copied().zip(row.iter().copied()).collect();
                upper.push((eps, 1.0));
                problem.add_constraint(&upper[..], ComparisonOp::Ge, g.samples[i]);
                let mut lower: Vec<(minilp::Variable, f64)> =
                    coef_vars.iter().copied().zip(row.iter().copied()).collect();
                lower.push((eps, -1.0));
                problem.add_constraint(&lower[..], ComparisonOp::Le, g.samples[i]);
            }
            let solution = problem
                .solve()
                .map_err(|e| Error::Solver(format!("Chebyshev linear program failed: {e}")))?;
            Ok(solution[eps].max(0.0))
        }
        _ => Err(Error::InvalidParam(
            "Whitney error supports the L_2 and L_inf norms only".into(),
        )),
    }
}

/// Gaussian elimination with partial pivoting; `a` is n x n row-major and
/// both buffers are clobbered.
fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>> {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| {
                a[r1 * n + col].abs().partial_cmp(&a[r2 * n + col].abs()).unwrap()
            })
            .unwrap();
        if a[pivot * n + col].abs() < 1e-300 {
            return Err(Error::Degenerate("singular normal equations".into()));
        }
        if pivot != col {
            for c in 0..n {
                a.swap(col * n + c, pivot * n + c);
            }
            b.swap(col, pivot);
        }
        for r in (col + 1)..n {
            let f = a[r * n + col] / a[col * n + col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] -= f * a[col * n + c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in (r + 1)..n {
            acc -= a[r * n + c] * x[c];
        }
        x[r] = acc / a[r * n + r];
    }
    Ok(x)
}
