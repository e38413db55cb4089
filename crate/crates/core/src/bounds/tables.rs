//! Besov regularity tables for the p-Poisson problem on plane domains.
//!
//! Each table is a finite list of (parameter region, closed formula) lines;
//! the classifier decides membership with exact rational arithmetic so that
//! inputs meant to sit on a printed boundary (p = 4/3, q = 4, q = 2p, ...)
//! actually land on it. Floating-point inputs are first snapped to the best
//! rational approximation with denominator at most 10^6 when one lies within
//! 1e-9; otherwise the exact binary value of the float is used. Since every
//! table value is continuous across its region boundaries, snapping never
//! changes a reported value by more than the snap distance.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{s_star, BoundResult, Integrability};
use crate::error::{Error, Result};

/// Boundary regularity class of the plane domain a table applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainClass {
    Lipschitz,
    Polygonal,
}

impl DomainClass {
    pub fn label(self) -> &'static str {
        match self {
            DomainClass::Lipschitz => "lipschitz",
            DomainClass::Polygonal => "polygonal",
        }
    }
}

impl std::str::FromStr for DomainClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lipschitz" | "lip" => Ok(DomainClass::Lipschitz),
            "polygonal" | "polygon" | "poly" => Ok(DomainClass::Polygonal),
            other => Err(Error::InvalidParam(format!("unknown domain class '{other}'"))),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::from_float(n as f64).unwrap() / BigRational::from_float(d as f64).unwrap()
}

/// Best rational approximation of `x` with denominator at most 10^6 lying
/// within 1e-9 of `x`, computed from the continued fraction of the exact
/// binary value; falls back to that exact value when no small-denominator
/// rational is close enough.
fn snap(x: f64) -> BigRational {
    let exact = BigRational::from_float(x).expect("value must be finite");
    let tol = BigRational::from_float(1e-9).unwrap();
    let max_den = BigRational::from_float(1e6).unwrap();
    // Convergents h/k of the continued fraction of `exact`; the first one
    // within tolerance is the smallest-denominator candidate.
    let (mut h_prev, mut k_prev) = (BigRational::one(), BigRational::zero());
    let (mut h, mut k) = (exact.floor(), BigRational::one());
    let mut rem = &exact - exact.floor();
    for _ in 0..64 {
        if k > max_den {
            break;
        }
        let conv = &h / &k;
        if (&conv - &exact).abs() <= tol {
            return conv;
        }
        if rem.is_zero() {
            break;
        }
        rem = rem.recip();
        let a = rem.floor();
        rem = &rem - &a;
        let h_new = &a * &h + &h_prev;
        let k_new = &a * &k + &k_prev;
        h_prev = h;
        h = h_new;
        k_prev = k;
        k = k_new;
    }
    exact
}

/// Validated table input: `p` and finite `q` as exact rationals.
struct TableInput {
    p: f64,
    q: Integrability,
    pr: BigRational,
    qr: Option<BigRational>,
    pprime: BigRational,
}

impl TableInput {
    fn new(p: f64, q: Integrability) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidParam(format!("p must lie in (1, inf), got {p}")));
        }
        let pr = snap(p);
        if pr <= BigRational::one() {
            return Err(Error::InvalidParam(format!("p must lie in (1, inf), got {p}")));
        }
        let pprime = &pr / (&pr - BigRational::one());
        let qr = match q {
            Integrability::Inf => None,
            Integrability::Finite(qv) => {
                if !qv.is_finite() {
                    return Err(Error::InvalidParam(format!("q must be finite or inf, got {qv}")));
                }
                let qr = snap(qv);
                if qr <= rat(2, 1) {
                    return Err(Error::Uncovered(format!(
                        "tables require q > 2, got q = {qv}"
                    )));
                }
                Some(qr)
            }
        };
        let input = TableInput { p, q, pr, qr, pprime };
        if !input.q_ge(&input.pprime.clone()) {
            return Err(Error::Uncovered(format!(
                "tables require q >= p' = {}, got q = {}",
                input.pprime.to_f64().unwrap(),
                q
            )));
        }
        Ok(input)
    }

    fn q_ge(&self, r: &BigRational) -> bool {
        match &self.qr {
            Some(q) => q >= r,
            None => true,
        }
    }

    fn q_gt(&self, r: &BigRational) -> bool {
        match &self.qr {
            Some(q) => q > r,
            None => true,
        }
    }

    fn q_le(&self, r: &BigRational) -> bool {
        !self.q_gt(r)
    }

    /// `2 - 2/q`, with value `2` at `q = inf`.
    fn two_minus_2_over_q(&self) -> f64 {
        2.0 - 2.0 * self.q.recip()
    }

    /// `1 + (1 - 2/q)/(p - 1)`, with `2/q = 0` at `q = inf`.
    fn high_p_value(&self) -> f64 {
        1.0 + (1.0 - 2.0 * self.q.recip()) / (self.p - 1.0)
    }
}

fn line(value: f64, n: u32, region: &str) -> BoundResult {
    BoundResult {
        value: super::BoundValue::Exact(value),
        branch: format!("line {n}: {region}"),
        caveat: None,
    }
}

/// Largest adaptivity-scale smoothness of p-Poisson solutions on bounded
/// Lipschitz plane domains with right-hand side in `L_q`, as a piecewise
/// closed form in `(p, q)`. Requires `1 < p < inf` and `p' <= q <= inf`,
/// `q > 2`; inputs outside every line are reported as uncovered.
pub fn sigma_bar_lipschitz(p: f64, q: Integrability) -> Result<BoundResult> {
    let inp = TableInput::new(p, q)?;
    let four_thirds = rat(4, 3);
    let two = rat(2, 1);
    let four = rat(4, 1);
    if inp.pr < four_thirds {
        return Ok(line(1.5, 1, "1 < p < 4/3"));
    }
    if inp.pr == four_thirds && inp.q_gt(&four) {
        return Ok(line(1.5, 2, "p = 4/3, q > 4"));
    }
    if inp.pr > four_thirds && inp.pr <= two {
        // Threshold (1/p - 1/2)^{-1}, infinite at p = 2.
        let half_gap = inp.pr.recip() - rat(1, 2);
        let above_threshold = if half_gap.is_zero() {
            inp.q.is_inf()
        } else {
            inp.q_ge(&half_gap.recip())
        };
        if above_threshold {
            return Ok(line(
                3.0 - 2.0 / inp.p,
                3,
                "4/3 < p <= 2, q >= (1/p - 1/2)^{-1}",
            ));
        }
        if inp.q_gt(&four) {
            return Ok(line(
                inp.two_minus_2_over_q(),
                4,
                "4/3 < p <= 2, 4 < q < (1/p - 1/2)^{-1}",
            ));
        }
    }
    if inp.pr >= four_thirds && inp.pr < two && inp.q_le(&four) {
        return Ok(line(1.5, 5, "4/3 <= p < 2, p' <= q <= 4"));
    }
    if inp.pr == two && inp.q_le(&four) {
        return Ok(line(1.5, 6, "p = 2, 2 < q <= 4"));
    }
    if inp.pr > two {
        let two_p = &two * &inp.pr;
        if inp.q_gt(&two_p) {
            return Ok(line(inp.high_p_value(), 7, "p > 2, q > 2p"));
        }
        return Ok(line(1.0 + 1.0 / inp.p, 8, "p > 2, 2 < q <= 2p"));
    }
    Err(Error::Uncovered(format!("no table line covers p = {p}, q = {q}")))
}

/// Largest adaptivity-scale smoothness of p-Poisson solutions on bounded
/// polygonal plane domains with right-hand side in `L_q`. Same parameter
/// domain as the Lipschitz table; the bound is never smaller.
pub fn sigma_bar_polygonal(p: f64, q: Integrability) -> Result<BoundResult> {
    let inp = TableInput::new(p, q)?;
    let four_thirds = rat(4, 3);
    let two = rat(2, 1);
    let four = rat(4, 1);
    if inp.pr < four_thirds {
        return Ok(line(inp.two_minus_2_over_q(), 1, "1 < p < 4/3"));
    }
    if inp.pr == four_thirds && inp.q_gt(&four) {
        return Ok(line(inp.two_minus_2_over_q(), 2, "p = 4/3, q > 4"));
    }
    if inp.pr > four_thirds && inp.pr <= two && inp.q_gt(&four) {
        return Ok(line(inp.two_minus_2_over_q(), 3, "4/3 < p <= 2, q > 4"));
    }
    if inp.pr >= four_thirds && inp.pr < two && inp.q_le(&four) {
        return Ok(line(1.5, 4, "4/3 <= p < 2, p' <= q <= 4"));
    }
    if inp.pr == two && inp.q_le(&four) {
        return Ok(line(1.5, 5, "p = 2, 2 < q <= 4"));
    }
    if inp.pr > two {
        let two_p = &two * &inp.pr;
        if inp.q_gt(&two_p) {
            return Ok(line(inp.high_p_value(), 6, "p > 2, q > 2p"));
        }
        return Ok(line(1.0 + 1.0 / inp.p, 7, "p > 2, 2 < q <= 2p"));
    }
    Err(Error::Uncovered(format!("no table line covers p = {p}, q = {q}")))
}

/// Table dispatch by domain class.
pub fn sigma_bar(class: DomainClass, p: f64, q: Integrability) -> Result<BoundResult> {
    match class {
        DomainClass::Lipschitz => sigma_bar_lipschitz(p, q),
        DomainClass::Polygonal => sigma_bar_polygonal(p, q),
    }
}

/// One point of the regularity-gain profile: the adaptivity-scale bound
/// next to the Sobolev ceiling it should be compared with.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub p: f64,
    pub sigma_bar: f64,
    pub s_star: f64,
    pub branch: String,
}

/// Profile of the Besov bound against the Sobolev ceiling over a grid of
/// integrabilities `p`, at fixed right-hand-side class `L_q`.
pub fn figure1_data(
    p_grid: &[f64],
    q: Integrability,
    class: DomainClass,
) -> Result<Vec<FigureRow>> {
    p_grid
        .iter()
        .map(|&p| {
            let b = sigma_bar(class, p, q)?;
            Ok(FigureRow {
                p,
                sigma_bar: b.value.supremum(),
                s_star: s_star(p)?,
                branch: b.branch,
            })
        })
        .collect()
}

/// CSV rendering of the profile, one row per grid point.
pub fn figure1_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from("p,sigma_bar,s_star,branch\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},\"{}\"\n",
            crate::jsonio::fmt_f64(r.p),
            crate::jsonio::fmt_f64(r.sigma_bar),
            crate::jsonio::fmt_f64(r.s_star),
            r.branch
        ));
    }
    out
}
