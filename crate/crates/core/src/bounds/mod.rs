//! Closed-form regularity bounds: Sobolev ceilings for the p-Poisson
//! problem, local Hoelder exponents, admissible weight thresholds, the
//! embedding bound on the adaptivity scale, and the explicit Besov
//! regularity tables for Lipschitz and polygonal plane domains.
//!
//! Every operation checks its own domain of validity and reports which
//! branch of a piecewise formula fired, so table lookups stay auditable.
//! Open bounds of the form "any number less than X" are first-class values
//! that only turn into numbers when explicitly materialized.

mod tables;

pub use tables::{
    figure1_csv, figure1_data, sigma_bar, sigma_bar_lipschitz, sigma_bar_polygonal, DomainClass,
    FigureRow,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default margin used to materialize open bounds.
pub const DEFAULT_EPS: f64 = 1e-3;

/// A regularity bound: either the printed number itself or an open supremum
/// ("any number less than X").
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Exact(f64),
    OpenSup(f64),
}

impl BoundValue {
    /// The bound as a number: exact values unchanged, open bounds backed
    /// off by `eps` so an open supremum is never silently treated as
    /// attained.
    pub fn materialize(self, eps: f64) -> f64 {
        match self {
            BoundValue::Exact(v) => v,
            BoundValue::OpenSup(v) => v - eps,
        }
    }

    pub fn supremum(self) -> f64 {
        match self {
            BoundValue::Exact(v) | BoundValue::OpenSup(v) => v,
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, BoundValue::OpenSup(_))
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => write!(f, "{v}"),
            BoundValue::OpenSup(v) => write!(f, "< {v}"),
        }
    }
}

/// A bound together with the branch of the piecewise definition that
/// produced it and any caveat attached to the source result.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: BoundValue,
    pub branch: String,
    pub caveat: Option<String>,
}

impl BoundResult {
    fn exact(value: f64, branch: impl Into<String>) -> Self {
        BoundResult { value: BoundValue::Exact(value), branch: branch.into(), caveat: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.supremum(),
            "open": self.value.is_open(),
            "branch": self.branch,
            "caveat": self.caveat,
        })
    }
}

/// Right-hand-side integrability index `q` in `(2, inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrability {
    Finite(f64),
    Inf,
}

impl Integrability {
    pub fn is_inf(self) -> bool {
        matches!(self, Integrability::Inf)
    }

    /// `1/q`, with `1/inf = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Integrability::Finite(q) => 1.0 / q,
            Integrability::Inf => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Integrability::Finite(q) => Some(q),
            Integrability::Inf => None,
        }
    }
}

impl fmt::Display for Integrability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrability::Finite(q) => write!(f, "{q}"),
            Integrability::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for Integrability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Integrability::Inf);
        }
        t.parse::<f64>()
            .map(Integrability::Finite)
            .map_err(|_| Error::InvalidParam(format!("cannot parse integrability '{s}'")))
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParam(format!("p must lie in (1, inf), got {p}")));
    }
    Ok(())
}

/// Hoelder conjugate `p' = p/(p-1)`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Lower smoothness cutoff `sigma_p = d max{1/p - 1, 0}` of the wavelet
/// characterization.
pub fn sigma_p(d: u32, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    Ok(d as f64 * (1.0 / p - 1.0).max(0.0))
}

/// Supremum `sigma*` of the smoothness gain available from membership in a
/// weighted Hoelder class: `l + alpha` for small weights, decaying linearly
/// to zero as `gamma` approaches `l + alpha + 1/p`.
pub fn sigma_star(ell: u32, alpha: f64, gamma: f64, d: u32, p: f64) -> Result<BoundResult> {
    check_p(p)?;
    if d < 2 {
        return Err(Error::InvalidParam(format!("dimension must be at least 2, got {d}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParam(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let la = ell as f64 + alpha;
    if !(gamma > 0.0 && gamma < la + 1.0 / p) {
        return Err(Error::InvalidParam(format!(
            "gamma must lie in (0, {}), got {gamma}",
            la + 1.0 / p
        )));
    }
    let d = d as f64;
    let breakpoint = la / d + 1.0 / p;
    if gamma < breakpoint {
        Ok(BoundResult::exact(la, "small weight: l + alpha"))
    } else {
        let v = d / (d - 1.0) * (la + 1.0 / p - gamma);
        Ok(BoundResult::exact(v, "large weight: d/(d-1) (l + alpha + 1/p - gamma)"))
    }
}

/// Supremum of admissible `sigma` in the embedding of
/// `B^s_p(L_p) ∩ C^{l,alpha}_gamma` into the adaptivity scale:
/// `min{sigma*, d/(d-1) s}`.
pub fn embedding_bound(
    s: f64,
    p: f64,
    d: u32,
    ell: u32,
    alpha: f64,
    gamma: f64,
) -> Result<BoundResult> {
    if !(s > 0.0) {
        return Err(Error::InvalidParam(format!("s must be positive, got {s}")));
    }
    let star = sigma_star(ell, alpha, gamma, d, p)?;
    let cap = d as f64 / (d as f64 - 1.0) * s;
    if star.value.supremum() <= cap {
        Ok(BoundResult::exact(star.value.supremum(), format!("hoelder-limited ({})", star.branch)))
    } else {
        Ok(BoundResult::exact(cap, "sobolev-limited: d/(d-1) s"))
    }
}

/// Outcome of the generic Besov regularity bound: either an admissible
/// bound value or the printed condition that failed.
#[derive(Debug, Clone, PartialEq)]
pub enum GenericBound {
    Admissible(BoundResult),
    Rejected { condition: String },
}

impl GenericBound {
    pub fn admissible(&self) -> Option<&BoundResult> {
        match self {
            GenericBound::Admissible(r) => Some(r),
            GenericBound::Rejected { .. } => None,
        }
    }
}

/// Generic smoothness gain on Lipschitz domains: a solution with Sobolev
/// regularity below `s_bar` and membership in `C^{l,alpha}_gamma` lies in
/// the adaptivity scale up to `sigma_bar = min{sigma*, d/(d-1) s_bar}`,
/// which exceeds `s_bar` whenever the stated parameter conditions hold.
pub fn generic_besov_bound(
    s_bar: f64,
    ell: u32,
    alpha: f64,
    gamma: f64,
    d: u32,
    p: f64,
) -> Result<GenericBound> {
    check_p(p)?;
    if d < 2 {
        return Err(Error::InvalidParam(format!("dimension must be at least 2, got {d}")));
    }
    if ell == 0 {
        return Err(Error::InvalidParam("l must be a positive integer".into()));
    }
    if !(s_bar >= ell as f64 && s_bar < ell as f64 + 1.0) {
        return Err(Error::InvalidParam(format!(
            "s_bar = {s_bar} must lie in [{}, {})",
            ell,
            ell + 1
        )));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidParam(format!("gamma must be positive, got {gamma}")));
    }
    let df = d as f64;
    if !(alpha > s_bar - ell as f64 && alpha <= 1.0) {
        return Ok(GenericBound::Rejected {
            condition: format!("requires s_bar - l < alpha <= 1, got alpha = {alpha}"),
        });
    }
    let gamma_cap = ell as f64 + alpha + 1.0 / p - (df - 1.0) / df * s_bar;
    if !(gamma < gamma_cap) {
        return Ok(GenericBound::Rejected {
            condition: format!("requires gamma < {gamma_cap}, got gamma = {gamma}"),
        });
    }
    let star = sigma_star(ell, alpha, gamma, d, p)?;
    let cap = df / (df - 1.0) * s_bar;
    let (value, branch) = if star.value.supremum() <= cap {
        (star.value.supremum(), format!("hoelder-limited ({})", star.branch))
    } else {
        (cap, "sobolev-limited: d/(d-1) s_bar".to_string())
    };
    Ok(GenericBound::Admissible(BoundResult::exact(value, branch)))
}

/// Shifted Sobolev regularity pair `(t_theta, s_theta)` for the Dirichlet
/// problem on Lipschitz domains: right-hand sides in `W^{t_theta}(L_{p'})`
/// give solutions in `W^{s_theta}(L_p)`, for shift parameter
/// `theta` in `[0, 1)`.
pub fn savare_shift(p: f64, theta: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidParam(format!("theta must lie in [0, 1), got {theta}")));
    }
    if p <= 2.0 {
        Ok((-1.0 + theta / 2.0, 1.0 + theta / 2.0))
    } else {
        Ok((-1.0 + theta / conjugate(p), 1.0 + theta / p))
    }
}

/// Sobolev regularity ceiling `s*` for square-integrable right-hand sides:
/// `3/2` up to `p = 2` and `1 + 1/p` beyond.
pub fn s_star(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p <= 2.0 { 1.5 } else { 1.0 + 1.0 / p })
}

/// Local Hoelder exponent `alpha*_q` of solutions with right-hand side in
/// `L_q`: `1 - 2/q` for `p <= 2` and `(1 - 2/q)/(p - 1)` for `p > 2`; at
/// `q = inf` the bound is open ("any number less than" the limit).
pub fn alpha_star(p: f64, q: Integrability) -> Result<BoundResult> {
    check_p(p)?;
    if let Integrability::Finite(qv) = q {
        if !(qv > 2.0) || !qv.is_finite() {
            return Err(Error::InvalidParam(format!("q must lie in (2, inf], got {qv}")));
        }
    }
    let scale = if p <= 2.0 { 1.0 } else { 1.0 / (p - 1.0) };
    let branch_p = if p <= 2.0 { "p <= 2" } else { "p > 2" };
    match q {
        Integrability::Finite(qv) => Ok(BoundResult::exact(
            (1.0 - 2.0 / qv) * scale,
            format!("{branch_p}, finite q"),
        )),
        Integrability::Inf => Ok(BoundResult {
            value: BoundValue::OpenSup(scale),
            branch: format!("{branch_p}, q = inf"),
            caveat: None,
        }),
    }
}

/// Which hypothesis backs a weighted-Hoelder membership claim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaVariant {
    /// Gradient integrability `|grad u| ∈ L_t`, `t > 2`.
    Gradient { t: f64 },
    /// Sobolev regularity `u ∈ W^s(L_p)` for all `s < s_bar`.
    Sobolev { s_bar: f64 },
}

/// Admissible weight threshold for `C^{1,alpha}_gamma` membership, relative
/// to the Hoelder exponent `alpha*_q` (which may be an open bound).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaThreshold {
    pub alpha: BoundValue,
    pub offset: f64,
    /// Whether the threshold itself is excluded (`gamma >` vs `gamma >=`).
    pub strict: bool,
}

impl GammaThreshold {
    /// The numeric threshold with `alpha` materialized at margin `eps`.
    pub fn threshold(&self, eps: f64) -> f64 {
        self.alpha.materialize(eps) + self.offset
    }

    pub fn admits(&self, gamma: f64, eps: f64) -> bool {
        let t = self.threshold(eps);
        if self.strict {
            gamma > t
        } else {
            gamma >= t
        }
    }
}

/// Weight thresholds for plane domains (`d = 2`): under gradient
/// integrability `t > 2` every `gamma >= alpha*_q + 2/t` is admissible;
/// under Sobolev regularity `s_bar > max{2/p, 1}` every
/// `gamma > alpha*_q + max{0, 1 - s_bar + 2/p}` is.
pub fn gamma_admissible(p: f64, q: Integrability, variant: GammaVariant) -> Result<GammaThreshold> {
    let alpha = alpha_star(p, q)?;
    match variant {
        GammaVariant::Gradient { t } => {
            if !(t > 2.0) {
                return Err(Error::InvalidParam(format!("t must exceed 2, got {t}")));
            }
            Ok(GammaThreshold { alpha: alpha.value, offset: 2.0 / t, strict: false })
        }
        GammaVariant::Sobolev { s_bar } => {
            let floor = (2.0 / p).max(1.0);
            if !(s_bar > floor) {
                return Err(Error::InvalidParam(format!(
                    "s_bar must exceed max(2/p, 1) = {floor}, got {s_bar}"
                )));
            }
            let offset = (1.0 - s_bar + 2.0 / p).max(0.0);
            Ok(GammaThreshold { alpha: alpha.value, offset, strict: true })
        }
    }
}

/// Hoelder order split into integer and fractional part, with an integral
/// total carried as `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderOrder {
    pub total: f64,
    pub ell: u32,
    pub alpha: f64,
}

/// Sharp local Hoelder regularity of plane p-harmonic functions:
/// `l + alpha = 1 + (1/6)(1 + 1/(p-1) + sqrt(1 + 14/(p-1) + 1/(p-1)^2))`,
/// equal to 2 at `p = 2` and decreasing to 4/3 as `p` grows.
pub fn p_harmonic_smoothness(p: f64) -> Result<HolderOrder> {
    check_p(p)?;
    let r = 1.0 / (p - 1.0);
    let total = 1.0 + (1.0 + r + (1.0 + 14.0 * r + r * r).sqrt()) / 6.0;
    let floor = total.floor();
    let (ell, alpha) = if total == floor {
        (floor as u32 - 1, 1.0)
    } else {
        (floor as u32, total - floor)
    };
    Ok(HolderOrder { total, ell, alpha })
}

/// Adaptivity-scale regularity bound for p-harmonic functions on polygonal
/// domains: `2` for `p <= 2`, else `1 + 1/(p-1)`. Carries a caveat: the
/// underlying Sobolev regularity claim for polyhedral domains is unproven.
pub fn p_harmonic_adaptivity_bound(p: f64) -> Result<BoundResult> {
    check_p(p)?;
    let (value, branch) =
        if p <= 2.0 { (2.0, "p <= 2") } else { (1.0 + 1.0 / (p - 1.0), "p > 2") };
    Ok(BoundResult {
        value: BoundValue::Exact(value),
        branch: branch.to_string(),
        caveat: Some(
            "conditional on an unproven Sobolev regularity claim for p-harmonic functions on \
             polyhedral domains"
                .to_string(),
        ),
    })
}
