//! Reference domains, signed boundary distance, and interior ball families.
//!
//! All domains are bounded subsets of the plane carrying an axis-aligned
//! bounding cube on which dyadic grids live. Distances are exact closed
//! forms (no iteration), so the 1-Lipschitz property of the signed distance
//! holds to rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned bounding cube: a square in 2-D, an interval in 1-D
/// (where only `origin[0]` is meaningful).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub origin: [f64; 2],
    pub side: f64,
}

impl BBox {
    pub fn unit() -> Self {
        BBox { origin: [0.0, 0.0], side: 1.0 }
    }

    /// Grid spacing of a level-`level` dyadic grid on this cube.
    pub fn spacing(&self, level: u32) -> f64 {
        self.side / (1u64 << level) as f64
    }

    /// Center of cell `(ix, iy)` on a level-`level` grid (cell-centered).
    pub fn cell_center(&self, level: u32, ix: usize, iy: usize) -> [f64; 2] {
        let h = self.spacing(level);
        [
            self.origin[0] + (ix as f64 + 0.5) * h,
            self.origin[1] + (iy as f64 + 0.5) * h,
        ]
    }
}

/// Bounded reference domains.
///
/// `LShape` is the unit square with the closed top-right quarter removed.
/// `CircularSector` has its vertex at the origin, straight edges along the
/// rays at angles `0` and `omega`, and circular arc of the given radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainSpec {
    UnitSquare,
    ScaledCube { origin: [f64; 2], side: f64 },
    LShape,
    Polygon { vertices: Vec<[f64; 2]> },
    CircularSector { radius: f64, omega: f64 },
}

/// Vertices of the L-shaped domain (unit square minus top-right quarter),
/// listed counter-clockwise.
pub fn lshape_vertices() -> Vec<[f64; 2]> {
    vec![
        [0.0, 0.0],
        [1.0, 0.0],
        [1.0, 0.5],
        [0.5, 0.5],
        [0.5, 1.0],
        [0.0, 1.0],
    ]
}

impl DomainSpec {
    /// Natural bounding cube of the domain.
    pub fn bbox(&self) -> BBox {
        match self {
            DomainSpec::UnitSquare | DomainSpec::LShape => BBox::unit(),
            DomainSpec::ScaledCube { origin, side } => BBox { origin: *origin, side: *side },
            DomainSpec::Polygon { vertices } => {
                let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
                let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                for v in vertices {
                    x0 = x0.min(v[0]);
                    y0 = y0.min(v[1]);
                    x1 = x1.max(v[0]);
                    y1 = y1.max(v[1]);
                }
                BBox { origin: [x0, y0], side: (x1 - x0).max(y1 - y0) }
            }
            DomainSpec::CircularSector { radius, omega } => {
                let r = *radius;
                if *omega <= std::f64::consts::FRAC_PI_2 {
                    BBox { origin: [0.0, 0.0], side: r }
                } else if *omega <= std::f64::consts::PI {
                    BBox { origin: [-r, 0.0], side: 2.0 * r }
                } else {
                    BBox { origin: [-r, -r], side: 2.0 * r }
                }
            }
        }
    }

    /// Strict interior membership test.
    pub fn contains(&self, x: [f64; 2]) -> bool {
        match self {
            DomainSpec::UnitSquare => {
                x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < 1.0
            }
            DomainSpec::ScaledCube { origin, side } => {
                x[0] > origin[0]
                    && x[0] < origin[0] + side
                    && x[1] > origin[1]
                    && x[1] < origin[1] + side
            }
            DomainSpec::LShape => point_in_polygon(x, &lshape_vertices()),
            DomainSpec::Polygon { vertices } => point_in_polygon(x, vertices),
            DomainSpec::CircularSector { radius, omega } => {
                let r = x[0].hypot(x[1]);
                if r <= 0.0 || r >= *radius {
                    return false;
                }
                let theta = sector_angle(x);
                theta > 0.0 && theta < *omega
            }
        }
    }

    /// Unsigned distance from `x` to the boundary set of the domain.
    pub fn boundary_distance(&self, x: [f64; 2]) -> f64 {
        match self {
            DomainSpec::UnitSquare => rect_boundary_distance(x, [0.0, 0.0], 1.0),
            DomainSpec::ScaledCube { origin, side } => rect_boundary_distance(x, *origin, *side),
            DomainSpec::LShape => polygon_boundary_distance(x, &lshape_vertices()),
            DomainSpec::Polygon { vertices } => polygon_boundary_distance(x, vertices),
            DomainSpec::CircularSector { radius, omega } => {
                sector_boundary_distance(x, *radius, *omega)
            }
        }
    }
}

/// Signed distance from `x` to the domain boundary: positive inside,
/// negative outside, zero on the boundary.
pub fn distance_to_boundary(domain: &DomainSpec, x: [f64; 2]) -> f64 {
    let d = domain.boundary_distance(x);
    if domain.contains(x) {
        d
    } else {
        -d
    }
}

/// Angle of `x` measured from the positive x-axis, normalized to [0, 2*pi).
fn sector_angle(x: [f64; 2]) -> f64 {
    let t = x[1].atan2(x[0]);
    if t < 0.0 {
        t + 2.0 * std::f64::consts::PI
    } else {
        t
    }
}

fn rect_boundary_distance(x: [f64; 2], origin: [f64; 2], side: f64) -> f64 {
    let dx = [x[0] - origin[0], x[1] - origin[1]];
    let inside = dx[0] > 0.0 && dx[0] < side && dx[1] > 0.0 && dx[1] < side;
    if inside {
        (dx[0].min(side - dx[0])).min(dx[1].min(side - dx[1]))
    } else {
        // Distance from an exterior point to the solid rectangle, which for
        // exterior points equals the distance to its boundary.
        let ex = (-dx[0]).max(dx[0] - side).max(0.0);
        let ey = (-dx[1]).max(dx[1] - side).max(0.0);
        ex.hypot(ey)
    }
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return ap[0].hypot(ap[1]);
    }
    let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0);
    let q = [a[0] + t * ab[0], a[1] + t * ab[1]];
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn polygon_boundary_distance(x: [f64; 2], vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        best = best.min(point_segment_distance(x, a, b));
    }
    best
}

/// Even-odd rule; points exactly on an edge may land on either side, which
/// is irrelevant for cell-centered grids that never place nodes on edges.
fn point_in_polygon(x: [f64; 2], vertices: &[[f64; 2]]) -> bool {
    let n = vertices.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (vi, vj) = (vertices[i], vertices[j]);
        if (vi[1] > x[1]) != (vj[1] > x[1]) {
            let t = (x[1] - vi[1]) / (vj[1] - vi[1]);
            let cx = vi[0] + t * (vj[0] - vi[0]);
            if x[0] < cx {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn sector_boundary_distance(x: [f64; 2], radius: f64, omega: f64) -> f64 {
    let r = x[0].hypot(x[1]);
    let end = [radius * omega.cos(), radius * omega.sin()];
    let d_edge0 = point_segment_distance(x, [0.0, 0.0], [radius, 0.0]);
    let d_edge1 = point_segment_distance(x, [0.0, 0.0], end);
    let theta = sector_angle(x);
    let d_arc = if theta <= omega {
        (r - radius).abs()
    } else {
        let d0 = (x[0] - radius).hypot(x[1]);
        let d1 = (x[0] - end[0]).hypot(x[1] - end[1]);
        d0.min(d1)
    };
    d_edge0.min(d_edge1).min(d_arc)
}

/// Interior ball from the weighted-Hoelder family: `delta` is the distance
/// of the closed ball to the boundary, positive by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: [f64; 2],
    pub radius: f64,
    pub delta: f64,
}

/// Family of interior balls with dyadic radii `2^-j` for `j` in `levels`,
/// centered at cell-centered grid points of the level-`grid_level` grid on
/// the domain's bounding cube. A ball is retained iff the open concentric
/// ball of radius `c * r` lies inside the domain.
///
/// Centers are subsampled to a spacing of about `r / 2` per axis so the
/// family size stays proportional to `area / r^2` at each radius.
pub fn ball_family(
    domain: &DomainSpec,
    grid_level: u32,
    c: f64,
    levels: std::ops::RangeInclusive<u32>,
) -> Result<Vec<Ball>> {
    if !(c > 1.0) {
        return Err(Error::InvalidParam(format!("ball family ratio c must exceed 1, got {c}")));
    }
    let bbox = domain.bbox();
    let h = bbox.spacing(grid_level);
    let n = 1usize << grid_level;
    let mut out = Vec::new();
    for j in levels {
        let r = 0.5f64.powi(j as i32);
        let stride = ((r / (2.0 * h)).floor() as usize).max(1);
        let mut iy = 0;
        while iy < n {
            let mut ix = 0;
            while ix < n {
                let center = bbox.cell_center(grid_level, ix, iy);
                let sd = distance_to_boundary(domain, center);
                if sd >= c * r {
                    out.push(Ball { center, radius: r, delta: sd - r });
                }
                ix += stride;
            }
            iy += stride;
        }
    }
    Ok(out)
}
