//! Synthetic 2-D clusters: ring, crescent, filled disk and filled rectangle,
//! each sampled uniformly over its area by rejection from the bounding box.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Cluster, Point};
use crate::grid::rng_from_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Ring {
        center: [f64; 2],
        r_inner: f64,
        r_outer: f64,
    },
    /// A disk with an offset disk cut out of it.
    Crescent {
        center: [f64; 2],
        radius: f64,
        cutter_center: [f64; 2],
        cutter_radius: f64,
    },
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    Rectangle {
        min: [f64; 2],
        max: [f64; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub shape: Shape,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

fn sq_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
    dx * dx + dy * dy
}

fn finite(vals: &[f64]) -> bool {
    vals.iter().all(|v| v.is_finite())
}

/// Area of the intersection of two disks with radii `r1`, `r2` whose
/// centers are `d` apart.
fn lens_area(r1: f64, r2: f64, d: f64) -> f64 {
    if d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return PI * r * r;
    }
    let a1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0).acos();
    let a2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
    let k = ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).max(0.0).sqrt();
    r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * k
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::DegenerateGeometry(msg));
        match *self {
            Shape::Ring { center, r_inner, r_outer } => {
                if !finite(&[center[0], center[1], r_inner, r_outer]) || !(r_inner > 0.0 && r_inner < r_outer) {
                    return bad(format!("ring needs 0 < r_inner < r_outer, got {r_inner} and {r_outer}"));
                }
            }
            Shape::Crescent { center, radius, cutter_center, cutter_radius } => {
                if !finite(&[center[0], center[1], radius, cutter_center[0], cutter_center[1], cutter_radius])
                    || radius <= 0.0
                    || cutter_radius <= 0.0
                {
                    return bad("crescent radii must be positive and finite".into());
                }
                let d = sq_dist(center, cutter_center).sqrt();
                if d >= radius + cutter_radius {
                    return bad("crescent cutter does not overlap the disk".into());
                }
                if d + radius <= cutter_radius {
                    return bad("crescent cutter removes the whole disk".into());
                }
            }
            Shape::Disk { center, radius } => {
                if !finite(&[center[0], center[1], radius]) || radius <= 0.0 {
                    return bad(format!("disk radius must be positive, got {radius}"));
                }
            }
            Shape::Rectangle { min, max } => {
                if !finite(&[min[0], min[1], max[0], max[1]]) || !(min[0] < max[0] && min[1] < max[1]) {
                    return bad(format!("rectangle {min:?}..{max:?} has no area"));
                }
            }
        }
        Ok(())
    }

    /// Exact membership predicate; boundaries are included except the
    /// cutter's, which is removed from the crescent.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match *self {
            Shape::Ring { center, r_inner, r_outer } => {
                let d2 = sq_dist(p, center);
                d2 >= r_inner * r_inner && d2 <= r_outer * r_outer
            }
            Shape::Crescent { center, radius, cutter_center, cutter_radius } => {
                sq_dist(p, center) <= radius * radius && sq_dist(p, cutter_center) > cutter_radius * cutter_radius
            }
            Shape::Disk { center, radius } => sq_dist(p, center) <= radius * radius,
            Shape::Rectangle { min, max } => (min[0]..=max[0]).contains(&p[0]) && (min[1]..=max[1]).contains(&p[1]),
        }
    }

    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let around = |c: [f64; 2], r: f64| ([c[0] - r, c[1] - r], [c[0] + r, c[1] + r]);
        match *self {
            Shape::Ring { center, r_outer, .. } => around(center, r_outer),
            Shape::Crescent { center, radius, .. } | Shape::Disk { center, radius } => around(center, radius),
            Shape::Rectangle { min, max } => (min, max),
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Shape::Ring { r_inner, r_outer, .. } => PI * (r_outer * r_outer - r_inner * r_inner),
            Shape::Crescent { center, radius, cutter_center, cutter_radius } => {
                PI * radius * radius - lens_area(radius, cutter_radius, sq_dist(center, cutter_center).sqrt())
            }
            Shape::Disk { radius, .. } => PI * radius * radius,
            Shape::Rectangle { min, max } => (max[0] - min[0]) * (max[1] - min[1]),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Ring { .. } => "ring",
            Shape::Crescent { .. } => "crescent",
            Shape::Disk { .. } => "disk",
            Shape::Rectangle { .. } => "rectangle",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Ring { center, r_inner, r_outer } => write!(
                f,
                "ring center=({}, {}) r_inner={r_inner} r_outer={r_outer}",
                center[0], center[1]
            ),
            Shape::Crescent { center, radius, cutter_center, cutter_radius } => write!(
                f,
                "crescent center=({}, {}) radius={radius} cutter_center=({}, {}) cutter_radius={cutter_radius}",
                center[0], center[1], cutter_center[0], cutter_center[1]
            ),
            Shape::Disk { center, radius } => {
                write!(f, "disk center=({}, {}) radius={radius}", center[0], center[1])
            }
            Shape::Rectangle { min, max } => write!(
                f,
                "rectangle min=({}, {}) max=({}, {})",
                min[0], min[1], max[0], max[1]
            ),
        }
    }
}

impl ShapeSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ShapeSpec = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |s| text[..s.start].lines().count().max(1)),
            message: e.message().to_string(),
        })?;
        spec.shape.validate()?;
        Ok(spec)
    }
}

/// Draws `spec.n` points uniformly over the shape.
pub fn generate(spec: &ShapeSpec) -> Result<Cluster> {
    spec.shape.validate()?;
    if spec.n == 0 {
        return Err(Error::DegenerateGeometry("point count must be positive".into()));
    }
    let (lo, hi) = spec.shape.bounding_box();
    let mut rng = rng_from_seed(spec.seed);
    let mut points = Vec::with_capacity(spec.n);
    while points.len() < spec.n {
        let p = [rng.gen_range(lo[0]..=hi[0]), rng.gen_range(lo[1]..=hi[1])];
        if spec.shape.contains(p) {
            points.push(Point::from_vec_unchecked(p.to_vec()));
        }
    }
    Cluster::new(points)
}
