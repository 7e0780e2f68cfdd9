//! Point and cluster primitives shared by every stage of the analysis.
//!
//! Neighborhood tests compare squared distances against `eps * eps` so the
//! hot query kernels never take a square root. The neighborhood is a closed
//! ball: a point at distance exactly `eps` is inside.

use std::ops::Index;

use crate::error::{check_eps, Error, Result};

/// A point in `p`-dimensional Euclidean space with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("a point needs at least one coordinate".into()));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate {c}")));
        }
        Ok(Point(coords))
    }

    /// Builds a point without validation. Callers guarantee finiteness.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Point(coords)
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// A non-empty set of points sharing one dimensionality. Point ids are
/// positions in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    points: Vec<Point>,
    dims: usize,
}

impl Cluster {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyCluster)?;
        let dims = first.dims();
        for p in &points {
            if p.dims() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    found: p.dims(),
                });
            }
        }
        Ok(Cluster { points, dims })
    }

    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: Into<Vec<f64>>,
    {
        let points = rows
            .into_iter()
            .map(|r| Point::new(r.into()))
            .collect::<Result<Vec<_>>>()?;
        Cluster::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    /// Per-dimension (min, max) over all points.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.points[0].coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for (i, &c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        (lo, hi)
    }
}

impl Index<usize> for Cluster {
    type Output = Point;

    fn index(&self, id: usize) -> &Point {
        &self.points[id]
    }
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        })
    }
}

/// Squared Euclidean distance on raw coordinate slices of equal length.
#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    check_dims(a.coords(), b.coords())?;
    Ok(dist_sq(a.coords(), b.coords()).sqrt())
}

pub fn squared_distance(a: &Point, b: &Point) -> Result<f64> {
    check_dims(a.coords(), b.coords())?;
    Ok(dist_sq(a.coords(), b.coords()))
}

#[inline]
pub(crate) fn midpoint_coords(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

/// Coordinate-wise arithmetic mean of `a` and `b`.
pub fn midpoint(a: &Point, b: &Point) -> Result<Point> {
    check_dims(a.coords(), b.coords())?;
    Ok(Point(midpoint_coords(a.coords(), b.coords())))
}

/// Closed-ball membership: `distance(x, y) <= eps`.
pub fn in_eps_neighborhood(x: &Point, y: &Point, eps: f64) -> Result<bool> {
    check_eps(eps)?;
    check_dims(x.coords(), y.coords())?;
    Ok(dist_sq(x.coords(), y.coords()) <= eps * eps)
}
