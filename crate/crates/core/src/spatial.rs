//! Uniform hash-bucket index for fixed-radius queries.
//!
//! Cells have side `eps`, so every cluster point within `eps` of a query
//! lies in the block of cells spanned by `[q - eps, q + eps]` on each axis;
//! typically the 3^p cells around the query's own cell.

use std::collections::HashMap;

use crate::error::{check_eps, Error, Result};
use crate::geometry::{dist_sq, Cluster, Point};

#[derive(Debug, Clone)]
pub struct SpatialIndex {
    cell_size: f64,
    dims: usize,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    coords: Vec<f64>,
}

/// A point id paired with its distance to the query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub id: usize,
    pub distance: f64,
}

impl SpatialIndex {
    pub fn build(cluster: &Cluster, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        let dims = cluster.dims();
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut coords = Vec::with_capacity(cluster.len() * dims);
        for (id, p) in cluster.points().iter().enumerate() {
            coords.extend_from_slice(p.coords());
            let key = p.coords().iter().map(|&c| cell_of(c, eps)).collect();
            buckets.entry(key).or_default().push(id);
        }
        Ok(SpatialIndex {
            cell_size: eps,
            dims,
            buckets,
            coords,
        })
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// Bucket key of a coordinate vector.
    pub fn key_of(&self, coords: &[f64]) -> Vec<i64> {
        coords.iter().map(|&c| cell_of(c, self.cell_size)).collect()
    }

    pub fn bucket(&self, key: &[i64]) -> Option<&[usize]> {
        self.buckets.get(key).map(Vec::as_slice)
    }

    pub(crate) fn coords_of(&self, id: usize) -> &[f64] {
        &self.coords[id * self.dims..(id + 1) * self.dims]
    }

    fn check_query(&self, q: &[f64], eps: f64) -> Result<()> {
        if eps != self.cell_size {
            return Err(Error::param(
                "eps",
                format!("query radius {eps} differs from index cell size {}", self.cell_size),
            ));
        }
        if q.len() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: q.len(),
            });
        }
        Ok(())
    }

    /// Calls `visit(id, squared_distance)` for each point within `cell_size`
    /// of `q`, bucket by bucket. Stops early when `visit` returns `false`.
    pub(crate) fn visit_within<F>(&self, q: &[f64], mut visit: F)
    where
        F: FnMut(usize, f64) -> bool,
    {
        let eps = self.cell_size;
        let r2 = eps * eps;
        // Rounding is monotone, so for any float x with |x - q| <= eps the
        // computed cells of q - eps and q + eps bracket cell_of(x).
        let lo: Vec<i64> = q.iter().map(|&c| cell_of(c - eps, eps)).collect();
        let hi: Vec<i64> = q.iter().map(|&c| cell_of(c + eps, eps)).collect();
        let mut key = lo.clone();
        loop {
            if let Some(ids) = self.buckets.get(&key) {
                for &id in ids {
                    let d2 = dist_sq(q, self.coords_of(id));
                    if d2 <= r2 && !visit(id, d2) {
                        return;
                    }
                }
            }
            let mut axis = 0;
            loop {
                if axis == key.len() {
                    return;
                }
                if key[axis] < hi[axis] {
                    key[axis] += 1;
                    break;
                }
                key[axis] = lo[axis];
                axis += 1;
            }
        }
    }

    pub(crate) fn any_within_coords(&self, q: &[f64]) -> bool {
        let mut found = false;
        self.visit_within(q, |_, _| {
            found = true;
            false
        });
        found
    }

    pub(crate) fn nearest_within_coords(&self, q: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        self.visit_within(q, |id, d2| {
            match best {
                Some((bid, bd2)) if d2 > bd2 || (d2 == bd2 && id > bid) => {}
                _ => best = Some((id, d2)),
            }
            true
        });
        best
    }

    /// Ids of all points within `cell_size` of `q`, ascending.
    pub(crate) fn ids_within_coords(&self, q: &[f64]) -> Vec<usize> {
        let mut ids = Vec::new();
        self.visit_within(q, |id, _| {
            ids.push(id);
            true
        });
        ids.sort_unstable();
        ids
    }

    /// Whether any indexed point lies within `eps` (inclusive) of `q`.
    pub fn any_within(&self, q: &Point, eps: f64) -> Result<bool> {
        self.check_query(q.coords(), eps)?;
        Ok(self.any_within_coords(q.coords()))
    }

    /// The closest indexed point within `eps` of `q`; equal distances go to
    /// the lowest id.
    pub fn nearest_within(&self, q: &Point, eps: f64) -> Result<Option<Neighbor>> {
        self.check_query(q.coords(), eps)?;
        Ok(self.nearest_within_coords(q.coords()).map(|(id, d2)| Neighbor {
            id,
            distance: d2.sqrt(),
        }))
    }

    /// All indexed points within `eps` of `q`, sorted by id.
    pub fn within(&self, q: &Point, eps: f64) -> Result<Vec<usize>> {
        self.check_query(q.coords(), eps)?;
        Ok(self.ids_within_coords(q.coords()))
    }
}

#[inline]
fn cell_of(c: f64, eps: f64) -> i64 {
    (c / eps).floor() as i64
}
