//! DBSCAN and selection of the grid accuracy as the smallest DBSCAN radius
//! that turns the whole input into one cluster with no noise.

use std::collections::VecDeque;

use crate::error::{check_eps, Error, Result};
use crate::geometry::Cluster;
use crate::spatial::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Noise,
    /// Cluster number, starting at 1.
    Cluster(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbscanResult {
    pub labels: Vec<Label>,
    pub core: Vec<bool>,
    pub k: usize,
    pub min_pts: usize,
    pub eps: f64,
}

impl DbscanResult {
    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| **l == Label::Noise).count()
    }

    /// One cluster and no noise.
    pub fn is_single_cluster(&self) -> bool {
        self.k == 1 && self.noise_count() == 0
    }
}

/// Default density threshold: twice the dimensionality.
pub fn default_min_pts(dims: usize) -> usize {
    2 * dims
}

/// Classic DBSCAN. Neighborhoods are closed balls and include the point
/// itself; a border point joins the first cluster that reaches it in scan
/// order.
pub fn dbscan(cluster: &Cluster, eps: f64, min_pts: usize) -> Result<DbscanResult> {
    check_eps(eps)?;
    if min_pts == 0 {
        return Err(Error::param("min_pts", "must be at least 1"));
    }
    let index = SpatialIndex::build(cluster, eps)?;
    Ok(dbscan_indexed(cluster, &index, min_pts))
}

fn dbscan_indexed(cluster: &Cluster, index: &SpatialIndex, min_pts: usize) -> DbscanResult {
    let n = cluster.len();
    let mut labels: Vec<Option<Label>> = vec![None; n];
    let mut core = vec![false; n];
    let mut k = 0;
    let region = |id: usize| index.ids_within_coords(cluster.point(id).coords());

    for start in 0..n {
        if labels[start].is_some() {
            continue;
        }
        let seeds = region(start);
        if seeds.len() < min_pts {
            labels[start] = Some(Label::Noise);
            continue;
        }
        k += 1;
        let this = Label::Cluster(k);
        labels[start] = Some(this);
        core[start] = true;
        let mut queue: VecDeque<usize> = seeds.into_iter().filter(|&q| q != start).collect();
        while let Some(q) = queue.pop_front() {
            if matches!(labels[q], Some(Label::Cluster(_))) {
                continue;
            }
            // unvisited, or earlier noise that turns out to be a border point
            labels[q] = Some(this);
            let nb = region(q);
            if nb.len() >= min_pts {
                core[q] = true;
                queue.extend(
                    nb.into_iter()
                        .filter(|&r| !matches!(labels[r], Some(Label::Cluster(_)))),
                );
            }
        }
    }

    DbscanResult {
        labels: labels.into_iter().map(|l| l.unwrap_or(Label::Noise)).collect(),
        core,
        k,
        min_pts,
        eps: index.cell_size(),
    }
}

/// Smallest positive nearest-neighbor distance, or `None` when all points
/// coincide.
fn min_positive_nn_distance(cluster: &Cluster, diag: f64) -> Option<f64> {
    let n = cluster.len() as f64;
    let mut radius = diag / n.powf(1.0 / cluster.dims() as f64);
    loop {
        let index = SpatialIndex::build(cluster, radius).ok()?;
        let mut best = f64::INFINITY;
        for p in cluster.points() {
            index.visit_within(p.coords(), |_, d2| {
                if d2 > 0.0 && d2 < best {
                    best = d2;
                }
                true
            });
        }
        if best.is_finite() {
            return Some(best.sqrt());
        }
        if radius >= diag {
            return None;
        }
        radius = (radius * 2.0).min(diag);
    }
}

/// Candidate radii: a geometric ladder from the smallest positive
/// nearest-neighbor distance up to the bounding-box diagonal (an upper bound
/// on the diameter), consecutive rungs differing by a factor `1 + resolution`.
pub fn eps_ladder(cluster: &Cluster, resolution: f64) -> Result<Vec<f64>> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::param("resolution", format!("must be positive, got {resolution}")));
    }
    let (lo, hi) = cluster.bounds();
    let diag = lo.iter().zip(&hi).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt();
    let Some(start) = min_positive_nn_distance(cluster, diag) else {
        return Ok(Vec::new());
    };
    let ratio = 1.0 + resolution;
    let mut ladder = Vec::new();
    let mut i = 0i32;
    loop {
        let eps = start * ratio.powi(i);
        if eps >= diag {
            ladder.push(diag.max(start));
            break;
        }
        ladder.push(eps);
        i += 1;
    }
    Ok(ladder)
}

/// Scans the ladder upward and returns the first radius at which DBSCAN
/// reports exactly one cluster and no noise.
pub fn select_eps(cluster: &Cluster, min_pts: usize, resolution: f64) -> Result<f64> {
    if min_pts == 0 {
        return Err(Error::param("min_pts", "must be at least 1"));
    }
    if cluster.len() < min_pts {
        return Err(Error::param(
            "min_pts",
            format!("cluster has {} points, fewer than min_pts = {min_pts}", cluster.len()),
        ));
    }
    for eps in eps_ladder(cluster, resolution)? {
        let index = SpatialIndex::build(cluster, eps)?;
        if dbscan_indexed(cluster, &index, min_pts).is_single_cluster() {
            return Ok(eps);
        }
    }
    Err(Error::NoUniqueClusterEps)
}
