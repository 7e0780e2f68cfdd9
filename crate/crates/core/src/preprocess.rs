//! Mitigations for lattice blow-up: sparse random projection to fewer
//! dimensions and uniform subsampling of the cluster.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Cluster, Point};
use crate::grid::rng_from_seed;

/// Sparse projection matrix with entries `sqrt(3) * {+1, 0, -1}` drawn with
/// probabilities `{1/6, 2/3, 1/6}`, scaled by `1 / sqrt(p_out)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    entries: Vec<f64>,
    p_in: usize,
    p_out: usize,
    seed: u64,
    scale: f64,
}

impl ProjectionMatrix {
    pub fn new(p_in: usize, p_out: usize, seed: u64) -> Result<Self> {
        if p_out == 0 || p_out > p_in {
            return Err(Error::param(
                "project_dims",
                format!("must lie in 1..={p_in}, got {p_out}"),
            ));
        }
        let mut rng = rng_from_seed(seed);
        let scale = 1.0 / (p_out as f64).sqrt();
        let unit = 3f64.sqrt() * scale;
        let entries = (0..p_in * p_out)
            .map(|_| match rng.gen_range(0u32..6) {
                0 => unit,
                1 => -unit,
                _ => 0.0,
            })
            .collect();
        Ok(ProjectionMatrix {
            entries,
            p_in,
            p_out,
            seed,
            scale,
        })
    }

    pub fn p_in(&self) -> usize {
        self.p_in
    }

    pub fn p_out(&self) -> usize {
        self.p_out
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Row-major `p_out x p_in` entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.p_in {
            return Err(Error::DimensionMismatch {
                expected: self.p_in,
                found: x.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.p_in)
            .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
            .collect())
    }
}

pub fn random_project(cluster: &Cluster, p_out: usize, seed: u64) -> Result<Cluster> {
    let m = ProjectionMatrix::new(cluster.dims(), p_out, seed)?;
    let points = cluster
        .points()
        .iter()
        .map(|p| m.apply(p.coords()).and_then(Point::new))
        .collect::<Result<Vec<_>>>()?;
    Cluster::new(points)
}

/// Like [`random_project`], but returns the input unchanged when no
/// reduction is requested (`p_out == p`).
pub fn reduce_dims(cluster: &Cluster, p_out: usize, seed: u64) -> Result<Cluster> {
    if p_out == cluster.dims() {
        Ok(cluster.clone())
    } else {
        random_project(cluster, p_out, seed)
    }
}

/// Uniform sample of `round(rate * n)` points (at least one) without
/// replacement. Input order is preserved.
pub fn subsample_cluster(cluster: &Cluster, rate: f64, seed: u64) -> Result<Cluster> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::param("subsample", format!("rate must lie in (0, 1], got {rate}")));
    }
    let n = cluster.len();
    let k = ((rate * n as f64).round() as usize).clamp(1, n);
    if k == n {
        return Ok(cluster.clone());
    }
    let mut rng = rng_from_seed(seed);
    let mut picked = index::sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    Cluster::new(picked.into_iter().map(|i| cluster.point(i).clone()).collect())
}
