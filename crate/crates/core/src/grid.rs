//! The padded ε-lattice over a cluster's value space and its random sample.
//!
//! Lattice points are held as integer indices. A point's coordinates are
//! only materialized on demand through [`GridSpec::to_point`], so lattice
//! adjacency is exact integer arithmetic.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_eps, Error, Result};
use crate::geometry::{Cluster, Point};

/// Name of the pseudo-random generator behind every seeded draw.
pub const GENERATOR: &str = "chacha8";

/// Upper bound on how many lattice points a single sample may hold.
pub const MAX_SAMPLED_POINTS: usize = 50_000_000;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer coordinates of a lattice point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeIndex(pub Vec<usize>);

impl LatticeIndex {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for LatticeIndex {
    fn from(v: Vec<usize>) -> Self {
        LatticeIndex(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    origin: Vec<f64>,
    eps: f64,
    counts: Vec<usize>,
    total: usize,
}

impl GridSpec {
    /// Lattice covering the cluster's extent padded by `2 * eps` on every side.
    pub fn build(cluster: &Cluster, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        let (lo, hi) = cluster.bounds();
        let mut origin = Vec::with_capacity(lo.len());
        let mut counts = Vec::with_capacity(lo.len());
        for (dim, (&min, &max)) in lo.iter().zip(&hi).enumerate() {
            let o = min - 2.0 * eps;
            let raw = ((max - min + 4.0 * eps) / eps).floor() + 1.0;
            if !raw.is_finite() || raw >= (1u64 << 53) as f64 || raw > usize::MAX as f64 {
                return Err(Error::GridTooLarge {
                    detail: format!("dimension {dim} would need {raw:e} lattice planes"),
                });
            }
            let mut n = raw as usize;
            // Division rounding can land one plane short of the padded max.
            let far = max + 2.0 * eps;
            while ((n - 1) as f64).mul_add(eps, o) < far {
                n += 1;
            }
            origin.push(o);
            counts.push(n);
        }
        let total = counts
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .ok_or_else(|| Error::GridTooLarge {
                detail: format!(
                    "{} dimensions with per-dimension counts {:?} overflow the lattice size",
                    counts.len(),
                    counts
                ),
            })?;
        Ok(GridSpec {
            origin,
            eps,
            counts,
            total,
        })
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of lattice points `t`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dims(&self) -> usize {
        self.counts.len()
    }

    pub fn contains(&self, g: &LatticeIndex) -> bool {
        g.0.len() == self.counts.len() && g.0.iter().zip(&self.counts).all(|(i, c)| i < c)
    }

    fn validate(&self, g: &LatticeIndex) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: g.0.clone(),
                counts: self.counts.clone(),
            })
        }
    }

    pub fn to_point(&self, g: &LatticeIndex) -> Result<Point> {
        self.validate(g)?;
        Ok(self.point_unchecked(g))
    }

    // A fused multiply-add keeps each coordinate within half an ulp of
    // origin + idx * eps.
    pub(crate) fn point_unchecked(&self, g: &LatticeIndex) -> Point {
        let coords = g
            .0
            .iter()
            .zip(&self.origin)
            .map(|(&i, &o)| (i as f64).mul_add(self.eps, o))
            .collect();
        Point::from_vec_unchecked(coords)
    }

    /// Lattice points one step away along a single axis, clipped to bounds.
    /// Ordered by axis, lower neighbor first.
    pub fn neighbors(&self, g: &LatticeIndex) -> Result<Vec<LatticeIndex>> {
        self.validate(g)?;
        Ok(self.neighbors_unchecked(g))
    }

    pub(crate) fn neighbors_unchecked(&self, g: &LatticeIndex) -> Vec<LatticeIndex> {
        let mut out = Vec::with_capacity(2 * self.dims());
        for (axis, &count) in self.counts.iter().enumerate() {
            let i = g.0[axis];
            if i > 0 {
                let mut h = g.0.clone();
                h[axis] = i - 1;
                out.push(LatticeIndex(h));
            }
            if i + 1 < count {
                let mut h = g.0.clone();
                h[axis] = i + 1;
                out.push(LatticeIndex(h));
            }
        }
        out
    }

    /// Every lattice index in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        let mut next = Some(vec![0usize; self.dims()]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            for axis in (0..succ.len()).rev() {
                succ[axis] += 1;
                if succ[axis] < self.counts[axis] {
                    next = Some(succ);
                    break;
                }
                succ[axis] = 0;
            }
            Some(LatticeIndex(cur))
        })
    }

    /// Number of sampled points for rate `eta`: `round(eta * t)`, at least one.
    pub fn sample_size(&self, eta: f64) -> usize {
        let target = (eta * self.total as f64).round();
        (target as usize).clamp(1, self.total)
    }
}

/// The working sample of lattice points drawn at rate `eta`.
#[derive(Debug, Clone)]
pub struct SampledGrid {
    pub spec: GridSpec,
    pub eta: f64,
    pub seed: u64,
    pub members: BTreeSet<LatticeIndex>,
}

impl SampledGrid {
    /// Draws `round(eta * t)` distinct lattice points. Each draw picks every
    /// axis index independently and uniformly; duplicates are redrawn. With
    /// `eta == 1` the full lattice is enumerated and the seed is unused.
    pub fn sample(spec: &GridSpec, eta: f64, seed: u64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::param("eta", format!("must lie in (0, 1], got {eta}")));
        }
        let target = spec.sample_size(eta);
        if target > MAX_SAMPLED_POINTS {
            return Err(Error::GridTooLarge {
                detail: format!(
                    "{target} sampled lattice points exceed the limit of {MAX_SAMPLED_POINTS}"
                ),
            });
        }
        let members = if target == spec.total {
            spec.iter().collect()
        } else {
            let mut rng = rng_from_seed(seed);
            let mut members = BTreeSet::new();
            while members.len() < target {
                let idx = spec
                    .counts
                    .iter()
                    .map(|&c| rng.gen_range(0..c as u64) as usize)
                    .collect();
                members.insert(LatticeIndex(idx));
            }
            members
        };
        Ok(SampledGrid {
            spec: spec.clone(),
            eta,
            seed,
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
