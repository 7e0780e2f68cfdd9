//! Locating uncovered lattice points and the cluster points that border them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::Cluster;
use crate::grid::{GridSpec, LatticeIndex, SampledGrid};
use crate::spatial::SpatialIndex;

/// Sampled lattice points with no cluster point within `eps`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NonNeighboringSet {
    pub members: BTreeSet<LatticeIndex>,
}

impl NonNeighboringSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Marginal cluster point ids, each with the probe lattice points that
/// selected it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MarginalSet {
    pub members: BTreeMap<usize, Vec<LatticeIndex>>,
    /// Lattice neighbors of the non-neighboring set, minus that set.
    pub probes: BTreeSet<LatticeIndex>,
}

impl MarginalSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Ids in ascending order.
    pub fn ids(&self) -> Vec<usize> {
        self.members.keys().copied().collect()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.contains_key(&id)
    }
}

fn check_consistent(cluster: &Cluster, spec: &GridSpec, index: &SpatialIndex) -> Result<()> {
    if index.cell_size() != spec.eps() {
        return Err(Error::param(
            "eps",
            format!(
                "index cell size {} does not match grid accuracy {}",
                index.cell_size(),
                spec.eps()
            ),
        ));
    }
    for (found, expected) in [(index.dims(), cluster.dims()), (spec.dims(), cluster.dims())] {
        if found != expected {
            return Err(Error::DimensionMismatch { expected, found });
        }
    }
    if index.len() != cluster.len() {
        return Err(Error::param(
            "index",
            format!("built over {} points, cluster has {}", index.len(), cluster.len()),
        ));
    }
    Ok(())
}

/// Sampled lattice points not covered by any cluster point's `eps`-ball.
pub fn detect_non_neighboring(
    cluster: &Cluster,
    sampled: &SampledGrid,
    index: &SpatialIndex,
) -> Result<NonNeighboringSet> {
    check_consistent(cluster, &sampled.spec, index)?;
    let spec = &sampled.spec;
    let members = sampled
        .members
        .iter()
        .filter(|g| !index.any_within_coords(spec.point_unchecked(g).coords()))
        .cloned()
        .collect();
    Ok(NonNeighboringSet { members })
}

/// Probes every lattice neighbor of the non-neighboring set (excluding the
/// set itself) and records the nearest cluster point within `eps` of each.
pub fn detect_marginal(
    cluster: &Cluster,
    nonneigh: &NonNeighboringSet,
    spec: &GridSpec,
    index: &SpatialIndex,
) -> Result<MarginalSet> {
    check_consistent(cluster, spec, index)?;
    if let Some(bad) = nonneigh.members.iter().find(|g| !spec.contains(g)) {
        return Err(Error::InvalidIndex {
            index: bad.0.clone(),
            counts: spec.counts().to_vec(),
        });
    }
    let probes: BTreeSet<LatticeIndex> = nonneigh
        .members
        .iter()
        .flat_map(|h| spec.neighbors_unchecked(h))
        .filter(|i| !nonneigh.members.contains(i))
        .collect();

    let mut members: BTreeMap<usize, Vec<LatticeIndex>> = BTreeMap::new();
    for probe in &probes {
        let q = spec.point_unchecked(probe);
        if let Some((id, _)) = index.nearest_within_coords(q.coords()) {
            members.entry(id).or_default().push(probe.clone());
        }
    }
    Ok(MarginalSet { members, probes })
}
