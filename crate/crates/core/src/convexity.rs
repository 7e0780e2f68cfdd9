//! Midpoint-convexity test over marginal pairs and the end-to-end pipeline.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::detection::{detect_marginal, detect_non_neighboring, MarginalSet, NonNeighboringSet};
use crate::error::{check_eps, Error, Result};
use crate::geometry::{midpoint_coords, Cluster, Point};
use crate::grid::{GridSpec, SampledGrid, GENERATOR};
use crate::spatial::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Stop at the first uncovered midpoint.
    #[default]
    FirstWitness,
    /// Test every pair and count violations.
    Exhaustive,
}

impl ScanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanMode::FirstWitness => "first",
            ScanMode::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "first_witness" => Ok(ScanMode::FirstWitness),
            "exhaustive" => Ok(ScanMode::Exhaustive),
            other => Err(Error::param("mode", format!("unknown scan mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Ok,
    /// Fewer than two marginal points, so no pair could be tested.
    InsufficientGridEvidence,
}

impl Evidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Evidence::Ok => "ok",
            Evidence::InsufficientGridEvidence => "insufficient_grid_evidence",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointOutcome {
    pub convex: bool,
    pub witness: Option<Point>,
    pub witness_pair: Option<(usize, usize)>,
    pub pairs_tested: u64,
    /// Uncovered midpoints found; only populated in exhaustive mode.
    pub violations: Option<u64>,
    pub evidence: Evidence,
}

/// Tests midpoints of all distinct marginal pairs, in lexicographic id
/// order, against `eps`-coverage by the cluster.
pub fn midpoint_test(
    cluster: &Cluster,
    marginal: &MarginalSet,
    index: &SpatialIndex,
    eps: f64,
    mode: ScanMode,
) -> Result<MidpointOutcome> {
    check_eps(eps)?;
    if index.cell_size() != eps {
        return Err(Error::param(
            "eps",
            format!("index cell size {} differs from {eps}", index.cell_size()),
        ));
    }
    let ids = marginal.ids();
    if let Some(&bad) = ids.iter().find(|&&id| id >= cluster.len()) {
        return Err(Error::param("marginal", format!("point id {bad} is out of range")));
    }
    if ids.len() < 2 {
        return Ok(MidpointOutcome {
            convex: true,
            witness: None,
            witness_pair: None,
            pairs_tested: 0,
            violations: matches!(mode, ScanMode::Exhaustive).then_some(0),
            evidence: Evidence::InsufficientGridEvidence,
        });
    }

    let uncovered = |j: usize, k: usize| -> Option<Vec<f64>> {
        let m = midpoint_coords(cluster.point(j).coords(), cluster.point(k).coords());
        (!index.any_within_coords(&m)).then_some(m)
    };

    let (witness, pairs_tested, violations) = match mode {
        ScanMode::FirstWitness => {
            let mut tested = 0u64;
            let mut found = None;
            'outer: for (a, &j) in ids.iter().enumerate() {
                for &k in &ids[a + 1..] {
                    tested += 1;
                    if let Some(m) = uncovered(j, k) {
                        found = Some(((j, k), m));
                        break 'outer;
                    }
                }
            }
            (found, tested, None)
        }
        ScanMode::Exhaustive => {
            // Per-row results come back in row order, so the first hit is
            // the smallest pair key regardless of scheduling.
            type Row = (u64, Option<((usize, usize), Vec<f64>)>);
            let rows: Vec<Row> = (0..ids.len())
                .into_par_iter()
                .map(|a| {
                    let j = ids[a];
                    let mut count = 0u64;
                    let mut first = None;
                    for &k in &ids[a + 1..] {
                        if let Some(m) = uncovered(j, k) {
                            count += 1;
                            if first.is_none() {
                                first = Some(((j, k), m));
                            }
                        }
                    }
                    (count, first)
                })
                .collect();
            let n = ids.len() as u64;
            let violations = rows.iter().map(|(c, _)| c).sum();
            let first = rows.into_iter().find_map(|(_, f)| f);
            (first, n * (n - 1) / 2, Some(violations))
        }
    };

    Ok(match witness {
        Some((pair, m)) => MidpointOutcome {
            convex: false,
            witness: Some(Point::from_vec_unchecked(m)),
            witness_pair: Some(pair),
            pairs_tested,
            violations,
            evidence: Evidence::Ok,
        },
        None => MidpointOutcome {
            convex: true,
            witness: None,
            witness_pair: None,
            pairs_tested,
            violations,
            evidence: Evidence::Ok,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisParams {
    pub eps: f64,
    pub eta: f64,
    pub seed: u64,
    pub mode: ScanMode,
    pub generator: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisCounts {
    pub lattice_points: usize,
    pub sampled: usize,
    pub non_neighboring: usize,
    pub probe_points: usize,
    pub marginal: usize,
    pub pairs_tested: u64,
}

/// Outcome of a full analysis run, including the intermediate sets.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    /// `true` when every tested midpoint is covered (convex at precision eps).
    pub omega: bool,
    pub witness: Option<Point>,
    pub witness_pair: Option<(usize, usize)>,
    pub marginal: MarginalSet,
    pub params: AnalysisParams,
    pub counts: AnalysisCounts,
    pub evidence: Evidence,
    pub violations: Option<u64>,
    pub warnings: Vec<String>,
    pub sampled: SampledGrid,
    pub non_neighboring: NonNeighboringSet,
}

/// Runs the whole pipeline: lattice construction and sampling, detection of
/// uncovered lattice points, marginal point extraction, and the midpoint
/// test.
pub fn analyze(
    cluster: &Cluster,
    eps: f64,
    eta: f64,
    seed: u64,
    mode: ScanMode,
) -> Result<AnalysisReport> {
    check_eps(eps)?;
    let spec = GridSpec::build(cluster, eps)?;
    let sampled = SampledGrid::sample(&spec, eta, seed)?;
    let index = SpatialIndex::build(cluster, eps)?;

    let non_neighboring = detect_non_neighboring(cluster, &sampled, &index)?;
    let marginal = detect_marginal(cluster, &non_neighboring, &spec, &index)?;
    let outcome = midpoint_test(cluster, &marginal, &index, eps, mode)?;

    let mut warnings = Vec::new();
    if outcome.evidence == Evidence::InsufficientGridEvidence {
        warnings.push(format!(
            "only {} marginal point(s) found from {} non-neighboring lattice point(s); \
             convexity is not established by the grid",
            marginal.len(),
            non_neighboring.len()
        ));
    }

    Ok(AnalysisReport {
        omega: outcome.convex,
        witness: outcome.witness,
        witness_pair: outcome.witness_pair,
        counts: AnalysisCounts {
            lattice_points: spec.total(),
            sampled: sampled.len(),
            non_neighboring: non_neighboring.len(),
            probe_points: marginal.probes.len(),
            marginal: marginal.len(),
            pairs_tested: outcome.pairs_tested,
        },
        params: AnalysisParams {
            eps,
            eta,
            seed,
            mode,
            generator: GENERATOR,
        },
        evidence: outcome.evidence,
        violations: outcome.violations,
        warnings,
        marginal,
        sampled,
        non_neighboring,
    })
}
