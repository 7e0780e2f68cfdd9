#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gridconvex::{
    in_eps_neighborhood, midpoint, AnalysisReport, Cluster, GridSpec, LatticeIndex, Point,
    ShapeSpec,
};

pub const RING_TOML: &str = include_str!("../../configs/ring.toml");
pub const CRESCENT_TOML: &str = include_str!("../../configs/crescent.toml");

pub fn canonical(text: &str, offset: u64) -> (ShapeSpec, Cluster) {
    let mut spec = ShapeSpec::from_toml(text).unwrap();
    spec.seed += offset;
    let cluster = gridconvex::generate(&spec).unwrap();
    (spec, cluster)
}

pub fn ring(offset: u64) -> Cluster {
    canonical(RING_TOML, offset).1
}

pub fn crescent(offset: u64) -> Cluster {
    canonical(CRESCENT_TOML, offset).1
}

/// O(n) scan: true when no cluster point is within `eps` of `q`.
pub fn uncovered(cluster: &Cluster, q: &Point, eps: f64) -> bool {
    cluster
        .points()
        .iter()
        .all(|x| !in_eps_neighborhood(q, x, eps).unwrap())
}

/// Re-checks a non-convex verdict from scratch. Returns a description of the
/// first problem found.
pub fn verify_witness(cluster: &Cluster, report: &AnalysisReport) -> Result<(), String> {
    let eps = report.params.eps;
    match (report.omega, &report.witness, report.witness_pair) {
        (true, None, None) => Ok(()),
        (false, Some(w), Some((j, k))) => {
            if j == k || !report.marginal.contains(j) || !report.marginal.contains(k) {
                return Err(format!("witness pair ({j}, {k}) is not two distinct marginal points"));
            }
            if &midpoint(cluster.point(j), cluster.point(k)).unwrap() != w {
                return Err("witness is not the midpoint of its pair".into());
            }
            for (id, x) in cluster.points().iter().enumerate() {
                let d = gridconvex::distance(w, x).unwrap();
                if d <= eps {
                    return Err(format!("witness {w:?} within {d} <= eps of point {id}"));
                }
            }
            Ok(())
        }
        _ => Err("omega, witness and witness_pair disagree".into()),
    }
}

/// Literal, unindexed transcription of the three phases over a full
/// lattice: uncovered lattice points, marginal points via lattice
/// neighbors and nearest-point argmin (ties to the lowest id), and the
/// first uncovered midpoint in lexicographic pair order.
pub struct Oracle {
    pub non_neighboring: BTreeSet<LatticeIndex>,
    pub marginal: BTreeSet<usize>,
    pub omega: bool,
    pub witness: Option<Point>,
    pub witness_pair: Option<(usize, usize)>,
}

fn lattice_neighbors(counts: &[usize], g: &LatticeIndex) -> Vec<LatticeIndex> {
    let mut out = Vec::new();
    for axis in 0..counts.len() {
        for step in [-1i64, 1] {
            let v = g.0[axis] as i64 + step;
            if v >= 0 && (v as usize) < counts[axis] {
                let mut h = g.0.clone();
                h[axis] = v as usize;
                out.push(LatticeIndex(h));
            }
        }
    }
    out
}

fn sq(a: &Point, b: &Point) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn oracle(cluster: &Cluster, spec: &GridSpec, sampled: &BTreeSet<LatticeIndex>) -> Oracle {
    let eps = spec.eps();
    let xs = cluster.points();

    let mut t = BTreeSet::new();
    for g in sampled {
        let gp = spec.to_point(g).unwrap();
        let mut zeta = false;
        for x in xs {
            if in_eps_neighborhood(&gp, x, eps).unwrap() {
                zeta = true;
                break;
            }
        }
        if !zeta {
            t.insert(g.clone());
        }
    }

    let mut u = BTreeSet::new();
    for h in &t {
        u.extend(lattice_neighbors(spec.counts(), h));
    }
    let u: BTreeSet<LatticeIndex> = u.difference(&t).cloned().collect();
    let mut v = BTreeSet::new();
    for i in &u {
        let ip = spec.to_point(i).unwrap();
        let w: Vec<usize> = (0..xs.len())
            .filter(|&id| in_eps_neighborhood(&ip, &xs[id], eps).unwrap())
            .collect();
        if let Some(&first) = w.first() {
            let mut best = first;
            for &id in &w[1..] {
                if sq(&ip, &xs[id]) < sq(&ip, &xs[best]) {
                    best = id;
                }
            }
            v.insert(best);
        }
    }

    let ids: Vec<usize> = v.iter().copied().collect();
    let mut omega = true;
    let mut witness = None;
    let mut pair = None;
    'pairs: for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            let gamma = midpoint(&xs[ids[a]], &xs[ids[b]]).unwrap();
            let mut zeta = false;
            for x in xs {
                if in_eps_neighborhood(&gamma, x, eps).unwrap() {
                    zeta = true;
                    break;
                }
            }
            if !zeta {
                omega = false;
                witness = Some(gamma);
                pair = Some((ids[a], ids[b]));
                break 'pairs;
            }
        }
    }
    Oracle {
        non_neighboring: t,
        marginal: v,
        omega,
        witness,
        witness_pair: pair,
    }
}

pub fn marginal_ids(m: &BTreeMap<usize, Vec<LatticeIndex>>) -> BTreeSet<usize> {
    m.keys().copied().collect()
}

/// Points of the lattice `spacing * Z^2` that satisfy `inside`, within the
/// box `[lo, hi]`.
pub fn lattice_fill(lo: [f64; 2], hi: [f64; 2], spacing: f64, inside: impl Fn(f64, f64) -> bool) -> Cluster {
    let nx = ((hi[0] - lo[0]) / spacing).floor() as usize;
    let ny = ((hi[1] - lo[1]) / spacing).floor() as usize;
    let rows: Vec<Vec<f64>> = (0..=nx)
        .flat_map(|i| (0..=ny).map(move |j| (i, j)))
        .map(|(i, j)| vec![lo[0] + i as f64 * spacing, lo[1] + j as f64 * spacing])
        .filter(|r| inside(r[0], r[1]))
        .collect();
    Cluster::from_rows(rows).unwrap()
}
