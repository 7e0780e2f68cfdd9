mod common;

use std::path::Path;
use std::process::{Command, Output};

use gridconvex::io::{read_points, write_points};
use gridconvex::{Cluster, Shape};
use sha2::{Digest, Sha256};

use common::*;

const CRESCENT_SEED0_SHA256: &str = "a449df66868f4db3afcbea885c1689cb7d158414c9e02cc27107ac1a11d3b9a0";

fn cli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridconvex"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_ring_writes_canonical_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["generate", "--shape", "ring", "--out", "ring.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let cluster = read_points(&dir.path().join("ring.csv")).unwrap();
    assert_eq!(cluster.len(), 2000);
    assert_eq!(cluster.points(), ring(0).points());
}

#[test]
fn crescent_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["generate", "--shape", "crescent", "--seed", "0", "--out", "c.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("c.csv");
    let (spec, _) = canonical(CRESCENT_TOML, 0);
    let cluster = read_points(&path).unwrap();
    assert_eq!(cluster.len(), 600);
    for x in cluster.points() {
        assert!(spec.shape.contains([x[0], x[1]]), "{x:?}");
    }
    let digest = Sha256::digest(std::fs::read(&path).unwrap());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, CRESCENT_SEED0_SHA256);
}

#[test]
fn generate_from_config_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("disk.toml"),
        "n = 50\nseed = 4\n[shape]\nkind = \"disk\"\ncenter = [1.0, 1.0]\nradius = 0.5\n",
    )
    .unwrap();
    let o = cli(&["generate", "--config", "disk.toml", "--radius", "0.25", "--out", "d.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let cluster = read_points(&dir.path().join("d.csv")).unwrap();
    assert_eq!(cluster.len(), 50);
    let shape = Shape::Disk { center: [1.0, 1.0], radius: 0.25 };
    assert!(cluster.points().iter().all(|x| shape.contains([x[0], x[1]])));
}

#[test]
fn analyze_ring_reports_non_convex() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["generate", "--shape", "ring", "--out", "ring.csv"], dir.path());
    let o = cli(
        &["analyze", "--input", "ring.csv", "--eps", "0.05", "--eta", "0.5", "--seed", "7", "--out", "r.json", "--svg", "r.svg"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&dir.path().join("r.json"));
    assert_eq!(report["omega"], false);
    assert_eq!(report["eps"], 0.05);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["mode"], "first");
    assert_eq!(report["generator"], "chacha8");
    assert_eq!(report["counts"]["t"], 2025);
    let w: Vec<f64> = report["witness"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    let cluster = ring(0);
    let wp = gridconvex::Point::new(w).unwrap();
    assert!(cluster.points().iter().all(|x| gridconvex::distance(&wp, x).unwrap() > 0.05));
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("witness"));
}

#[test]
fn analyze_crescent_coarse_grid_reports_convex() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["generate", "--shape", "crescent", "--out", "c.csv"], dir.path());
    let o = cli(
        &["analyze", "--input", "c.csv", "--eps", "0.2", "--eta", "0.5", "--seed", "0", "--mode", "exhaustive", "--out", "r.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&dir.path().join("r.json"));
    assert_eq!(report["omega"], true);
    assert_eq!(report["witness"], serde_json::Value::Null);
    assert_eq!(report["violations"], 0);
}

#[test]
fn auto_eps_and_preprocessing_flags() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["generate", "--shape", "ring", "--out", "ring.csv"], dir.path());
    let o = cli(
        &["analyze", "--input", "ring.csv", "--auto-eps", "--subsample", "0.5", "--eta", "0.5", "--out", "r.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&dir.path().join("r.json"));
    assert_eq!(report["omega"], false);
    assert!(report["eps"].as_f64().unwrap() > 0.04);

    let o = cli(
        &["analyze", "--input", "ring.csv", "--eps", "0.1", "--project-dims", "2", "--out", "p.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn select_eps_on_a_chain() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64 * 0.1]).collect();
    write_points(&dir.path().join("chain.csv"), &Cluster::from_rows(rows).unwrap(), &[]).unwrap();
    let o = cli(&["select-eps", "--input", "chain.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let eps: f64 = String::from_utf8(o.stdout).unwrap().trim().parse().unwrap();
    assert!((0.1..0.1 * 1.02 + 1e-12).contains(&eps), "{eps}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["generate", "--shape", "ring", "--out", "ring.csv"], dir.path());

    let o = cli(&["analyze", "--input", "ring.csv", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));

    let o = cli(&["analyze", "--input", "ring.csv", "--eps", "-1", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = cli(&["analyze", "--input", "ring.csv", "--eps", "0.05", "--eta", "1.5", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--eta"), "{}", stderr(&o));

    let o = cli(&["generate", "--shape", "rectangle", "--min", "0", "0", "--max", "1", "0", "--out", "x.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));

    let o = cli(&["analyze", "--input", "missing.csv", "--eps", "0.05", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));

    let o = cli(&["analyze", "--input", "ring.csv", "--eps", "1e-6", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    std::fs::write(dir.path().join("two.csv"), "0,0\n1,1\n").unwrap();
    let o = cli(&["select-eps", "--input", "two.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    // coincident points leave no positive radius to try
    std::fs::write(dir.path().join("same.csv"), "1,1\n1,1\n1,1\n1,1\n1,1\n").unwrap();
    let o = cli(&["analyze", "--input", "same.csv", "--auto-eps", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(!dir.path().join("r.json").exists());
}
