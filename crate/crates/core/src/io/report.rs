//! JSON serialization of an analysis report. Keys are emitted in sorted
//! order and the document ends with a newline, so equal inputs produce
//! byte-identical files.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::convexity::AnalysisReport;
use crate::error::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn report_json(report: &AnalysisReport) -> Value {
    let c = &report.counts;
    json!({
        "omega": report.omega,
        "witness": report.witness.as_ref().map(|w| w.coords().to_vec()),
        "witness_pair": report.witness_pair.map(|(j, k)| [j, k]),
        "eps": report.params.eps,
        "eta": report.params.eta,
        "seed": report.params.seed,
        "generator": report.params.generator,
        "mode": report.params.mode.as_str(),
        "evidence": report.evidence.as_str(),
        "counts": {
            "t": c.lattice_points,
            "sampled": c.sampled,
            "non_neighboring": c.non_neighboring,
            "probe_points": c.probe_points,
            "marginal": c.marginal,
            "pairs_tested": c.pairs_tested,
        },
        "violations": report.violations,
        "marginal_ids": report.marginal.ids(),
        "warnings": report.warnings,
        "version": VERSION,
    })
}

pub fn report_string(report: &AnalysisReport) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string_pretty(&report_json(report)).expect("report is valid JSON");
    s.push('\n');
    s
}

pub fn write_report(path: &Path, report: &AnalysisReport) -> Result<()> {
    fs::write(path, report_string(report))?;
    Ok(())
}
