//! Layered SVG figure of a 2-D analysis: cluster, sampled lattice,
//! uncovered lattice points, probes, marginal points and the witness.

use std::fmt::Write;

use crate::convexity::AnalysisReport;
use crate::error::{Error, Result};
use crate::geometry::Cluster;
use crate::grid::LatticeIndex;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const LEGEND_W: f64 = 210.0;

struct Frame {
    lo: [f64; 2],
    scale: f64,
    height: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.lo[0]) * self.scale
    }

    fn y(&self, v: f64) -> f64 {
        self.height - MARGIN - (v - self.lo[1]) * self.scale
    }
}

/// Renders the analysis as an SVG document. Only 2-D clusters are supported.
pub fn render_svg(cluster: &Cluster, report: &AnalysisReport) -> Result<String> {
    if cluster.dims() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cluster.dims(),
        });
    }
    let spec = &report.sampled.spec;
    let eps = spec.eps();
    let lo = [spec.origin()[0], spec.origin()[1]];
    let span = [
        (spec.counts()[0] - 1) as f64 * eps,
        (spec.counts()[1] - 1) as f64 * eps,
    ];
    let scale = (SIZE - 2.0 * MARGIN) / span[0].max(span[1]);
    let height = span[1] * scale + 2.0 * MARGIN;
    let width = span[0] * scale + 2.0 * MARGIN + LEGEND_W;
    let f = Frame { lo, scale, height };
    let lattice = |g: &LatticeIndex| {
        let p = spec.point_unchecked(g);
        (f.x(p[0]), f.y(p[1]))
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r#"<g id="cluster" fill="royalblue">"#);
    for p in cluster.points() {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.5"/>"#, f.x(p[0]), f.y(p[1]));
    }
    s.push_str("</g>\n");

    let rings = [
        ("sampled", "red", 2.5, &report.sampled.members),
        ("non-neighboring", "green", 3.5, &report.non_neighboring.members),
        ("probes", "magenta", 4.5, &report.marginal.probes),
    ];
    for (id, color, r, members) in rings {
        let _ = writeln!(s, r#"<g id="{id}" fill="none" stroke="{color}" stroke-width="0.6">"#);
        for g in members {
            let (x, y) = lattice(g);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}"/>"#);
        }
        s.push_str("</g>\n");
    }

    let _ = writeln!(s, r#"<g id="marginal" fill="none" stroke="black" stroke-width="1">"#);
    for id in report.marginal.ids() {
        let p = cluster.point(id);
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="4"/>"#, f.x(p[0]), f.y(p[1]));
    }
    s.push_str("</g>\n");

    if let (Some((j, k)), Some(w)) = (report.witness_pair, report.witness.as_ref()) {
        s.push_str(r#"<g id="witness">"#);
        s.push('\n');
        for id in [j, k] {
            let p = cluster.point(id);
            let (x, y) = (f.x(p[0]), f.y(p[1]));
            let _ = writeln!(
                s,
                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="black"/>"#,
                x,
                y - 7.0,
                x - 6.0,
                y + 5.0,
                x + 6.0,
                y + 5.0
            );
        }
        let (x, y) = (f.x(w[0]), f.y(w[1]));
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="none" stroke="green" stroke-width="1.5"/>"#,
            eps * scale
        );
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="8" height="8" fill="red"/>"#,
            x - 4.0,
            y - 4.0
        );
        s.push_str("</g>\n");
    }

    legend(&mut s, width - LEGEND_W + 10.0, report);
    s.push_str("</svg>\n");
    Ok(s)
}

fn legend(s: &mut String, x0: f64, report: &AnalysisReport) {
    let entries = [
        (r##"<circle r="2" fill="royalblue"/>"##, "cluster point"),
        (r##"<circle r="3" fill="none" stroke="red"/>"##, "sampled grid point"),
        (r##"<circle r="3.5" fill="none" stroke="green"/>"##, "non-neighboring grid point"),
        (r##"<circle r="4" fill="none" stroke="magenta"/>"##, "probe grid point"),
        (r##"<circle r="4" fill="none" stroke="black"/>"##, "marginal cluster point"),
        (r##"<polygon points="0,-6 -5,4 5,4" fill="black"/>"##, "witness pair"),
        (r##"<rect x="-4" y="-4" width="8" height="8" fill="red"/>"##, "uncovered midpoint"),
        (r##"<circle r="6" fill="none" stroke="green"/>"##, "eps-ball of midpoint"),
    ];
    let _ = writeln!(s, r#"<g id="legend" font-family="sans-serif" font-size="12">"#);
    for (i, (glyph, label)) in entries.iter().enumerate() {
        let y = MARGIN + 22.0 * i as f64;
        let _ = writeln!(s, r#"<g transform="translate({:.1},{y:.1})">{glyph}</g>"#, x0 + 8.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}">{label}</text>"#, x0 + 22.0, y + 4.0);
    }
    let verdict = if report.omega { "convex at precision eps" } else { "non-convex" };
    let _ = writeln!(
        s,
        r#"<text x="{x0:.1}" y="{:.1}" font-weight="bold">{verdict}</text>"#,
        MARGIN + 22.0 * entries.len() as f64 + 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{x0:.1}" y="{:.1}">eps={} eta={} seed={}</text>"#,
        MARGIN + 22.0 * entries.len() as f64 + 28.0,
        report.params.eps,
        report.params.eta,
        report.params.seed
    );
    s.push_str("</g>\n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::{analyze, ScanMode};

    #[test]
    fn layers_are_present() {
        let rows: Vec<Vec<f64>> = (0..21)
            .flat_map(|i| (0..21).map(move |j| vec![i as f64 * 0.05, j as f64 * 0.05]))
            .filter(|r| r[0] < 0.3 || r[1] < 0.3)
            .collect();
        let c = Cluster::from_rows(rows).unwrap();
        let r = analyze(&c, 0.05, 1.0, 0, ScanMode::FirstWitness).unwrap();
        let svg = render_svg(&c, &r).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        for id in ["cluster", "sampled", "non-neighboring", "probes", "marginal", "witness", "legend"] {
            assert!(svg.contains(&format!(r#"id="{id}""#)), "{id}");
        }
        assert_eq!(svg.matches("<polygon").count(), 3);
    }

    #[test]
    fn rejects_non_planar_input() {
        let c = Cluster::from_rows(vec![vec![0.0, 0.0, 0.0]]).unwrap();
        let r = analyze(&c, 1.0, 1.0, 0, ScanMode::FirstWitness).unwrap();
        assert!(render_svg(&c, &r).is_err());
    }
}
