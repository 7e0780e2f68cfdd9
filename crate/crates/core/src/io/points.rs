//! Delimited text point files: one point per row, an optional header row,
//! and `#` comment lines.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Cluster, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Delimiter {
    Char(char),
    Whitespace,
}

impl Delimiter {
    fn sniff(line: &str) -> Self {
        [',', '\t', ';']
            .into_iter()
            .find(|&c| line.contains(c))
            .map_or(Delimiter::Whitespace, Delimiter::Char)
    }

    fn split<'a>(self, line: &'a str) -> Box<dyn Iterator<Item = &'a str> + 'a> {
        match self {
            Delimiter::Char(c) => Box::new(line.split(c).map(str::trim)),
            Delimiter::Whitespace => Box::new(line.split_whitespace()),
        }
    }
}

pub fn parse_points(text: &str) -> Result<Cluster> {
    let mut delim = None;
    let mut arity = None;
    let mut points = Vec::new();
    let mut first_row = true;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = lineno + 1;
        let d = *delim.get_or_insert_with(|| Delimiter::sniff(line));
        let cells: Vec<&str> = d.split(line).collect();
        let parsed: Vec<Option<f64>> = cells.iter().map(|c| c.parse::<f64>().ok()).collect();

        if first_row {
            first_row = false;
            if parsed.iter().any(Option::is_none) {
                // header row
                arity = Some(cells.len());
                continue;
            }
        }
        if let Some(a) = arity {
            if cells.len() != a {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {a} columns, found {}", cells.len()),
                });
            }
        }
        arity = Some(cells.len());
        let coords = parsed
            .into_iter()
            .zip(&cells)
            .map(|(v, cell)| match v {
                Some(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse {
                    line: line_no,
                    message: format!("`{cell}` is not a finite number"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(Point::new(coords).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?);
    }
    Cluster::new(points)
}

pub fn read_points(path: &Path) -> Result<Cluster> {
    parse_points(&fs::read_to_string(path)?)
}

/// Comma-separated rows with 17 significant digits, so values round-trip
/// exactly. `comments` become leading `#` lines.
pub fn format_points(cluster: &Cluster, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let header: Vec<String> = (0..cluster.dims()).map(|i| format!("x{i}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in cluster.points() {
        let row: Vec<String> = p.coords().iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_points(path: &Path, cluster: &Cluster, comments: &[String]) -> Result<()> {
    fs::write(path, format_points(cluster, comments))?;
    Ok(())
}
