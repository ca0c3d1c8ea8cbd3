//! Row type shared by `scan` and `entropy`, and its table/CSV/JSON renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::BoundaryStats;

/// Fixed CSV header.
pub const CSV_HEADER: [&str; 11] = [
    "partition",
    "size_A",
    "L",
    "n1",
    "n2",
    "n3",
    "S_bits",
    "S_closed_form",
    "lower_bound",
    "upper_bound",
    "oracle_S",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub partition: String,
    #[serde(rename = "size_A")]
    pub size_a: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    #[serde(rename = "S_bits")]
    pub s_bits: usize,
    #[serde(rename = "S_closed_form")]
    pub s_closed_form: Option<f64>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    #[serde(rename = "oracle_S")]
    pub oracle_s: Option<f64>,
}

impl Row {
    pub fn new(partition: String, size_a: usize, stats: &BoundaryStats, s_bits: usize) -> Self {
        let l = stats.l_boundary as f64;
        Self {
            partition,
            size_a,
            l: stats.l_boundary,
            n1: stats.n1,
            n2: stats.n2,
            n3: stats.n3,
            s_bits,
            s_closed_form: None,
            lower_bound: l / 3.0 - 1.0,
            upper_bound: 7.0 * l / 6.0 - 1.0,
            oracle_s: None,
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v}")).unwrap_or_default()
}

pub fn render_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)
        .map_err(|e| Error::Internal(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.partition.clone(),
            r.size_a.to_string(),
            r.l.to_string(),
            r.n1.to_string(),
            r.n2.to_string(),
            r.n3.to_string(),
            r.s_bits.to_string(),
            opt(r.s_closed_form),
            format!("{}", r.lower_bound),
            format!("{}", r.upper_bound),
            opt(r.oracle_s),
        ])
        .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn render_json(rows: &[Row]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render_table(rows: &[Row]) -> String {
    let cells: Vec<[String; 11]> = rows
        .iter()
        .map(|r| {
            [
                r.partition.clone(),
                r.size_a.to_string(),
                r.l.to_string(),
                r.n1.to_string(),
                r.n2.to_string(),
                r.n3.to_string(),
                r.s_bits.to_string(),
                r.s_closed_form.map_or("--".into(), |v| format!("{v}")),
                format!("{:.3}", r.lower_bound),
                format!("{:.3}", r.upper_bound),
                r.oracle_s.map_or("--".into(), |v| format!("{v:.9}")),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = CSV_HEADER.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, items: &[&str]| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(&mut out, &CSV_HEADER);
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
        line(&mut out, &refs);
    }
    out
}

pub fn render(rows: &[Row], format: Format) -> Result<String> {
    match format {
        Format::Table => Ok(render_table(rows)),
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}
