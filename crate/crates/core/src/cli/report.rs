//! Report rows and their markdown, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{ThresholdBounds, Thresholds};
use crate::oracle::ExceptionRow;
use crate::revealing::RevealingFactor;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSpec {
    Single(u64),
    Many(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub p: usize,
    pub k: KSpec,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTriple {
    pub schur: i64,
    pub erdos_graham: Option<i64>,
    pub selmer: i64,
}

impl From<ThresholdBounds> for BoundTriple {
    fn from(b: ThresholdBounds) -> Self {
        Self {
            schur: b.schur,
            erdos_graham: b.erdos_graham,
            selmer: b.selmer,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub gamma: i64,
    pub gamma_prime: i64,
    pub delta: i64,
    pub delta_prime: i64,
    pub gamma_bounds: BoundTriple,
    pub gamma_prime_bounds: BoundTriple,
}

impl From<Thresholds> for ThresholdReport {
    fn from(t: Thresholds) -> Self {
        Self {
            gamma: t.gamma,
            gamma_prime: t.gamma_prime,
            delta: t.delta,
            delta_prime: t.delta_prime,
            gamma_bounds: t.gamma_bounds.into(),
            gamma_prime_bounds: t.gamma_prime_bounds.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealingEntry {
    pub f: u64,
    pub old: String,
    pub new: String,
    pub ratio: String,
    pub approx: String,
}

impl RevealingEntry {
    pub fn new(f: u64, x: &RevealingFactor) -> Self {
        Self {
            f,
            old: x.old_count.to_string(),
            new: x.new_count.to_string(),
            ratio: x.ratio.to_string(),
            approx: x.approx.clone(),
        }
    }
}

/// Multiples of `step` from `start` to `end` inclusive; empty when `start > end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub start: i64,
    pub end: i64,
    pub step: u64,
}

impl Progression {
    pub fn contains(&self, f: u64) -> bool {
        let f = f as i64;
        f >= self.start && f <= self.end && (f - self.start) % self.step as i64 == 0
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (self.start.max(0)..=self.end)
            .step_by(self.step as usize)
            .map(|f| f as u64)
    }
}

/// Exceptional low values, the guaranteed progression, exceptional high values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeParts {
    pub low: Vec<u64>,
    pub progression: Progression,
    pub high: Vec<u64>,
}

impl ThreeParts {
    /// Split `values` around the open interval `(lower, upper)` filled by multiples of `step`.
    pub fn split(values: &[u64], lower: i64, upper: i64, step: u64) -> Self {
        let s = step as i64;
        let start = (lower.div_euclid(s) + 1) * s;
        let end = (upper - 1).div_euclid(s) * s;
        Self {
            low: values
                .iter()
                .copied()
                .filter(|&f| (f as i64) <= lower)
                .collect(),
            progression: Progression { start, end, step },
            high: values
                .iter()
                .copied()
                .filter(|&f| (f as i64) >= upper)
                .collect(),
        }
    }

    /// Every value of the progression appears in `values`, and nothing else lies between.
    pub fn consistent_with(&self, values: &[u64]) -> bool {
        let inside: Vec<u64> = values
            .iter()
            .copied()
            .filter(|&f| !self.low.contains(&f) && !self.high.contains(&f))
            .collect();
        self.progression.members().all(|f| values.contains(&f))
            && inside.iter().all(|&f| self.progression.contains(f))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub predicted_range: Option<(i64, i64)>,
    pub predicted_discreet_range: Option<(i64, i64)>,
    pub possible_parts: Option<ThreeParts>,
    pub discreet_parts: Option<ThreeParts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub sequence: String,
    pub binary: String,
    pub k: u64,
    pub possible: Vec<u64>,
    pub discreet: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub revealing: Option<Vec<RevealingEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranges: Option<RangeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub rows: Vec<ReportRow>,
}

/// The data every rendering carries, used for round-trip comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreRow {
    pub sequence: String,
    pub binary: String,
    pub k: u64,
    pub possible: Vec<u64>,
    pub discreet: Vec<u64>,
}

impl From<&ReportRow> for CoreRow {
    fn from(r: &ReportRow) -> Self {
        Self {
            sequence: r.sequence.clone(),
            binary: r.binary.clone(),
            k: r.k,
            possible: r.possible.clone(),
            discreet: r.discreet.clone(),
        }
    }
}

/// `3, 6, **7**, 9`: discreet values in bold.
pub fn values_cell(possible: &[u64], discreet: &[u64]) -> String {
    possible
        .iter()
        .map(|f| {
            if discreet.contains(f) {
                format!("**{f}**")
            } else {
                f.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn parse_values_cell(cell: &str) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut possible = Vec::new();
    let mut discreet = Vec::new();
    for tok in cell.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (bold, digits) = match tok.strip_prefix("**").and_then(|t| t.strip_suffix("**")) {
            Some(inner) => (true, inner),
            None => (false, tok),
        };
        let f: u64 = digits.parse().map_err(|_| parse_error(cell, "bad value"))?;
        possible.push(f);
        if bold {
            discreet.push(f);
        }
    }
    Ok((possible, discreet))
}

fn parse_error(input: &str, reason: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn list(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn opt_pair(p: Option<(i64, i64)>) -> String {
    p.map_or("-".to_string(), |(a, b)| format!("({a}, {b})"))
}

fn progression_cell(p: &Progression) -> String {
    if p.start > p.end {
        "-".to_string()
    } else {
        format!("{}..{} step {}", p.start, p.end, p.step)
    }
}

fn table_cells(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

pub fn render_table(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => render_json(report),
        Format::Csv => render_long_csv(report, true),
        Format::Md => {
            let k = match &report.meta.k {
                KSpec::Single(k) => k.to_string(),
                KSpec::Many(ks) => list(ks),
            };
            let mut out = format!(
                "Piles: {}, coins per pile: {k}. Bold values are discreet.\n\n",
                report.meta.p
            );
            out.push_str("| Binary rep | Sorting sequence | Values of f |\n");
            out.push_str("|---|---|---|\n");
            for row in &report.rows {
                out.push_str(&table_cells(&[
                    row.binary.clone(),
                    row.sequence.clone(),
                    values_cell(&row.possible, &row.discreet),
                ]));
            }
            let with_revealing: Vec<_> = report
                .rows
                .iter()
                .filter(|r| r.revealing.is_some())
                .collect();
            if !with_revealing.is_empty() {
                out.push_str(
                    "\n| Sorting sequence | f | Old | New | Revealing factor | Approx |\n",
                );
                out.push_str("|---|---|---|---|---|---|\n");
                for row in with_revealing {
                    for e in row.revealing.as_ref().unwrap() {
                        out.push_str(&table_cells(&[
                            row.sequence.clone(),
                            e.f.to_string(),
                            e.old.clone(),
                            e.new.clone(),
                            e.ratio.clone(),
                            e.approx.clone(),
                        ]));
                    }
                }
            }
            Ok(out)
        }
    }
}

pub fn render_ranges(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => render_json(report),
        Format::Csv => render_long_csv(report, false),
        Format::Md => {
            let mut out = String::new();
            if let Some(first) = report.rows.first() {
                writeln!(
                    out,
                    "Sorting sequence {} (binary {})",
                    first.sequence, first.binary
                )
                .unwrap();
                match &first.thresholds {
                    Some(t) => {
                        writeln!(
                            out,
                            "gamma = {}, gamma' = {}, delta = {}, delta' = {}",
                            t.gamma, t.gamma_prime, t.delta, t.delta_prime
                        )
                        .unwrap();
                        writeln!(out, "gamma bounds: {}", bound_line(&t.gamma_bounds)).unwrap();
                        writeln!(out, "gamma' bounds: {}", bound_line(&t.gamma_prime_bounds))
                            .unwrap();
                    }
                    None => out.push_str("single weight class: no thresholds\n"),
                }
                out.push('\n');
            }
            out.push_str(
                "| k | Values of f | Range | Discreet range | Low | Progression | High |\n",
            );
            out.push_str("|---|---|---|---|---|---|---|\n");
            for row in &report.rows {
                let ranges = row.ranges.as_ref();
                let parts = ranges.and_then(|r| r.possible_parts.as_ref());
                out.push_str(&table_cells(&[
                    row.k.to_string(),
                    values_cell(&row.possible, &row.discreet),
                    opt_pair(ranges.and_then(|r| r.predicted_range)),
                    opt_pair(ranges.and_then(|r| r.predicted_discreet_range)),
                    parts.map_or("-".into(), |p| list(&p.low)),
                    parts.map_or("-".into(), |p| progression_cell(&p.progression)),
                    parts.map_or("-".into(), |p| list(&p.high)),
                ]));
            }
            Ok(out)
        }
    }
}

fn bound_line(b: &BoundTriple) -> String {
    let eg = b.erdos_graham.map_or("-".to_string(), |v| v.to_string());
    format!(
        "schur {}, erdos-graham {}, selmer {}",
        b.schur, eg, b.selmer
    )
}

pub fn render_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| parse_error("json", &e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn render_long_csv(report: &Report, with_binary: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| parse_error("csv", &e.to_string());
    if with_binary {
        w.write_record(["binary", "sequence", "k", "f", "discreet"])
            .map_err(io)?;
    } else {
        w.write_record(["sequence", "k", "f", "discreet"])
            .map_err(io)?;
    }
    for row in &report.rows {
        for f in &row.possible {
            let mut rec = Vec::with_capacity(5);
            if with_binary {
                rec.push(row.binary.clone());
            }
            rec.push(row.sequence.clone());
            rec.push(row.k.to_string());
            rec.push(f.to_string());
            rec.push(row.discreet.contains(f).to_string());
            w.write_record(&rec).map_err(io)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| parse_error("csv", &e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Read back the rows of a `table` rendering.
///
/// CSV output only lists possible values, so sequences with no possible
/// value are absent from it.
pub fn parse_table(text: &str, format: Format) -> Result<Vec<CoreRow>> {
    match format {
        Format::Json => {
            let report: Report =
                serde_json::from_str(text).map_err(|e| parse_error("json", &e.to_string()))?;
            Ok(report.rows.iter().map(CoreRow::from).collect())
        }
        Format::Md => {
            let mut lines = text.lines();
            let caption = lines.next().unwrap_or_default();
            let k: u64 = caption
                .split("coins per pile: ")
                .nth(1)
                .and_then(|t| t.split('.').next())
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_error(caption, "missing pile size"))?;
            let mut rows = Vec::new();
            for line in lines.skip(3) {
                if line.trim().is_empty() {
                    break;
                }
                let cells: Vec<&str> = line
                    .trim()
                    .trim_matches('|')
                    .split(" | ")
                    .map(str::trim)
                    .collect();
                if cells.len() != 3 {
                    return Err(parse_error(line, "expected three cells"));
                }
                let (possible, discreet) = parse_values_cell(cells[2])?;
                rows.push(CoreRow {
                    binary: cells[0].to_string(),
                    sequence: cells[1].to_string(),
                    k,
                    possible,
                    discreet,
                });
            }
            Ok(rows)
        }
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let mut rows: Vec<CoreRow> = Vec::new();
            for rec in reader.records() {
                let rec = rec.map_err(|e| parse_error("csv", &e.to_string()))?;
                let field = |i: usize| rec.get(i).unwrap_or_default().to_string();
                let k: u64 = field(2)
                    .parse()
                    .map_err(|_| parse_error(&field(2), "bad k"))?;
                let f: u64 = field(3)
                    .parse()
                    .map_err(|_| parse_error(&field(3), "bad f"))?;
                let discreet = field(4) == "true";
                if rows.last().is_none_or(|r| r.sequence != field(1)) {
                    rows.push(CoreRow {
                        binary: field(0),
                        sequence: field(1),
                        k,
                        possible: Vec::new(),
                        discreet: Vec::new(),
                    });
                }
                let row = rows.last_mut().unwrap();
                row.possible.push(f);
                if discreet {
                    row.discreet.push(f);
                }
            }
            Ok(rows)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionMeta {
    pub max_p: usize,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionEntry {
    pub p: usize,
    pub k: u64,
    pub sequence: String,
    pub values: Vec<u64>,
}

impl From<&ExceptionRow> for ExceptionEntry {
    fn from(r: &ExceptionRow) -> Self {
        Self {
            p: r.piles,
            k: r.k,
            sequence: r.sequence.to_string(),
            values: r.values.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionReport {
    pub meta: ExceptionMeta,
    pub rows: Vec<ExceptionEntry>,
}

pub fn render_exceptions(report: &ExceptionReport, format: Format) -> Result<String> {
    match format {
        Format::Json => render_json(report),
        Format::Md => {
            let mut out =
                String::from("| p | k | Sorting sequence | Values of f |\n|---|---|---|---|\n");
            for r in &report.rows {
                out.push_str(&table_cells(&[
                    r.p.to_string(),
                    r.k.to_string(),
                    r.sequence.clone(),
                    list(&r.values),
                ]));
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| parse_error("csv", &e.to_string());
            w.write_record(["p", "k", "sequence", "f"]).map_err(io)?;
            for r in &report.rows {
                for f in &r.values {
                    w.write_record([
                        r.p.to_string(),
                        r.k.to_string(),
                        r.sequence.clone(),
                        f.to_string(),
                    ])
                    .map_err(io)?;
                }
            }
            let bytes = w
                .into_inner()
                .map_err(|e| parse_error("csv", &e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}
