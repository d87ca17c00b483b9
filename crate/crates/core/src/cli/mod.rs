//! Command-line front end: tables, exception sweeps, range reports.

pub mod report;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{self, CoefficientSet};
use crate::oracle::{self, ExceptionRow, OracleLimits, OracleTable};
use crate::revealing;
use crate::sequence::{self, all_sequences, SortingSequence, WeighingInstance, DEFAULT_PILE_CAP};
use crate::solver;

use report::{
    ExceptionEntry, ExceptionMeta, ExceptionReport, Format, KSpec, Meta, RangeReport, Report,
    ReportRow, RevealingEntry, ThreeParts, ThresholdReport, VERSION,
};

#[derive(Debug, Parser)]
#[command(
    name = "coinsort",
    version,
    about = "Sorting-strategy solver for discreet coin weighing"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Possible and discreet fake counts for every sequence of length p.
    Table(TableArgs),
    /// Fake counts with general solutions both ways but no realisable configuration.
    Exceptions(ExceptionsArgs),
    /// Check that no exception has k >= p/c.
    VerifyConjecture(ConjectureArgs),
    /// Thresholds, predicted ranges and three-part split for one sequence.
    Ranges(RangesArgs),
    /// Frobenius number and classical bounds of a coefficient list.
    Frobenius(FrobeniusArgs),
    /// Exact revealing factor.
    Revealing(RevealingArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: u64,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    /// Cross-check every cell against brute-force enumeration.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = oracle::DEFAULT_MAX_STATES)]
    pub max_states: u128,
    #[arg(long, default_value_t = DEFAULT_PILE_CAP)]
    pub pile_cap: usize,
    /// Include the revealing factor for every possible f.
    #[arg(long)]
    pub revealing: bool,
}

#[derive(Debug, Args)]
pub struct ExceptionsArgs {
    #[arg(long, default_value_t = 6)]
    pub max_p: usize,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    #[arg(long, default_value_t = oracle::DEFAULT_MAX_STATES)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 8)]
    pub max_p: usize,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    /// Brute-force every (p, k) cell with at most this many states.
    #[arg(long, default_value_t = 2_000_000)]
    pub oracle_budget: u128,
    #[arg(long, default_value_t = 8)]
    pub pile_cap: usize,
}

#[derive(Debug, Args)]
pub struct RangesArgs {
    /// Sequence in the form "(0,1,1,1)".
    pub sequence: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u64>,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = oracle::DEFAULT_MAX_STATES)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    /// Increasing coefficients, e.g. "3,4".
    pub coeffs: String,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RevealingArgs {
    pub sequence: String,
    pub k: u64,
    pub f: u64,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

/// What a command produced; `success` is false when a cross-check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub diagnostics: Vec<String>,
    pub success: bool,
}

impl Outcome {
    fn checked(stdout: String, diagnostics: Vec<String>) -> Self {
        let success = diagnostics.is_empty();
        Self {
            stdout,
            diagnostics,
            success,
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Parse {
                    input: n.to_string(),
                    reason: e.to_string(),
                })?;
            pool.install(|| dispatch(cli.command))
        }
        None => dispatch(cli.command),
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Table(a) => cmd_table(&a),
        Command::Exceptions(a) => cmd_exceptions(&a),
        Command::VerifyConjecture(a) => cmd_verify_conjecture(&a),
        Command::Ranges(a) => cmd_ranges(&a),
        Command::Frobenius(a) => cmd_frobenius(&a),
        Command::Revealing(a) => cmd_revealing(&a),
    }
}

fn thresholds_of(seq: &SortingSequence) -> Option<ThresholdReport> {
    frobenius::thresholds(seq).ok().map(ThresholdReport::from)
}

fn revealing_entries(inst: &WeighingInstance, possible: &[u64]) -> Result<Vec<RevealingEntry>> {
    possible
        .iter()
        .map(|&f| revealing::revealing_factor(inst, f).map(|x| RevealingEntry::new(f, &x)))
        .collect()
}

/// One row per sequence of length `p`, in lexicographic order.
pub fn build_table(p: usize, k: u64, with_revealing: bool) -> Result<Report> {
    let seqs: Vec<SortingSequence> = all_sequences(p)?.collect();
    let rows = seqs
        .into_par_iter()
        .map(|seq| {
            let inst = WeighingInstance::new(seq.clone(), k)?;
            let possible = solver::possible_f(&inst);
            let discreet = solver::discreet_f(&inst);
            let revealing = if with_revealing {
                Some(revealing_entries(&inst, &possible)?)
            } else {
                None
            };
            Ok(ReportRow {
                sequence: seq.to_string(),
                binary: seq.binary().to_string(),
                k,
                possible,
                discreet,
                thresholds: thresholds_of(&seq),
                revealing,
                ranges: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        meta: Meta {
            p,
            k: KSpec::Single(k),
            version: VERSION.to_string(),
        },
        rows,
    })
}

/// Compare rows against the brute-force table; one line per disagreeing cell.
pub fn oracle_diff(
    rows: &[ReportRow],
    p: usize,
    k: u64,
    limits: OracleLimits,
) -> Result<Vec<String>> {
    let table = OracleTable::build(p, k, limits)?;
    let mut diffs = Vec::new();
    for row in rows.iter().filter(|r| r.k == k) {
        let seq: SortingSequence = row.sequence.parse()?;
        let possible = table.possible_f(&seq);
        let discreet = table.discreet_f(&seq);
        if possible != row.possible {
            diffs.push(format!(
                "{} k={}: solver possible {:?} != oracle {:?}",
                row.sequence, k, row.possible, possible
            ));
        }
        if discreet != row.discreet {
            diffs.push(format!(
                "{} k={}: solver discreet {:?} != oracle {:?}",
                row.sequence, k, row.discreet, discreet
            ));
        }
    }
    Ok(diffs)
}

fn cmd_table(a: &TableArgs) -> Result<Outcome> {
    sequence::check_pile_cap(a.p, a.pile_cap)?;
    WeighingInstance::new(SortingSequence::trivial(a.p)?, a.k)?;
    let report = build_table(a.p, a.k, a.revealing)?;
    let diagnostics = if a.oracle {
        oracle_diff(
            &report.rows,
            a.p,
            a.k,
            OracleLimits {
                max_states: a.max_states,
            },
        )?
    } else {
        Vec::new()
    };
    Ok(Outcome::checked(
        report::render_table(&report, a.format)?,
        diagnostics,
    ))
}

pub fn build_exceptions(max_p: usize, limits: OracleLimits) -> Result<ExceptionReport> {
    let rows = oracle::oracle_exceptions(max_p, limits)?;
    Ok(ExceptionReport {
        meta: ExceptionMeta {
            max_p,
            version: VERSION.to_string(),
        },
        rows: rows.iter().map(ExceptionEntry::from).collect(),
    })
}

fn cmd_exceptions(a: &ExceptionsArgs) -> Result<Outcome> {
    let report = build_exceptions(
        a.max_p,
        OracleLimits {
            max_states: a.max_states,
        },
    )?;
    Ok(Outcome::checked(
        report::render_exceptions(&report, a.format)?,
        Vec::new(),
    ))
}

/// Range and three-part data for each pile size, plus consistency findings.
pub fn build_ranges(seq: &SortingSequence, ks: &[u64]) -> Result<(Report, Vec<String>)> {
    let mut rows = Vec::with_capacity(ks.len());
    let mut findings = Vec::new();
    let c = seq.profile().gcd();
    for &k in ks {
        let inst = WeighingInstance::new(seq.clone(), k)?;
        let possible = solver::possible_f(&inst);
        let discreet = solver::discreet_f(&inst);
        let predicted_range = frobenius::predicted_range(&inst);
        let predicted_discreet_range = frobenius::predicted_discreet_range(&inst);
        let possible_parts =
            predicted_range.map(|(lo, hi)| ThreeParts::split(&possible, lo, hi, c));
        let discreet_parts =
            predicted_discreet_range.map(|(lo, hi)| ThreeParts::split(&discreet, lo, hi, c));
        if let Some(parts) = &possible_parts {
            if !parts.consistent_with(&possible) {
                findings.push(format!(
                    "{seq} k={k}: possible values break the predicted progression"
                ));
            }
        }
        if let Some(parts) = &discreet_parts {
            if !parts.consistent_with(&discreet) {
                findings.push(format!(
                    "{seq} k={k}: discreet values break the predicted progression"
                ));
            }
        }
        rows.push(ReportRow {
            sequence: seq.to_string(),
            binary: seq.binary().to_string(),
            k,
            possible,
            discreet,
            thresholds: thresholds_of(seq),
            revealing: None,
            ranges: Some(RangeReport {
                predicted_range,
                predicted_discreet_range,
                possible_parts,
                discreet_parts,
            }),
        });
    }
    let meta = Meta {
        p: seq.piles(),
        k: KSpec::Many(ks.to_vec()),
        version: VERSION.to_string(),
    };
    Ok((Report { meta, rows }, findings))
}

fn cmd_ranges(a: &RangesArgs) -> Result<Outcome> {
    let seq: SortingSequence = a.sequence.parse()?;
    let (report, mut findings) = build_ranges(&seq, &a.k)?;
    if a.oracle {
        let limits = OracleLimits {
            max_states: a.max_states,
        };
        for &k in &a.k {
            findings.extend(oracle_diff(&report.rows, seq.piles(), k, limits)?);
        }
    }
    Ok(Outcome::checked(
        report::render_ranges(&report, a.format)?,
        findings,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PileSummary {
    pub p: usize,
    pub sequences: u64,
    pub cells: u64,
    pub oracle_cells: u64,
    pub exceptions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub meta: ExceptionMeta,
    pub summary: Vec<PileSummary>,
    pub exceptions: Vec<ExceptionEntry>,
    /// Exceptions with `k >= p/c`.
    pub counterexamples: Vec<ExceptionEntry>,
    /// Exceptions at or above the proven threshold; must never occur.
    pub threshold_violations: Vec<ExceptionEntry>,
    pub oracle_mismatches: Vec<String>,
    pub all_exceptions_below_p_over_c: bool,
    pub verified: bool,
}

struct SequenceSweep {
    exceptions: Vec<ExceptionRow>,
    cells: u64,
}

/// Solver-side sweep of every sequence and every `k` up to the proven threshold.
fn sweep_sequence(seq: &SortingSequence) -> SequenceSweep {
    let profile = seq.profile();
    let top = profile.range_threshold().max(1) as u64;
    let mut exceptions = Vec::new();
    for k in 1..=top {
        let total = profile.piles() * k;
        let forward = solver::general_totals(&profile, total);
        let backward = solver::general_totals(&profile.reversed(), total);
        let bounded = solver::bounded_totals(&profile, k);
        let values: Vec<u64> = (0..=total)
            .filter(|&f| {
                forward.contains(f) && backward.contains(total - f) && !bounded.contains(f)
            })
            .collect();
        if !values.is_empty() {
            exceptions.push(ExceptionRow {
                piles: seq.piles(),
                k,
                sequence: seq.clone(),
                values,
            });
        }
    }
    SequenceSweep {
        exceptions,
        cells: top,
    }
}

/// Brute-force every `(p, k)` cell within budget and compare the possible sets.
fn oracle_spot_checks(
    p: usize,
    seqs: &[SortingSequence],
    budget: u128,
) -> Result<(u64, Vec<String>)> {
    let top = seqs
        .iter()
        .map(|s| s.profile().range_threshold())
        .max()
        .unwrap_or(0)
        .max(1) as u64;
    let ks: Vec<u64> = (1..=top)
        .filter(|&k| oracle::state_count(p, k) <= budget)
        .collect();
    let results = ks
        .par_iter()
        .map(|&k| {
            let table = OracleTable::build(p, k, OracleLimits { max_states: budget })?;
            let mut diffs = Vec::new();
            for seq in seqs {
                let solver_set = solver::bounded_totals(&seq.profile(), k).to_vec();
                let oracle_set = table.possible_f(seq);
                if solver_set != oracle_set {
                    diffs.push(format!(
                        "{seq} k={k}: solver {solver_set:?} != oracle {oracle_set:?}"
                    ));
                }
            }
            Ok(diffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ks.len() as u64, results.into_iter().flatten().collect()))
}

pub fn verify_conjecture(
    max_p: usize,
    pile_cap: usize,
    oracle_budget: u128,
) -> Result<ConjectureReport> {
    sequence::check_pile_cap(max_p, pile_cap)?;
    let mut summary = Vec::new();
    let mut exceptions = Vec::new();
    let mut counterexamples = Vec::new();
    let mut threshold_violations = Vec::new();
    let mut oracle_mismatches = Vec::new();
    for p in 1..=max_p {
        let seqs: Vec<SortingSequence> = all_sequences(p)?.collect();
        let sweeps: Vec<SequenceSweep> = seqs.par_iter().map(sweep_sequence).collect();
        let (oracle_cells, diffs) = oracle_spot_checks(p, &seqs, oracle_budget)?;
        oracle_mismatches.extend(diffs);
        let mut found = 0;
        let mut cells = 0;
        for (seq, sweep) in seqs.iter().zip(sweeps) {
            let profile = seq.profile();
            let c = profile.gcd();
            cells += sweep.cells;
            for row in sweep.exceptions {
                found += row.values.len() as u64;
                let entry = ExceptionEntry::from(&row);
                if row.k as i64 >= profile.range_threshold() {
                    threshold_violations.push(entry.clone());
                }
                // k >= p/c
                if row.k * c >= profile.piles() {
                    counterexamples.push(entry.clone());
                }
                exceptions.push(entry);
            }
        }
        summary.push(PileSummary {
            p,
            sequences: seqs.len() as u64,
            cells,
            oracle_cells,
            exceptions: found,
        });
    }
    let all_below = counterexamples.is_empty();
    let verified = all_below && threshold_violations.is_empty() && oracle_mismatches.is_empty();
    Ok(ConjectureReport {
        meta: ExceptionMeta {
            max_p,
            version: VERSION.to_string(),
        },
        summary,
        exceptions,
        counterexamples,
        threshold_violations,
        oracle_mismatches,
        all_exceptions_below_p_over_c: all_below,
        verified,
    })
}

fn render_conjecture(r: &ConjectureReport, format: Format) -> Result<String> {
    match format {
        Format::Json => report::render_json(r),
        Format::Csv => {
            let mut out = String::from("p,sequences,cells,oracle_cells,exceptions\n");
            for s in &r.summary {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.p, s.sequences, s.cells, s.oracle_cells, s.exceptions
                ));
            }
            Ok(out)
        }
        Format::Md => {
            let mut out = String::from(
                "| p | sequences | (sequence, k) cells | oracle-checked k | exceptional f |\n",
            );
            out.push_str("|---|---|---|---|---|\n");
            for s in &r.summary {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    s.p, s.sequences, s.cells, s.oracle_cells, s.exceptions
                ));
            }
            out.push('\n');
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            out.push_str(&format!(
                "exception rows: {}; all with k < p/c: {}\n",
                r.exceptions.len(),
                yes_no(r.all_exceptions_below_p_over_c)
            ));
            for c in &r.counterexamples {
                out.push_str(&format!(
                    "counterexample: p={} k={} {} f={:?}\n",
                    c.p, c.k, c.sequence, c.values
                ));
            }
            for c in &r.threshold_violations {
                out.push_str(&format!(
                    "threshold violated: p={} k={} {} f={:?}\n",
                    c.p, c.k, c.sequence, c.values
                ));
            }
            out.push_str(if r.verified {
                "verified\n"
            } else {
                "NOT verified\n"
            });
            Ok(out)
        }
    }
}

fn cmd_verify_conjecture(a: &ConjectureArgs) -> Result<Outcome> {
    let report = verify_conjecture(a.max_p, a.pile_cap, a.oracle_budget)?;
    let mut diagnostics = report.oracle_mismatches.clone();
    if !report.verified {
        diagnostics.push(format!(
            "{} counterexamples, {} threshold violations",
            report.counterexamples.len(),
            report.threshold_violations.len()
        ));
    }
    Ok(Outcome::checked(
        render_conjecture(&report, a.format)?,
        diagnostics,
    ))
}

pub fn parse_coefficients(text: &str) -> Result<CoefficientSet> {
    let inner = text
        .trim()
        .trim_start_matches(['{', '(', '['])
        .trim_end_matches(['}', ')', ']']);
    let coeffs = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|e| Error::Parse {
                input: text.to_string(),
                reason: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CoefficientSet::new(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusReport {
    pub coeffs: Vec<u64>,
    pub minimal_generators: Vec<u64>,
    pub g: i64,
    pub schur: i64,
    pub erdos_graham: Option<i64>,
    pub selmer: i64,
}

fn cmd_frobenius(a: &FrobeniusArgs) -> Result<Outcome> {
    let set = parse_coefficients(&a.coeffs)?;
    let b = set.bounds()?;
    let r = FrobeniusReport {
        coeffs: set.coeffs().to_vec(),
        minimal_generators: set.minimal_generators(),
        g: b.g,
        schur: b.schur,
        erdos_graham: b.erdos_graham,
        selmer: b.selmer,
    };
    let eg = r.erdos_graham.map_or(String::new(), |v| v.to_string());
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let out = match a.format {
        Format::Json => report::render_json(&r)?,
        Format::Csv => format!(
            "coeffs,minimal_generators,g,schur,erdos_graham,selmer\n\"{}\",\"{}\",{},{},{},{}\n",
            list(&r.coeffs),
            list(&r.minimal_generators),
            r.g,
            r.schur,
            eg,
            r.selmer
        ),
        Format::Md => format!(
            "coefficients: {}\nminimal generators: {}\nfrobenius number: {}\nschur bound: {}\nerdos-graham bound: {}\nselmer bound: {}\n",
            list(&r.coeffs),
            list(&r.minimal_generators),
            r.g,
            r.schur,
            if eg.is_empty() { "-".to_string() } else { eg.clone() },
            r.selmer
        ),
    };
    Ok(Outcome::checked(out, Vec::new()))
}

fn cmd_revealing(a: &RevealingArgs) -> Result<Outcome> {
    let seq: SortingSequence = a.sequence.parse()?;
    let inst = WeighingInstance::new(seq.clone(), a.k)?;
    let x = revealing::revealing_factor(&inst, a.f)?;
    let entry = RevealingEntry::new(a.f, &x);
    let out = match a.format {
        Format::Json => report::render_json(&serde_json::json!({
            "sequence": seq.to_string(),
            "k": a.k,
            "revealing": entry,
        }))?,
        Format::Csv => format!(
            "sequence,k,f,old,new,ratio,approx\n\"{}\",{},{},{},{},{},{}\n",
            seq, a.k, a.f, entry.old, entry.new, entry.ratio, entry.approx
        ),
        Format::Md => format!(
            "sequence: {seq}\nk: {}\nf: {}\nold possibilities: {}\nnew possibilities: {}\nrevealing factor: {} (~ {})\n",
            a.k, a.f, entry.old, entry.new, entry.ratio, entry.approx
        ),
    };
    Ok(Outcome::checked(out, Vec::new()))
}
