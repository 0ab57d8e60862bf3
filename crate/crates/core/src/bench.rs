//! Dataset loading, the batch simplification harness and its reports, and
//! a generator for synthetic obfuscated corpora.
//!
//! Dataset files hold one entry per line, either `obfuscated` or
//! `obfuscated,ground_truth`. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{ast_size, parse, preprocess, render, resugar, Expr, ParseError, Width};
use crate::extract::CostModel;
use crate::rewrite::{default_ruleset, Group, PatNode, Rhs, RuleSet, SaturationLimits, StopReason};
use crate::rng::XorShift64Star;
use crate::semantics::{verify, EquivStatus, VerifyPolicy};
use crate::simplify::{simplify, SimplifyConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub index: usize,
    pub obfuscated: String,
    pub ground_truth: Option<String>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("corpus generation failed: {0}")]
    GenerationFailed(String),
}

/// Cheaper policy for checks that only guard against malformed input.
const SANITY_CHECK: VerifyPolicy = VerifyPolicy {
    samples: 1_000,
    seed: 0,
    exhaustive_bits: 12,
};

/// Parses dataset text. Ground truths that are not equivalent to their
/// entry are logged, not rejected.
pub fn parse_dataset(text: &str, width: Width) -> Result<Vec<DatasetEntry>, BenchError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (obf, gt) = match line.split_once(',') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (line, None),
        };
        let lineno = n + 1;
        let parsed = parse(obf, width).map_err(|source| BenchError::Parse { line: lineno, source })?;
        if let Some(gt) = gt {
            let truth = parse(gt, width).map_err(|source| BenchError::Parse { line: lineno, source })?;
            let check = verify(&parsed, &truth, width, SANITY_CHECK);
            if check.status == EquivStatus::NotEquivalent {
                warn!("line {lineno}: ground truth is not equivalent ({check})");
            }
        }
        entries.push(DatasetEntry {
            index: entries.len(),
            obfuscated: obf.to_string(),
            ground_truth: gt.map(str::to_string),
        });
    }
    Ok(entries)
}

pub fn load_dataset(path: impl AsRef<Path>, width: Width) -> Result<Vec<DatasetEntry>, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dataset(&text, width)
}

/// Renders entries in the dataset file format.
pub fn format_dataset(entries: &[DatasetEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&e.obfuscated);
        if let Some(gt) = &e.ground_truth {
            out.push(',');
            out.push_str(gt);
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verified {
    Equivalent,
    ProbablyEquivalent,
    NotEquivalent,
    Skipped,
}

impl Verified {
    pub fn holds(self) -> bool {
        matches!(self, Verified::Equivalent | Verified::ProbablyEquivalent)
    }
}

impl std::fmt::Display for Verified {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

impl From<EquivStatus> for Verified {
    fn from(s: EquivStatus) -> Self {
        match s {
            EquivStatus::Equivalent => Verified::Equivalent,
            EquivStatus::ProbablyEquivalent => Verified::ProbablyEquivalent,
            EquivStatus::NotEquivalent => Verified::NotEquivalent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryResult {
    pub index: usize,
    /// Tree size after unary elimination.
    pub input_size: usize,
    pub output_size: usize,
    pub output: String,
    pub verified: Verified,
    pub success: bool,
    pub millis: u64,
    pub stop_reason: StopReason,
    /// Whether the output is no larger than the ground truth, if one exists.
    pub matched_gt: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub dataset: String,
    pub total: usize,
    pub successes: usize,
    pub failures: usize,
    /// Percentage, rounded to two decimals.
    pub success_rate: f64,
    /// Mean of `1 - output_size / input_size` over successes, as a
    /// percentage rounded to two decimals.
    pub simplification_ratio: f64,
    /// Simplification time only; verification is excluded.
    pub total_seconds: f64,
    pub per_entry: Vec<EntryResult>,
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

impl BenchReport {
    /// Aggregates per-entry rows. Rows are reordered by index.
    pub fn from_entries(dataset: impl Into<String>, mut per_entry: Vec<EntryResult>) -> Self {
        per_entry.sort_by_key(|e| e.index);
        let total = per_entry.len();
        let successes = per_entry.iter().filter(|e| e.success).count();
        let success_rate = if total == 0 {
            0.0
        } else {
            round2(successes as f64 * 100.0 / total as f64)
        };
        let ratio_sum: f64 = per_entry
            .iter()
            .filter(|e| e.success)
            .map(|e| 1.0 - e.output_size as f64 / e.input_size as f64)
            .sum();
        let simplification_ratio = if successes == 0 {
            0.0
        } else {
            round2(ratio_sum * 100.0 / successes as f64)
        };
        let millis: u64 = per_entry.iter().map(|e| e.millis).sum();
        BenchReport {
            dataset: dataset.into(),
            total,
            successes,
            failures: total - successes,
            success_rate,
            simplification_ratio,
            total_seconds: millis as f64 / 1000.0,
            per_entry,
        }
    }

    pub fn mean_seconds(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.total_seconds / self.total as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub width: Width,
    pub limits: SaturationLimits,
    pub rules: RuleSet,
    /// `None` skips verification; every entry then counts as a failure.
    pub verify: Option<VerifyPolicy>,
    /// Count equal-size outputs as successes.
    pub allow_equal: bool,
    /// Worker threads, at most one per processor; 0 means one per processor.
    pub jobs: usize,
    /// When false, all timing fields are zeroed.
    pub record_timing: bool,
}

impl BenchConfig {
    pub fn new(width: Width) -> Self {
        BenchConfig {
            width,
            limits: SaturationLimits::default(),
            rules: default_ruleset(width),
            verify: Some(VerifyPolicy::default()),
            allow_equal: false,
            jobs: 0,
            record_timing: true,
        }
    }
}

fn run_entry(entry: &DatasetEntry, simp: &SimplifyConfig, config: &BenchConfig) -> EntryResult {
    let width = config.width;
    let Ok(input) = parse(&entry.obfuscated, width) else {
        return EntryResult {
            index: entry.index,
            input_size: 0,
            output_size: 0,
            output: String::new(),
            verified: Verified::Skipped,
            success: false,
            millis: 0,
            stop_reason: StopReason::Saturated,
            matched_gt: None,
        };
    };
    let result = simplify(&input, simp);
    let verified = match config.verify {
        Some(policy) => verify(&result.input, &result.output, width, policy).status.into(),
        None => Verified::Skipped,
    };
    let smaller = if config.allow_equal {
        result.output_size <= result.input_size
    } else {
        result.output_size < result.input_size
    };
    let matched_gt = entry
        .ground_truth
        .as_deref()
        .and_then(|gt| parse(gt, width).ok())
        .map(|gt| result.output_size <= ast_size(&preprocess(&gt, width)));
    EntryResult {
        index: entry.index,
        input_size: result.input_size,
        output_size: result.output_size,
        output: render(&resugar(&result.output, width)),
        verified,
        success: verified.holds() && smaller,
        millis: if config.record_timing { result.millis } else { 0 },
        stop_reason: result.report.stop_reason,
        matched_gt,
    }
}

/// Simplifies and verifies every entry, each in a private e-graph.
pub fn run_benchmark(dataset: &str, entries: &[DatasetEntry], config: &BenchConfig) -> BenchReport {
    let simp = SimplifyConfig {
        width: config.width,
        limits: config.limits,
        rules: config.rules.clone(),
        cost: CostModel::ast_size(),
    };
    // more workers than processors would only stretch each entry's wall
    // clock toward the time limit
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let threads = if config.jobs == 0 {
        cores
    } else {
        config.jobs.min(cores)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let rows: Vec<EntryResult> = pool.install(|| entries.par_iter().map(|e| run_entry(e, &simp, config)).collect());
    BenchReport::from_entries(dataset, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

pub const CSV_HEADER: &str = "index,input_size,output_size,verified,success,millis,stop_reason,output";

/// One-row summary in the layout of the usual results table.
pub fn summary_table(r: &BenchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>7} {:>8} {:>8} {:>13} {:>21} {:>9}",
        "Dataset", "Total", "Success", "Failure", "Success Rate", "Simplification Ratio", "Time (s)"
    );
    let _ = writeln!(
        out,
        "{:<20} {:>7} {:>8} {:>8} {:>12.2}% {:>20.2}% {:>9.2}",
        r.dataset, r.total, r.successes, r.failures, r.success_rate, r.simplification_ratio, r.total_seconds
    );
    out
}

pub fn write_report(r: &BenchReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for e in &r.per_entry {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    e.index, e.input_size, e.output_size, e.verified, e.success, e.millis, e.stop_reason, e.output
                );
            }
            s.into_bytes()
        }
        ReportFormat::Text => summary_table(r).into_bytes(),
    }
}

/// A size-increasing rewrite used to obfuscate seeds.
#[derive(Debug, Clone)]
struct Expansion {
    from: PatNode,
    to: PatNode,
    vars: usize,
}

fn pat_vars(p: &PatNode, out: &mut Vec<usize>) {
    match p {
        PatNode::Var(i) if !out.contains(i) => out.push(*i),
        PatNode::Bin(_, l, r) => {
            pat_vars(l, out);
            pat_vars(r, out);
        }
        _ => {}
    }
}

/// Growing directions of the arithmetic-identity and MBA rules: each
/// equation read toward its larger side, including the reverse of
/// shrinking identities such as `x+0 -> x`.
fn expansions(width: Width) -> Vec<Expansion> {
    let rules = default_ruleset(width).with_groups(&[Group::ArithId, Group::MbaBridge]);
    let mut out = Vec::new();
    for rule in rules.iter() {
        let Rhs::Pattern(rhs) = &rule.rhs else { continue };
        let lhs = &rule.lhs.root;
        let vars = rule.lhs.vars.len();
        if rhs.size() > lhs.size() {
            out.push(Expansion {
                from: lhs.clone(),
                to: rhs.clone(),
                vars,
            });
        } else if rhs.size() < lhs.size() && !rule.bidirectional {
            let mut used = Vec::new();
            pat_vars(rhs, &mut used);
            if used.len() == vars {
                out.push(Expansion {
                    from: rhs.clone(),
                    to: lhs.clone(),
                    vars,
                });
            }
        }
    }
    out
}

fn match_expr<'a>(p: &PatNode, e: &'a Expr, binds: &mut [Option<&'a Expr>]) -> bool {
    match (p, e) {
        (PatNode::Var(i), _) => match binds[*i] {
            Some(b) => b == e,
            None => {
                binds[*i] = Some(e);
                true
            }
        },
        (PatNode::Const(c), Expr::Const(v)) => c == v,
        (PatNode::Bin(op, pl, pr), Expr::Binary(eop, el, er)) => {
            op == eop && match_expr(pl, el, binds) && match_expr(pr, er, binds)
        }
        _ => false,
    }
}

fn build(p: &PatNode, binds: &[Option<&Expr>]) -> Expr {
    match p {
        PatNode::Var(i) => binds[*i].expect("bound").clone(),
        PatNode::Const(c) => Expr::Const(*c),
        PatNode::Bin(op, l, r) => Expr::binary(*op, build(l, binds), build(r, binds)),
    }
}

/// Paths (child indices from the root) of every subterm.
fn positions(e: &Expr, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    out.push(path.clone());
    match e {
        Expr::Unary(_, c) => {
            path.push(0);
            positions(c, path, out);
            path.pop();
        }
        Expr::Binary(_, l, r) => {
            path.push(0);
            positions(l, path, out);
            path.pop();
            path.push(1);
            positions(r, path, out);
            path.pop();
        }
        _ => {}
    }
}

fn subterm<'a>(e: &'a Expr, path: &[u8]) -> &'a Expr {
    match (path.split_first(), e) {
        (None, _) => e,
        (Some((0, rest)), Expr::Unary(_, c)) => subterm(c, rest),
        (Some((0, rest)), Expr::Binary(_, l, _)) => subterm(l, rest),
        (Some((1, rest)), Expr::Binary(_, _, r)) => subterm(r, rest),
        _ => unreachable!("valid path"),
    }
}

fn replace_at(e: &Expr, path: &[u8], with: Expr) -> Expr {
    match (path.split_first(), e) {
        (None, _) => with,
        (Some((0, rest)), Expr::Unary(op, c)) => Expr::unary(*op, replace_at(c, rest, with)),
        (Some((0, rest)), Expr::Binary(op, l, r)) => Expr::binary(*op, replace_at(l, rest, with), (**r).clone()),
        (Some((1, rest)), Expr::Binary(op, l, r)) => Expr::binary(*op, (**l).clone(), replace_at(r, rest, with)),
        _ => unreachable!("valid path"),
    }
}

/// Applies one random expansion at a random matching position, if any
/// expansion matches anywhere.
fn expand_once(e: &Expr, rules: &[Expansion], rng: &mut XorShift64Star) -> Option<Expr> {
    let mut paths = Vec::new();
    positions(e, &mut Vec::new(), &mut paths);
    let mut candidates: Vec<(usize, &Vec<u8>)> = Vec::new();
    for (ri, rule) in rules.iter().enumerate() {
        for path in &paths {
            let mut binds = vec![None; rule.vars];
            if match_expr(&rule.from, subterm(e, path), &mut binds) {
                candidates.push((ri, path));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    // choose the rule first so that identity-introducing rules, which
    // match everywhere, do not dominate
    let mut applicable: Vec<usize> = candidates.iter().map(|(r, _)| *r).collect();
    applicable.dedup();
    let rule_idx = applicable[rng.below(applicable.len() as u64) as usize];
    let spots: Vec<&Vec<u8>> = candidates
        .iter()
        .filter(|(r, _)| *r == rule_idx)
        .map(|(_, p)| *p)
        .collect();
    let path = spots[rng.below(spots.len() as u64) as usize];
    let rule = &rules[rule_idx];
    let target = subterm(e, path);
    let mut binds = vec![None; rule.vars];
    match_expr(&rule.from, target, &mut binds);
    let replacement = build(&rule.to, &binds);
    Some(replace_at(e, path, replacement))
}

const GENERATION_ATTEMPTS: usize = 100;

/// Obfuscates randomly chosen seeds with a random number (within
/// `rewrites`) of size-increasing identity rewrites. Every entry keeps its
/// seed as ground truth and is checked equivalent to it before emission.
pub fn generate_corpus(
    seeds: &[Expr],
    rewrites: RangeInclusive<usize>,
    count: usize,
    rng_seed: u64,
    width: Width,
) -> Result<Vec<DatasetEntry>, BenchError> {
    if seeds.is_empty() || count == 0 || rewrites.is_empty() {
        return Err(BenchError::GenerationFailed(
            "need at least one seed, a positive count and a nonempty rewrite range".into(),
        ));
    }
    let rules = expansions(width);
    let mut rng = XorShift64Star::new(rng_seed);
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let mut produced = None;
        for _ in 0..GENERATION_ATTEMPTS {
            let seed = preprocess(&seeds[rng.below(seeds.len() as u64) as usize], width);
            let steps = rng.in_range(*rewrites.start() as u64, *rewrites.end() as u64);
            let mut e = seed.clone();
            for _ in 0..steps {
                match expand_once(&e, &rules, &mut rng) {
                    Some(next) => e = next,
                    None => break,
                }
            }
            if ast_size(&e) > ast_size(&seed) {
                produced = Some((seed, e));
                break;
            }
        }
        let Some((seed, obfuscated)) = produced else {
            return Err(BenchError::GenerationFailed(format!(
                "entry {index}: no growing rewrite sequence in {GENERATION_ATTEMPTS} attempts"
            )));
        };
        let check = verify(
            &seed,
            &obfuscated,
            width,
            VerifyPolicy {
                seed: rng_seed,
                ..SANITY_CHECK
            },
        );
        if check.status == EquivStatus::NotEquivalent {
            return Err(BenchError::GenerationFailed(format!(
                "entry {index}: `{}` is not equivalent to `{}` ({check})",
                render(&obfuscated),
                render(&seed)
            )));
        }
        out.push(DatasetEntry {
            index,
            obfuscated: render(&resugar(&obfuscated, width)),
            ground_truth: Some(render(&seed)),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(bits: u32) -> Width {
        Width::new(bits).unwrap()
    }

    fn row(index: usize, input: usize, output: usize, success: bool) -> EntryResult {
        EntryResult {
            index,
            input_size: input,
            output_size: output,
            output: "x".into(),
            verified: if success {
                Verified::Equivalent
            } else {
                Verified::NotEquivalent
            },
            success,
            millis: 10,
            stop_reason: StopReason::Saturated,
            matched_gt: None,
        }
    }

    #[test]
    fn dataset_lines() {
        let e = parse_dataset("x+y\n", w(8)).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].ground_truth, None);

        let e = parse_dataset("(x|y)+y-(~x&y),x+y\n", w(8)).unwrap();
        assert_eq!(e[0].obfuscated, "(x|y)+y-(~x&y)");
        assert_eq!(e[0].ground_truth.as_deref(), Some("x+y"));

        let e = parse_dataset("# comment\n\nx^x,0\n", w(8)).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].index, 0);
    }

    #[test]
    fn dataset_errors_name_the_line() {
        let err = parse_dataset("x\n\nx+\n", w(8)).unwrap_err();
        assert!(matches!(err, BenchError::Parse { line: 3, .. }));
        assert!(err.to_string().starts_with("line 3:"));
        let err = load_dataset("/definitely/not/here.txt", w(8)).unwrap_err();
        assert!(matches!(err, BenchError::Io { .. }));
    }

    #[test]
    fn table_arithmetic() {
        let mut rows: Vec<EntryResult> = (0..267).map(|i| row(i, 10, 3, true)).collect();
        rows.extend((267..323).map(|i| row(i, 10, 10, false)));
        let r = BenchReport::from_entries("synthetic", rows);
        assert_eq!((r.total, r.successes, r.failures), (323, 267, 56));
        assert_eq!(r.success_rate, 82.66);
        assert_eq!(r.simplification_ratio, 70.0);
        let text = String::from_utf8(write_report(&r, ReportFormat::Text)).unwrap();
        assert!(text.contains("82.66"));
    }

    #[test]
    fn reports_are_ordered_by_index() {
        let r = BenchReport::from_entries("d", vec![row(2, 5, 3, true), row(0, 5, 3, true), row(1, 5, 5, false)]);
        let idx: Vec<usize> = r.per_entry.iter().map(|e| e.index).collect();
        assert_eq!(idx, vec![0, 1, 2]);
    }

    #[test]
    fn csv_and_json() {
        let empty = BenchReport::from_entries("d", vec![]);
        assert_eq!(
            write_report(&empty, ReportFormat::Csv),
            format!("{CSV_HEADER}\n").into_bytes()
        );

        let one = BenchReport::from_entries("d", vec![row(0, 11, 3, true)]);
        let json = write_report(&one, ReportFormat::Json);
        let back: BenchReport = serde_json::from_slice(&json).unwrap();
        assert_eq!(back, one);
        let csv = String::from_utf8(write_report(&one, ReportFormat::Csv)).unwrap();
        assert_eq!(csv.lines().nth(1), Some("0,11,3,Equivalent,true,10,saturated,x"));
    }

    #[test]
    fn benchmark_rows() {
        let entries = parse_dataset("(x|y)+y-(~x&y),x+y\nx\n", w(8)).unwrap();
        let mut config = BenchConfig::new(w(8));
        config.record_timing = false;
        let r = run_benchmark("t", &entries, &config);
        let first = &r.per_entry[0];
        assert!(first.success);
        assert_eq!((first.input_size, first.output_size), (11, 3));
        assert_eq!(first.verified, Verified::Equivalent);
        assert_eq!(first.matched_gt, Some(true));
        let ratio = 1.0 - 3.0 / 11.0;
        assert_eq!(r.simplification_ratio, round2(ratio * 100.0));

        let second = &r.per_entry[1];
        assert_eq!((second.input_size, second.output_size), (1, 1));
        assert!(!second.success);
        assert_eq!(r.success_rate, 50.0);

        config.allow_equal = true;
        let r = run_benchmark("t", &entries, &config);
        assert!(r.per_entry[1].success);
    }

    #[test]
    fn generator_expands_seed() {
        let seeds = vec![parse("x+y", w(64)).unwrap()];
        let corpus = generate_corpus(&seeds, 1..=1, 20, 3, w(64)).unwrap();
        assert!(corpus.iter().any(|e| e.obfuscated == "(x^y)+2*(x&y)"));
        for e in &corpus {
            assert_eq!(e.ground_truth.as_deref(), Some("x+y"));
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let seeds: Vec<Expr> = ["x+y", "x^y", "x&y"].iter().map(|s| parse(s, w(64)).unwrap()).collect();
        let a = generate_corpus(&seeds, 2..=5, 60, 0xC0FFEE, w(64)).unwrap();
        let b = generate_corpus(&seeds, 2..=5, 60, 0xC0FFEE, w(64)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 60);
        let reloaded = parse_dataset(&format_dataset(&a), w(64)).unwrap();
        assert_eq!(reloaded, a);
    }

    #[test]
    fn generator_grows_a_bare_variable() {
        let seeds = vec![parse("x", w(8)).unwrap()];
        let corpus = generate_corpus(&seeds, 2..=3, 10, 11, w(8)).unwrap();
        for e in &corpus {
            assert_eq!(e.ground_truth.as_deref(), Some("x"));
            assert!(ast_size(&parse(&e.obfuscated, w(8)).unwrap()) > 1);
        }
    }

    #[test]
    fn generator_rejects_empty_input() {
        assert!(generate_corpus(&[], 2..=5, 3, 0, w(8)).is_err());
    }
}
