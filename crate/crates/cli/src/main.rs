use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mba_core::bench::{
    format_dataset, generate_corpus, load_dataset, run_benchmark, summary_table, write_report, BenchConfig,
    ReportFormat, Verified,
};
use mba_core::egraph::EGraph;
use mba_core::expr::{ast_size, parse, preprocess, render, resugar, Expr, Width};
use mba_core::rewrite::{default_ruleset, saturate, Group, RuleSet, SaturationLimits};
use mba_core::semantics::{verify, EquivStatus, VerifyPolicy};
use mba_core::simplify::{simplify, SimplifyConfig};
use serde_json::json;

/// Simplify Mixed Boolean-Arithmetic expressions by equality saturation.
///
/// Exit status: 0 on success, 1 on parse, usage or I/O errors, 2 when a
/// result fails verification.
#[derive(Parser)]
#[command(name = "mba", version)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Bit width of all arithmetic (1 to 64)
    #[arg(long, global = true, default_value_t = 64)]
    width: u32,
    /// Maximum saturation iterations
    #[arg(long, global = true, default_value_t = 30)]
    iters: usize,
    /// Stop saturating once the e-graph holds more e-nodes than this
    #[arg(long, global = true, default_value_t = 50_000)]
    nodes: usize,
    /// Saturation time budget per expression
    #[arg(long, global = true, default_value_t = 5_000)]
    timeout_ms: u64,
    /// Comma-separated rule groups to enable: structural, arithid, boolid,
    /// mbabridge, constfold [default: all]
    #[arg(long, global = true, value_delimiter = ',')]
    groups: Vec<Group>,
    /// Disable the constant folding rules
    #[arg(long, global = true)]
    no_const_fold: bool,
    /// Seed for random verification and corpus generation (decimal or 0x hex)
    #[arg(long, global = true, default_value = "0", value_parser = parse_u64)]
    seed: u64,
    /// Random samples drawn when exhaustive checking cannot cover the width
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Skip verifying results
    #[arg(long, global = true)]
    no_verify: bool,
    /// Report all timings as zero
    #[arg(long, global = true)]
    no_timing: bool,
    /// Batch worker threads [default: number of processors]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Count results that are no larger than the input as successes
    #[arg(long, global = true)]
    allow_equal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Before,
    After,
}

#[derive(Subcommand)]
enum Command {
    /// Simplify one expression
    Simplify { expr: String },
    /// Simplify every entry of a dataset file and report the results
    Batch {
        dataset: PathBuf,
        /// Write the report here instead of standard output
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check two expressions for equivalence
    Verify { a: String, b: String },
    /// Print the e-graph of an expression as Graphviz DOT
    Dump {
        expr: String,
        #[arg(long, value_enum, default_value_t = Stage::After)]
        stage: Stage,
    },
    /// Generate an obfuscated dataset from a file of seed expressions
    Gen {
        seeds: PathBuf,
        #[arg(long, default_value_t = 60)]
        count: usize,
        /// Fewest expansion rewrites per entry
        #[arg(long, default_value_t = 2)]
        min_rewrites: usize,
        /// Most expansion rewrites per entry
        #[arg(long, default_value_t = 5)]
        max_rewrites: usize,
        /// Write the dataset here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid number `{s}`: {e}"))
}

/// A failure reported on standard error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl Options {
    fn width(&self) -> Result<Width, Failure> {
        Width::new(self.width).map_err(|e| usage(e.to_string()))
    }

    fn rules(&self, width: Width) -> RuleSet {
        let mut rules = default_ruleset(width);
        if !self.groups.is_empty() {
            rules = rules.with_groups(&self.groups);
        }
        if self.no_const_fold {
            rules = rules.without_group(Group::ConstFold);
        }
        rules
    }

    fn limits(&self) -> SaturationLimits {
        SaturationLimits {
            max_iterations: self.iters,
            max_nodes: self.nodes,
            max_millis: self.timeout_ms,
        }
    }

    fn policy(&self) -> VerifyPolicy {
        VerifyPolicy {
            samples: self.samples,
            seed: self.seed,
            ..VerifyPolicy::default()
        }
    }
}

fn parse_expr(text: &str, width: Width) -> Result<Expr, Failure> {
    parse(text, width).map_err(|e| usage(format!("`{text}`: {e}")))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| usage(format!("standard output: {e}"))),
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn cmd_simplify(opts: &Options, text: &str) -> Result<(), Failure> {
    let width = opts.width()?;
    let input = parse_expr(text, width)?;
    let config = SimplifyConfig {
        limits: opts.limits(),
        rules: opts.rules(width),
        ..SimplifyConfig::new(width)
    };
    let result = simplify(&input, &config);
    let verification = (!opts.no_verify).then(|| verify(&result.input, &result.output, width, opts.policy()));
    let verified = verification.as_ref().map_or(Verified::Skipped, |v| v.status.into());
    let output = render(&resugar(&result.output, width));
    let millis = if opts.no_timing { 0 } else { result.millis };
    let stdout = match opts.output {
        Format::Text => format!("{output}\n"),
        Format::Json => {
            let value = json!({
                "input": text,
                "output": output,
                "input_size": result.input_size,
                "output_size": result.output_size,
                "stop_reason": result.report.stop_reason,
                "millis": millis,
                "verified": verified,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
        Format::Csv => {
            csv_line(
                &[
                    "input",
                    "output",
                    "input_size",
                    "output_size",
                    "stop_reason",
                    "millis",
                    "verified",
                ]
                .map(String::from),
            ) + &csv_line(&[
                text.to_string(),
                output,
                result.input_size.to_string(),
                result.output_size.to_string(),
                result.report.stop_reason.to_string(),
                millis.to_string(),
                verified.to_string(),
            ])
        }
    };
    write_out(None, stdout.as_bytes())?;
    match verification {
        Some(v) if v.status == EquivStatus::NotEquivalent => Err(Failure {
            code: 2,
            message: format!("simplification is unsound: {v}"),
        }),
        _ => Ok(()),
    }
}

fn cmd_batch(opts: &Options, dataset: &Path, report_path: Option<&Path>) -> Result<(), Failure> {
    let width = opts.width()?;
    let entries = load_dataset(dataset, width).map_err(|e| usage(e.to_string()))?;
    let config = BenchConfig {
        width,
        limits: opts.limits(),
        rules: opts.rules(width),
        verify: (!opts.no_verify).then(|| opts.policy()),
        allow_equal: opts.allow_equal,
        jobs: opts.jobs.unwrap_or(0),
        record_timing: !opts.no_timing,
    };
    let name = dataset
        .file_stem()
        .map_or_else(|| dataset.display().to_string(), |s| s.to_string_lossy().into_owned());
    let report = run_benchmark(&name, &entries, &config);
    let format = match opts.output {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
    };
    let bytes = write_report(&report, format);
    let summary = summary_table(&report);
    match report_path {
        Some(p) => {
            write_out(Some(p), &bytes)?;
            write_out(None, summary.as_bytes())
        }
        None => {
            write_out(None, &bytes)?;
            if format != ReportFormat::Text {
                eprint!("{summary}");
            }
            Ok(())
        }
    }
}

fn cmd_verify(opts: &Options, a: &str, b: &str) -> Result<(), Failure> {
    let width = opts.width()?;
    let ea = parse_expr(a, width)?;
    let eb = parse_expr(b, width)?;
    let v = verify(&ea, &eb, width, opts.policy());
    let stdout = match opts.output {
        Format::Json => {
            let value = json!({
                "status": v.status,
                "width": width.bits(),
                "exhaustive_width": v.exhaustive_width.map(Width::bits),
                "exhaustive_assignments": v.exhaustive_assignments,
                "random_samples": v.random_samples,
                "counterexample": v.counterexample.as_ref().map(|(w, env)| json!({
                    "width": w.bits(),
                    "assignment": env.iter().map(|(k, x)| (k.to_string(), json!(x))).collect::<serde_json::Map<_, _>>(),
                })),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
        _ => format!("{v}\n"),
    };
    write_out(None, stdout.as_bytes())?;
    if v.status == EquivStatus::NotEquivalent {
        return Err(Failure {
            code: 2,
            message: String::new(),
        });
    }
    Ok(())
}

fn cmd_dump(opts: &Options, text: &str, stage: Stage) -> Result<(), Failure> {
    let width = opts.width()?;
    let input = preprocess(&parse_expr(text, width)?, width);
    let mut g = EGraph::new(width);
    g.add_expr(&input);
    g.rebuild();
    if stage == Stage::After {
        saturate(&mut g, &opts.rules(width), &opts.limits());
    }
    write_out(None, g.dump_dot().as_bytes())
}

fn cmd_gen(
    opts: &Options,
    seeds: &Path,
    count: usize,
    rewrites: (usize, usize),
    out: Option<&Path>,
) -> Result<(), Failure> {
    let width = opts.width()?;
    let seed_exprs = load_dataset(seeds, width)
        .map_err(|e| usage(e.to_string()))?
        .iter()
        .map(|e| parse_expr(&e.obfuscated, width))
        .collect::<Result<Vec<_>, _>>()?;
    let corpus = generate_corpus(&seed_exprs, rewrites.0..=rewrites.1, count, opts.seed, width)
        .map_err(|e| usage(e.to_string()))?;
    log::info!(
        "generated {} entries, mean size {:.1}",
        corpus.len(),
        corpus
            .iter()
            .map(|e| parse(&e.obfuscated, width).map_or(0, |x| ast_size(&x)))
            .sum::<usize>() as f64
            / corpus.len().max(1) as f64
    );
    write_out(out, format_dataset(&corpus).as_bytes())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Simplify { expr } => cmd_simplify(opts, expr),
        Command::Batch { dataset, report } => cmd_batch(opts, dataset, report.as_deref()),
        Command::Verify { a, b } => cmd_verify(opts, a, b),
        Command::Dump { expr, stage } => cmd_dump(opts, expr, *stage),
        Command::Gen {
            seeds,
            count,
            min_rewrites,
            max_rewrites,
            out,
        } => cmd_gen(opts, seeds, *count, (*min_rewrites, *max_rewrites), out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::new().filter_level(log::LevelFilter::Warn).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
