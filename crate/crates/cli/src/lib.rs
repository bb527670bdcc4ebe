//! Command-line front-end for `matinv`.
//!
//! Every command reads JSON files and prints a text or JSON report. Exit
//! codes: 0 yes, 1 no, 2 input error, 3 the two conjugacy algorithms
//! disagree, 4 inconclusive. [`run`] is the whole program minus the process
//! boundary, so it can be driven from tests.

pub mod io;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use matinv::{
    conjugacy_linear, conjugacy_reconstruct, fingerprint_with, ideal_kernel_basis, in_u, morphism_check, separate,
    FingerprintOptions, ReconstructOptions, Separation, SplitBudget, Verdict, Witness,
};
use serde_json::{json, Value};

pub use io::{MapFile, TupleFile, VarietyFile};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] matinv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Linear,
    Reconstruct,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "matinv", version, about = "Invariants and simultaneous conjugacy of matrix tuples")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for per-point and per-word parallel work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for every randomized step; echoed in the output.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does the tuple generate the full matrix algebra?
    InU { tuple: PathBuf },
    /// Are two tuples simultaneously conjugate?
    Conjugate {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Linear)]
        algo: Algo,
        #[arg(long, default_value_t = 3)]
        budget_words: usize,
        #[arg(long, default_value_t = 64)]
        budget_tries: usize,
        /// Word length for the invariant pre-check (default n^2).
        #[arg(long = "L")]
        len: Option<usize>,
    },
    /// Table of the invariants c_s(w) for words of length at most L.
    Fingerprint {
        tuple: PathBuf,
        #[arg(long = "L")]
        len: Option<usize>,
        /// Keep one word per cyclic rotation class.
        #[arg(long)]
        cyclic: bool,
    },
    /// First invariant telling two tuples apart, if any.
    Separate {
        x: PathBuf,
        y: PathBuf,
        #[arg(long = "L")]
        len: Option<usize>,
    },
    /// Pointwise check that a map sends one sample into another.
    Morphism {
        map: PathBuf,
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Polynomials of degree at most d vanishing on a sample.
    Kernel {
        variety: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            return Outcome { code, stdout: e.to_string() };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let job = || execute(cli);
    let result = match cli.jobs {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(job),
            Err(e) => Err(CliError::Input(format!("cannot start {threads} workers: {e}"))),
        },
        None => job(),
    };
    match result {
        Ok((code, report)) => Outcome { code, stdout: render(cli, report) },
        Err(e) => {
            let report = Report::new("error").text(format!("error: {e}")).json("error", json!(e.to_string()));
            Outcome { code: EXIT_INPUT, stdout: render(cli, report) }
        }
    }
}

/// A report with parallel text and JSON forms.
struct Report {
    command: &'static str,
    lines: Vec<String>,
    fields: serde_json::Map<String, Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, lines: Vec::new(), fields: serde_json::Map::new() }
    }

    fn text(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    fn json(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    /// A `key: value` text line with the same JSON field.
    fn kv(self, key: &str, shown: impl std::fmt::Display, value: Value) -> Self {
        self.text(format!("{key}: {shown}")).json(key, value)
    }
}

fn render(cli: &Cli, report: Report) -> String {
    match cli.format {
        Format::Text => {
            let mut out = format!("command: {}\nseed: {}\n", report.command, cli.seed);
            for line in report.lines {
                writeln!(out, "{line}").unwrap();
            }
            out
        }
        Format::Json => {
            let mut fields = serde_json::Map::new();
            fields.insert("command".into(), json!(report.command));
            fields.insert("seed".into(), json!(cli.seed));
            fields.extend(report.fields);
            let mut out = serde_json::to_string_pretty(&Value::Object(fields)).unwrap();
            out.push('\n');
            out
        }
    }
}

fn words_json<T: ToString>(words: &[T]) -> Value {
    Value::from(words.iter().map(|w| w.to_string()).collect::<Vec<_>>())
}

fn verdict_report(report: Report, prefix: &str, v: &Verdict) -> Report {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}_{k}") };
    match v {
        Verdict::Conjugate(g) => report
            .kv(&key("verdict"), "Conjugate", json!("Conjugate"))
            .kv(&key("g"), g, json!(io::matrix_to_json(g))),
        Verdict::NotConjugate(w) => {
            let report = report.kv(&key("verdict"), "NotConjugate", json!("NotConjugate"));
            let detail = match w {
                Witness::Invariant { s, word } => json!({"kind": "Invariant", "s": s, "word": word.to_string()}),
                Witness::SplittingCharpoly { s, z } => {
                    json!({"kind": "SplittingCharpoly", "s": s, "z": z.to_string()})
                }
                Witness::OffDiagonal { word, row, col } => {
                    json!({"kind": "OffDiagonal", "word": word.to_string(), "row": row + 1, "col": col + 1})
                }
                Witness::WordMismatch { word } => json!({"kind": "WordMismatch", "word": word.to_string()}),
                Witness::IntertwinerRankDefect => json!({"kind": "IntertwinerRankDefect"}),
            };
            report.kv(&key("witness"), w, detail)
        }
        Verdict::Inconclusive(r) => report
            .kv(&key("verdict"), "Inconclusive", json!("Inconclusive"))
            .kv(&key("reason"), r, json!(r.to_string())),
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Conjugate(_) => EXIT_YES,
        Verdict::NotConjugate(_) => EXIT_NO,
        Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
    }
}

fn execute(cli: &Cli) -> Result<(i32, Report), CliError> {
    match &cli.command {
        Command::InU { tuple } => {
            let x = io::read_tuple(tuple)?;
            let cert = in_u(&x);
            let mut report = Report::new("in-u")
                .kv("in_U", cert.verdict, json!(cert.verdict))
                .kv("span_dim", cert.span_dim, json!(cert.span_dim))
                .kv("rounds", cert.rounds, json!(cert.rounds));
            if let Some(defect) = cert.defect_dim() {
                report = report.kv("defect_dim", defect, json!(defect));
            }
            let shown: Vec<String> = cert.spanning_words.iter().map(|w| w.to_string()).collect();
            report = report.kv("spanning_words", shown.join(", "), words_json(&cert.spanning_words));
            Ok((if cert.verdict { EXIT_YES } else { EXIT_NO }, report))
        }
        Command::Conjugate { x, y, algo, budget_words, budget_tries, len } => {
            let x = io::read_tuple(x)?;
            let y = io::read_tuple(y)?;
            let opts = ReconstructOptions {
                budget: SplitBudget { max_word_len: *budget_words, tries: *budget_tries },
                seed: cli.seed,
                fingerprint_len: *len,
            };
            let report = Report::new("conjugate");
            match algo {
                Algo::Linear => {
                    let v = conjugacy_linear(&x, &y)?;
                    let report = report.kv("algo", "linear", json!("linear"));
                    Ok((verdict_code(&v), verdict_report(report, "", &v)))
                }
                Algo::Reconstruct => {
                    let v = conjugacy_reconstruct(&x, &y, &opts)?;
                    let report = report.kv("algo", "reconstruct", json!("reconstruct"));
                    Ok((verdict_code(&v), verdict_report(report, "", &v)))
                }
                Algo::Both => {
                    let lin = conjugacy_linear(&x, &y)?;
                    let rec = conjugacy_reconstruct(&x, &y, &opts)?;
                    let agree = rec.is_inconclusive() || lin.is_conjugate() == rec.is_conjugate();
                    let report = report.kv("algo", "both", json!("both"));
                    let report = verdict_report(report, "linear", &lin);
                    let report = verdict_report(report, "reconstruct", &rec);
                    let report = report.kv("agreement", agree, json!(agree));
                    let code = if agree { verdict_code(&lin) } else { EXIT_DISAGREE };
                    Ok((code, report))
                }
            }
        }
        Command::Fingerprint { tuple, len, cyclic } => {
            let x = io::read_tuple(tuple)?;
            let len = len.unwrap_or(x.n() * x.n());
            let fp = fingerprint_with(&x, len, FingerprintOptions { cyclic_dedup: *cyclic })?;
            let table = fp.to_table();
            let entries: Vec<Value> = fp
                .entries()
                .map(|((s, w), v)| json!({"s": s, "word": w.to_string(), "value": io::elem_to_json(v)}))
                .collect();
            let report = Report::new("fingerprint")
                .kv("L", len, json!(len))
                .kv("entries", fp.len(), json!(entries))
                .text(table.trim_end().to_string())
                .json("table", json!(table));
            Ok((EXIT_YES, report))
        }
        Command::Separate { x, y, len } => {
            let x = io::read_tuple(x)?;
            let y = io::read_tuple(y)?;
            let len = len.unwrap_or(x.n() * x.n());
            let report = Report::new("separate").kv("L", len, json!(len));
            Ok(match separate(&x, &y, len)? {
                Separation::SameFiber => (EXIT_YES, report.kv("result", "SameFiber", json!("SameFiber"))),
                Separation::Separated { s, word, x_value, y_value } => {
                    let report = report
                        .kv("result", "Separated", json!("Separated"))
                        .kv(
                            "witness",
                            format!("({s},{word}) {x_value} vs {y_value}"),
                            json!({
                                "s": s,
                                "word": word.to_string(),
                                "x_value": io::elem_to_json(&x_value),
                                "y_value": io::elem_to_json(&y_value),
                            }),
                        );
                    (EXIT_NO, report)
                }
            })
        }
        Command::Morphism { map, source, target, d } => {
            let (field, spec) = io::read_map(map)?;
            let source = io::read_variety(source)?;
            let target = io::read_variety(target)?;
            if *source.field() != field {
                return Err(matinv::Error::FieldMismatch.into());
            }
            let r = morphism_check(&spec, &source, &target, *d)?;
            let mut report = Report::new("morphism")
                .kv("verdict", r.verdict, json!(r.verdict))
                .kv("d", r.d, json!(r.d))
                .kv("target_kernel_dim", r.target_kernel_dim, json!(r.target_kernel_dim));
            let failing = r.failing_points();
            report = report.kv("failing_points", failing.join(", "), json!(failing));
            let mut records = Vec::new();
            for rec in &r.records {
                let nonvanishing = rec.nonvanishing.as_ref().map(|p| p.to_string());
                report = report.text(format!(
                    "point {}: in_U={} annihilates_target_ideal={}{}",
                    rec.label,
                    rec.in_u_target,
                    rec.annihilates_target_ideal,
                    nonvanishing.as_deref().map(|p| format!(" nonvanishing={p}")).unwrap_or_default()
                ));
                records.push(json!({
                    "label": rec.label,
                    "image": TupleFile::from_tuple(&rec.image),
                    "in_U": rec.in_u_target,
                    "annihilates_target_ideal": rec.annihilates_target_ideal,
                    "nonvanishing": nonvanishing,
                }));
            }
            report = report.json("records", json!(records));
            Ok((if r.verdict { EXIT_YES } else { EXIT_NO }, report))
        }
        Command::Kernel { variety, d } => {
            let x = io::read_variety(variety)?;
            let basis = ideal_kernel_basis(&x, *d)?;
            let mut report = Report::new("kernel").kv("d", d, json!(d)).kv("dim", basis.len(), json!(basis.len()));
            for p in &basis {
                report = report.text(p.to_string());
            }
            report = report.json("basis", words_json(&basis));
            Ok((EXIT_YES, report))
        }
    }
}
