//! Command-line front end for Killing and conformal Killing tensor computations.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a conformal Killing tensor not of
//! Killing type was found, 3 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use killing_core::catalog;
use killing_core::format::{
    format_tensor, parse_tensor, to_json_pretty, AlgebraDoc, DegreeReportDoc, PredicatesDoc, TensorDoc, WitnessDoc,
};
use killing_core::killing::{
    check_killing_type_up_to, conformal_factor, conformal_killing_space, killing_completion, killing_space,
    tensor_of, KillingTypeReport,
};
use killing_core::search::search;
use killing_core::{Error, MetricLieAlgebra, SymTensor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "killtype", version, about = "Exact Killing and conformal Killing tensors on metric Lie algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra file: Jacobi identity and positive definite Gram matrix.
    Validate { file: PathBuf },
    /// Killing and conformal Killing spaces in one degree.
    Spaces {
        /// Algebra or witness file, or a catalog expression.
        input: String,
        #[arg(long)]
        degree: usize,
    },
    /// Per-degree Killing-type report.
    CheckType {
        input: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Find R with K + L·R Killing for the tensor K.
    Complete {
        input: String,
        /// Tensor file; defaults to the tensor of a witness file given as input.
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Killing-type checks for seeded random metrics on fixed brackets.
    Search {
        /// Catalog expression or algebra file.
        family: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Also write each witness to its own file in this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Entry names, parameters and descriptions.
    List,
    /// Run the regression expectations of the given entries (all by default).
    Run { entries: Vec<String> },
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

/// Report text and exit code of a successful run.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

/// An algebra, plus the tensor when the input is a witness file.
struct Input {
    alg: MetricLieAlgebra,
    tensor: Option<SymTensor>,
}

fn parse_document(text: &str) -> Result<Input, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::from(Error::Document(e.to_string())))?;
    if value.get("algebra").is_some() {
        let (alg, tensor) = killing_core::format::parse_witness(text)?;
        return Ok(Input {
            alg,
            tensor: Some(tensor),
        });
    }
    Ok(Input {
        alg: killing_core::format::parse_algebra(text)?,
        tensor: None,
    })
}

/// A path to an existing file is read as a document; anything else is a catalog expression.
fn resolve(input: &str) -> Result<Input, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        return parse_document(&read_file(path)?);
    }
    if input.ends_with(".json") {
        return Err(io_failure(path, std::io::Error::from(std::io::ErrorKind::NotFound)));
    }
    Ok(Input {
        alg: catalog::build(input)?,
        tensor: None,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(alg: &MetricLieAlgebra) -> String {
    format!("algebra: {} (dimension {})\n", alg.name(), alg.n())
}

fn predicates_line(alg: &MetricLieAlgebra) -> String {
    let p = PredicatesDoc::of(alg);
    format!(
        "dim center {}, dim derived {}, abelian {}, unimodular {}, 2-step nilpotent {}, ad-invariant metric {}\n",
        p.dim_center,
        p.dim_derived,
        yes_no(p.is_abelian),
        yes_no(p.is_unimodular),
        yes_no(p.is_two_step_nilpotent),
        yes_no(p.is_ad_invariant_metric)
    )
}

fn cmd_validate(file: &Path, format: OutputFormat) -> Result<Outcome, Failure> {
    let text = read_file(file)?;
    let result = parse_document(&text);
    let (code, report) = match (&result, format) {
        (Ok(input), OutputFormat::Text) => (EXIT_OK, format!("valid\n{}{}", header(&input.alg), predicates_line(&input.alg))),
        (Ok(input), OutputFormat::Json) => (
            EXIT_OK,
            to_json_pretty(&json!({
                "valid": true,
                "name": input.alg.name(),
                "dimension": input.alg.n(),
                "predicates": PredicatesDoc::of(&input.alg),
            })),
        ),
        (Err(f), OutputFormat::Text) => (EXIT_INVALID, format!("invalid\n{}\n", f.message)),
        (Err(f), OutputFormat::Json) => (
            EXIT_INVALID,
            to_json_pretty(&json!({ "valid": false, "error": f.message })),
        ),
    };
    Ok(Outcome { code, report })
}

fn cmd_spaces(input: &str, p: usize, format: OutputFormat) -> Result<Outcome, Failure> {
    let Input { alg, .. } = resolve(input)?;
    let n = alg.n();
    let killing = killing_space(&alg, p);
    let conformal = conformal_killing_space(&alg, p);
    let tensors = |s: &killing_core::Subspace| -> Vec<SymTensor> {
        s.basis().iter().map(|v| tensor_of(n, p, v)).collect()
    };
    let (k, c) = (tensors(&killing), tensors(&conformal));
    let report = match format {
        OutputFormat::Json => to_json_pretty(&json!({
            "algebra": alg.name(),
            "dimension": n,
            "degree": p,
            "dim_sym": killing_core::sym::dim_sym(n, p),
            "killing": { "dim": k.len(), "basis": k.iter().map(TensorDoc::from_tensor).collect::<Vec<_>>() },
            "conformal": { "dim": c.len(), "basis": c.iter().map(TensorDoc::from_tensor).collect::<Vec<_>>() },
        })),
        OutputFormat::Text => {
            let mut s = header(&alg);
            let _ = writeln!(s, "degree {p}, dim Sym^{p} = {}", killing_core::sym::dim_sym(n, p));
            let _ = writeln!(s, "killing: dim {}", k.len());
            for t in &k {
                let _ = writeln!(s, "  {}", format_tensor(&alg, t));
            }
            let _ = writeln!(s, "conformal killing: dim {}", c.len());
            for t in &c {
                let _ = writeln!(s, "  {}", format_tensor(&alg, t));
            }
            s
        }
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn report_table(alg: &MetricLieAlgebra, reports: &[KillingTypeReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3} {:>8} {:>8} {:>8} {:>10} {:>13} {:>8} {:>12}",
        "p", "dim_sym", "killing", "image_L", "conformal", "killing_type", "verdict", "cross_check"
    );
    for r in reports {
        let _ = writeln!(
            s,
            "{:>3} {:>8} {:>8} {:>8} {:>10} {:>13} {:>8} {:>12}",
            r.degree,
            r.dim_sym,
            r.dim_killing,
            r.dim_image_l,
            r.dim_conformal,
            r.dim_killing_type,
            r.verdict,
            r.cross_check
        );
    }
    for r in reports {
        if let Some(w) = &r.witness {
            let _ = writeln!(s, "witness in degree {}: {}", r.degree, format_tensor(alg, w));
        }
    }
    s
}

fn cmd_check_type(input: &str, max_degree: usize, format: OutputFormat) -> Result<Outcome, Failure> {
    let Input { alg, .. } = resolve(input)?;
    let start = Instant::now();
    let reports = check_killing_type_up_to(&alg, max_degree)?;
    let elapsed_ms = start.elapsed().as_millis();
    let all_true = reports.iter().all(|r| r.verdict);
    let report = match format {
        OutputFormat::Json => to_json_pretty(&json!({
            "algebra": AlgebraDoc::from_algebra(&alg),
            "predicates": PredicatesDoc::of(&alg),
            "max_degree": max_degree,
            "degrees": reports.iter().map(DegreeReportDoc::from).collect::<Vec<_>>(),
            "all_true": all_true,
            "elapsed_ms": elapsed_ms,
        })),
        OutputFormat::Text => {
            let mut s = header(&alg);
            s.push_str(&predicates_line(&alg));
            s.push_str(&report_table(&alg, &reports));
            if all_true {
                let _ = writeln!(s, "every degree up to {max_degree} is of Killing type");
            } else {
                let _ = writeln!(s, "some degree up to {max_degree} is not of Killing type");
            }
            let _ = writeln!(s, "elapsed: {elapsed_ms} ms");
            s
        }
    };
    let code = if all_true { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome { code, report })
}

fn cmd_complete(input: &str, tensor: Option<&Path>, format: OutputFormat) -> Result<Outcome, Failure> {
    let Input { alg, tensor: embedded } = resolve(input)?;
    let k = match tensor {
        Some(path) => parse_tensor(&read_file(path)?, alg.n())?,
        None => embedded.ok_or_else(|| Failure {
            code: EXIT_INVALID,
            message: "no tensor given: pass --tensor or a witness file".into(),
        })?,
    };
    let is_killing = alg.d_apply(&k).is_zero();
    let is_conformal = conformal_factor(&alg, &k)?.is_some();
    let completion = killing_completion(&alg, &k)?;
    // a conformal Killing tensor without completion is not of Killing type
    let code = if is_conformal && completion.is_none() {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let report = match format {
        OutputFormat::Json => to_json_pretty(&json!({
            "algebra": alg.name(),
            "degree": k.degree(),
            "killing": is_killing,
            "conformal": is_conformal,
            "completion": completion.as_ref().map(TensorDoc::from_tensor),
        })),
        OutputFormat::Text => {
            let mut s = header(&alg);
            let _ = writeln!(s, "K = {}", format_tensor(&alg, &k));
            let _ = writeln!(s, "killing: {}", yes_no(is_killing));
            let _ = writeln!(s, "conformal killing: {}", yes_no(is_conformal));
            match &completion {
                Some(r) => {
                    let _ = writeln!(s, "R = {}", format_tensor(&alg, r));
                }
                None => {
                    let _ = writeln!(s, "no R with K + L·R Killing");
                }
            }
            s
        }
    };
    Ok(Outcome { code, report })
}

fn cmd_catalog(action: &CatalogAction, format: OutputFormat) -> Result<Outcome, Failure> {
    match action {
        CatalogAction::List => {
            let entries = catalog::entries();
            let report = match format {
                OutputFormat::Json => to_json_pretty(
                    &entries
                        .iter()
                        .map(|e| json!({ "name": e.name, "signature": e.signature, "description": e.description }))
                        .collect::<Vec<_>>(),
                ),
                OutputFormat::Text => entries
                    .iter()
                    .map(|e| format!("{}\n    {}\n", e.signature, e.description))
                    .collect(),
            };
            Ok(Outcome { code: EXIT_OK, report })
        }
        CatalogAction::Run { entries } => {
            let list: Vec<String> = if entries.is_empty() {
                catalog::default_expressions().into_iter().map(String::from).collect()
            } else {
                entries.clone()
            };
            let mut all_passed = true;
            let mut text = String::new();
            let mut docs = Vec::new();
            for name in &list {
                let expr = catalog::parse_expr(name)?;
                let alg = catalog::build_expr(&expr)?;
                let outcomes = catalog::run_expectations(&alg, &catalog::expectations(&expr)?)?;
                let _ = writeln!(text, "{}", alg.name());
                for o in &outcomes {
                    all_passed &= o.passed;
                    let _ = writeln!(
                        text,
                        "  [{}] {} ({})",
                        if o.passed { "pass" } else { "FAIL" },
                        o.description,
                        o.origin
                    );
                }
                docs.push(json!({
                    "entry": alg.name(),
                    "checks": outcomes.iter().map(|o| json!({
                        "check": o.description,
                        "origin": o.origin.to_string(),
                        "passed": o.passed,
                    })).collect::<Vec<_>>(),
                }));
            }
            let report = match format {
                OutputFormat::Json => to_json_pretty(&json!({ "entries": docs, "all_passed": all_passed })),
                OutputFormat::Text => text,
            };
            let code = if all_passed { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Outcome { code, report })
        }
    }
}

fn write_witnesses(dir: &Path, witnesses: &[WitnessDoc]) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    for (k, w) in witnesses.iter().enumerate() {
        let path = dir.join(format!("witness-{k:03}-degree{}.json", w.degree));
        std::fs::write(&path, to_json_pretty(w) + "\n").map_err(|e| io_failure(&path, e))?;
    }
    Ok(())
}

fn cmd_search(
    family: &str,
    trials: usize,
    seed: u64,
    max_degree: usize,
    witness_dir: Option<&Path>,
    format: OutputFormat,
) -> Result<Outcome, Failure> {
    if trials == 0 {
        return Err(Failure {
            code: EXIT_INVALID,
            message: "--trials must be at least 1".into(),
        });
    }
    let Input { alg, .. } = resolve(family)?;
    let summary = search(&alg, trials, seed, max_degree)?;
    if let Some(dir) = witness_dir {
        write_witnesses(dir, &summary.witnesses)?;
    }
    let report = match format {
        OutputFormat::Json => to_json_pretty(&summary),
        OutputFormat::Text => {
            let mut s = header(&alg);
            let _ = writeln!(s, "seed {seed}, {trials} random metrics, degrees up to {max_degree}");
            let _ = writeln!(s, "of Killing type in every degree: {}/{}", summary.all_true, trials);
            for r in summary.results.iter().filter(|r| !r.failing_degrees.is_empty()) {
                let _ = writeln!(s, "trial {}: failing degrees {:?}", r.trial, r.failing_degrees);
            }
            if !summary.results.iter().all(|r| r.cross_checks_agree) {
                let _ = writeln!(s, "warning: the image criterion disagreed in some trial");
            }
            s
        }
    };
    let code = if summary.found_witness() { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome { code, report })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Validate { file } => cmd_validate(file, f),
        Command::Spaces { input, degree } => cmd_spaces(input, *degree, f),
        Command::CheckType { input, max_degree } => cmd_check_type(input, *max_degree, f),
        Command::Complete { input, tensor } => cmd_complete(input, tensor.as_deref(), f),
        Command::Catalog { action } => cmd_catalog(action, f),
        Command::Search {
            family,
            trials,
            seed,
            max_degree,
            witness_dir,
        } => cmd_search(family, *trials, *seed, *max_degree, witness_dir.as_deref(), f),
    }
}

/// Runs and delivers the report to `--output` or standard output; returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(outcome) => {
            let mut report = outcome.report;
            if !report.ends_with('\n') {
                report.push('\n');
            }
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &report) {
                        let f = io_failure(path, e);
                        eprintln!("error: {}", f.message);
                        return f.code;
                    }
                }
                None => print!("{report}"),
            }
            outcome.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
