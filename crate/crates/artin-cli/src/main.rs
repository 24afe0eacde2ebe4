//! Command-line front end: generate Boolean-matrix semigroup tables,
//! decompose algebras into their Wedderburn data, and verify reports.
//!
//! Exit codes: 0 success, 1 verification found problems, 2 input error,
//! 3 a decomposition stage failed (a partial report is still written).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use artin::algebra::Algebra;
use artin::boolsemi::{
    generate, table_of, Family, MultiplicationTable, DEFAULT_CANDIDATE_LIMIT, DEFAULT_TABLE_LIMIT,
};
use artin::exactla::{parse_rational, Rational};
use artin::malcev::DEFAULT_DENSE_LIMIT;
use artin::pipeline::{
    build_report, decompose, verify_report, AssocMode, DecomposeInput, DecomposeOptions,
};
use artin::report::DecompositionReport;
use artin::split::{DEFAULT_KRONECKER_CAP, DEFAULT_PRIMITIVE_TRIALS};
use artin::wedderburn::DEFAULT_DESCENT_BUDGET;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_STAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "artin",
    version,
    about = "Exact Wedderburn decomposition of finite-dimensional rational algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate the multiplication table of a Boolean-matrix semigroup
    Gen(GenArgs),
    /// Decompose an algebra: radical, center, idempotents, simple
    /// components, representations, and a lifted basis
    Decompose(DecomposeArgs),
    /// Re-check a decomposition report against its input
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Semigroup family: sym, si, ft, pt, hall (or hm), qp, or b (or bool)
    #[arg(long)]
    family: String,
    /// Matrix size n
    #[arg(long)]
    n: usize,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Semigroup family to generate and decompose (with --n)
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Matrix size n for --family
    #[arg(long, conflicts_with = "input")]
    n: Option<usize>,
    /// JSON input file: a multiplication table or structure constants
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json or text
    #[arg(long, default_value = "json")]
    format: String,
    /// Seed for every randomized search in the pipeline
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree bound for minimal-polynomial factoring
    #[arg(long = "kronecker-max-degree", default_value_t = DEFAULT_KRONECKER_CAP)]
    kronecker_max_degree: usize,
    /// Random candidate budget when splitting the center
    #[arg(long = "primitive-trials", default_value_t = DEFAULT_PRIMITIVE_TRIALS)]
    primitive_trials: usize,
    /// Random candidate budget when hunting minimal left ideals
    #[arg(long = "descent-budget", default_value_t = DEFAULT_DESCENT_BUDGET)]
    descent_budget: usize,
    /// Skip the lifted-basis stage
    #[arg(long = "no-lift")]
    no_lift: bool,
    /// Values for free lift parameters, e.g. "x4_2=1,x5_2=0"
    #[arg(long = "lift-params")]
    lift_params: Option<String>,
    /// Associativity checking: auto, exhaustive, sampled, or off
    #[arg(long = "check-assoc", default_value = "auto")]
    check_assoc: String,
    /// Unknown-count ceiling for the dense lifting solver
    #[arg(long = "dense-limit", default_value_t = DEFAULT_DENSE_LIMIT)]
    dense_limit: usize,
    /// Force the dense lifting solver even when matrix units exist
    #[arg(long = "force-dense")]
    force_dense: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Report file produced by `artin decompose`
    #[arg(long)]
    report: PathBuf,
    /// The JSON input the report was computed from
    #[arg(long)]
    input: Option<PathBuf>,
    /// Regenerate the input from a family instead (with --n)
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Matrix size n for --family
    #[arg(long, conflicts_with = "input")]
    n: Option<usize>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Gen(args) => run_gen(args),
        Cmd::Decompose(args) => run_decompose(args),
        Cmd::Verify(args) => run_verify(args),
    }
}

fn family_table(family: &str, n: usize) -> Result<(MultiplicationTable, String), String> {
    let family = Family::parse(family).map_err(|e| e.to_string())?;
    let elems = generate(family, n, DEFAULT_CANDIDATE_LIMIT).map_err(|e| e.to_string())?;
    let table = table_of(&elems, DEFAULT_TABLE_LIMIT).map_err(|e| e.to_string())?;
    let description = format!("{}({n}) multiplication table", family.flag_name());
    Ok((table, description))
}

fn run_gen(args: GenArgs) -> Result<ExitCode, String> {
    let (table, _) = family_table(&args.family, args.n)?;
    let mut text =
        serde_json::to_string_pretty(&table.to_json()).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// A JSON input file holds either a multiplication table (`order`/`table`)
/// or structure constants (`dim`/`structure`).
fn load_input_file(path: &Path) -> Result<DecomposeInput, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{name}: top level must be a JSON object"))?;
    if obj.contains_key("table") {
        let table = MultiplicationTable::from_json(&value).map_err(|e| e.to_string())?;
        Ok(DecomposeInput::table(
            table,
            format!("multiplication table from {name}"),
        ))
    } else if obj.contains_key("structure") {
        let algebra = Algebra::from_json(&value).map_err(|e| e.to_string())?;
        Ok(DecomposeInput::algebra(
            algebra,
            format!("structure constants from {name}"),
        ))
    } else {
        Err(format!(
            "{name}: expected a \"table\" or \"structure\" field"
        ))
    }
}

fn resolve_input(
    family: Option<&str>,
    n: Option<usize>,
    input: Option<&Path>,
) -> Result<DecomposeInput, String> {
    match (input, family, n) {
        (Some(path), _, _) => load_input_file(path),
        (None, Some(f), Some(n)) => {
            let (table, description) = family_table(f, n)?;
            Ok(DecomposeInput::table(table, description))
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            Err("--family and --n must be given together".to_string())
        }
        (None, None, None) => Err("provide --input FILE or --family F --n N".to_string()),
    }
}

fn parse_lift_params(s: &str) -> Result<Vec<(String, Rational)>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("lift parameter {part:?} is not of the form name=value"))?;
        let value = parse_rational(value.trim())
            .map_err(|_| format!("lift parameter {part:?} has a malformed rational value"))?;
        out.push((name.trim().to_string(), value));
    }
    Ok(out)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_decompose(args: DecomposeArgs) -> Result<ExitCode, String> {
    let input = resolve_input(args.family.as_deref(), args.n, args.input.as_deref())?;
    let check_assoc = AssocMode::parse(&args.check_assoc)
        .ok_or_else(|| format!("unknown associativity mode {:?}", args.check_assoc))?;
    if args.format != "json" && args.format != "text" {
        return Err(format!("unknown format {:?} (use json or text)", args.format));
    }
    let opts = DecomposeOptions {
        seed: args.seed,
        check_assoc,
        kronecker_cap: args.kronecker_max_degree,
        primitive_trials: args.primitive_trials,
        descent_budget: args.descent_budget,
        lift: !args.no_lift,
        lift_params: match &args.lift_params {
            Some(s) => parse_lift_params(s)?,
            None => Vec::new(),
        },
        dense_limit: args.dense_limit,
        force_dense: args.force_dense,
    };
    let dec = decompose(input, &opts).map_err(|e| e.to_string())?;
    let report = build_report(&dec);
    let text = if args.format == "text" {
        report.to_text()
    } else {
        report.to_json_string()
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(f) = &dec.failure {
        eprintln!("stage {} failed: {}", f.stage, f.message);
        return Ok(ExitCode::from(EXIT_STAGE));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let text = fs::read_to_string(&args.report)
        .map_err(|e| format!("cannot read {}: {e}", args.report.display()))?;
    let report = DecompositionReport::from_json_str(&text).map_err(|e| e.to_string())?;
    let input = resolve_input(args.family.as_deref(), args.n, args.input.as_deref())?;
    let problems = verify_report(input, &report).map_err(|e| e.to_string())?;
    if problems.is_empty() {
        println!("report verified: all recorded claims hold for this input");
        Ok(ExitCode::SUCCESS)
    } else {
        for p in &problems {
            println!("problem: {p}");
        }
        println!("verification FAILED with {} problem(s)", problems.len());
        Ok(ExitCode::from(EXIT_VERIFY_FAILED))
    }
}
