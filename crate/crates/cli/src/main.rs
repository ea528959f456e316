//! `whfact`: Wiener–Hopf factorization of group-algebra symbols.

mod job;
mod modes;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::job::{merge_symbol_file, parse_group, read_json, Engine, JobDocument, Mode};
use crate::output::Failure;

#[derive(Parser)]
#[command(name = "whfact", version, about = "Wiener–Hopf factorization of symbols over finite group algebras")]
struct Cli {
    /// Job document (JSON). Flags given with a subcommand override its fields.
    #[arg(long, global = true)]
    job: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Block-diagonalize a group symbol via the Fourier matrix.
    Reduce(Flags),
    /// Partial-index relations of a group symbol.
    Indices(Flags),
    /// Factorize a group symbol, or a scalar symbol with `--scalar`.
    Factorize(Flags),
    /// Factorize a symbol in the center of the group algebra.
    CenterFactorize(Flags),
    /// Certify a given factorization against a target.
    Verify(Flags),
    /// List groups, representations and character tables.
    Catalog(Flags),
    /// Symbol -> blocks -> symbol consistency check.
    Roundtrip(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// Group: s3, q8, v4, a4, c<n>, products such as c2xs3, a JSON spec, or a file.
    #[arg(long)]
    group: Option<String>,
    /// Symbol document: {group, symbol}, {group, class_coeffs} or a scalar {num, den}.
    /// Inline JSON or a file.
    #[arg(long)]
    symbol: Option<String>,
    /// Scalar symbol {num, den}, inline JSON or a file.
    #[arg(long)]
    scalar: Option<String>,
    /// Factorization document {minus, d, plus} to verify.
    #[arg(long)]
    factorization: Option<String>,
    /// Target matrix of symbols for `verify`.
    #[arg(long)]
    target: Option<String>,
    /// Output directory; without it documents go to stdout and reports to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verification grid size.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tol_recon: Option<f64>,
    #[arg(long)]
    tol_unitary: Option<f64>,
    /// Scalar engine for `factorize --scalar`.
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    /// Seed for `roundtrip` without a symbol.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random cases for `roundtrip`.
    #[arg(long)]
    count: Option<usize>,
}

impl Command {
    fn split(self) -> (Mode, Flags) {
        match self {
            Command::Reduce(f) => (Mode::Reduce, f),
            Command::Indices(f) => (Mode::Indices, f),
            Command::Factorize(f) => (Mode::Factorize, f),
            Command::CenterFactorize(f) => (Mode::CenterFactorize, f),
            Command::Verify(f) => (Mode::Verify, f),
            Command::Catalog(f) => (Mode::Catalog, f),
            Command::Roundtrip(f) => (Mode::Roundtrip, f),
        }
    }
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn json_arg(arg: &str) -> Result<Value, Failure> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| Failure::Parse(e.to_string()))
    } else {
        Ok(read_json(Path::new(t))?)
    }
}

fn typed<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    serde_json::from_value(json_arg(arg)?).map_err(|e| Failure::Parse(e.to_string()))
}

fn build_job(cli: Cli) -> Result<JobDocument, Failure> {
    let mut job = match &cli.job {
        Some(path) => serde_json::from_value::<JobDocument>(read_json(path)?)
            .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?,
        None => match &cli.command {
            Some(_) => JobDocument::empty(Mode::Catalog),
            None => return Err(Failure::Parse("give a subcommand or --job".into())),
        },
    };
    let Some(command) = cli.command else {
        return Ok(job);
    };
    let (mode, f) = command.split();
    job.mode = mode;
    if let Some(s) = &f.symbol {
        merge_symbol_file(&mut job, json_arg(s)?)?;
    }
    if let Some(g) = &f.group {
        job.group = Some(parse_group(g)?);
    }
    if let Some(s) = &f.scalar {
        job.scalar = Some(typed(s)?);
    }
    if let Some(s) = &f.factorization {
        job.factorization = Some(typed(s)?);
    }
    if let Some(s) = &f.target {
        job.target = Some(typed(s)?);
    }
    let o = &mut job.options;
    o.out = f.out.or(o.out.take());
    o.grid = f.grid.or(o.grid);
    o.tol_recon = f.tol_recon.or(o.tol_recon);
    o.tol_unitary = f.tol_unitary.or(o.tol_unitary);
    o.engine = f.engine.or(o.engine);
    o.seed = f.seed.or(o.seed);
    o.count = f.count.or(o.count);
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match build_job(cli) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let out = job.options.out.clone();
    let emit = |o: &output::Outcome| -> Result<(), Failure> {
        match &out {
            Some(dir) => {
                o.write_to(dir)?;
                if let Some(s) = &o.summary {
                    println!("{s}");
                }
                if !o.report.checks.is_empty() {
                    println!("overall: {}", if o.report.passed() { "PASS" } else { "FAIL" });
                }
                Ok(())
            }
            None => {
                o.print();
                Ok(())
            }
        }
    };
    let code = match modes::run(&job) {
        Ok(o) => emit(&o).map(|_| o.exit_code()).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.exit_code()
        }),
        Err(e) => {
            if let Failure::Partial { outcome, .. } = &e {
                if let Err(w) = emit(outcome) {
                    eprintln!("error: {w}");
                }
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code)
}
