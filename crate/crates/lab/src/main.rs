//! Command line for the Leibniz-inequality lab.
//!
//! Subcommands: `verify` runs a named suite of seeded trials, `search`
//! hunts for violations of the open inequalities, `reproduce` reruns the
//! stored counterexamples and identity sets, and `eval` exposes the
//! individual operations. Reports are emitted as JSON (or CSV with one row
//! per slack record).
//!
//! Exit codes: 0 all checks hold, 1 a violation or mismatch was found,
//! 2 usage or input errors.

mod emit;
mod eval;
mod inputs;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::harness::{identities_suite, reproduce, Report, SearchConfig, SearchTarget};
use leibniz_core::norms::NormSpec;

#[derive(Parser)]
#[command(
    name = "leibniz-lab",
    version,
    about = "Leibniz-inequality suites, searches and reproductions on finite sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite of seeded random trials.
    Verify(VerifyArgs),
    /// Randomized search for violations of a target inequality.
    Search(SearchArgs),
    /// Rerun a stored counterexample or identity set.
    Reproduce(ReproduceArgs),
    /// Evaluate a single operation and print the result.
    Eval(eval::EvalArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonRunArgs {
    /// Dimension of the sampled vectors.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Norm spec: p=<real>|p=inf|kfan=<k>|sumaug.
    #[arg(long)]
    norm: Option<String>,
    /// Moment exponent for weighted-leibniz (default: sampled per trial).
    #[arg(long)]
    p: Option<String>,
    /// Fixed Laplacian for kato-ponce, as a JSON matrix or @file.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slacks below -tolerance count as violations.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: leibniz, perm-inv-leibniz, contraction, module, bimodule,
    /// strong-leibniz, kato-ponce, weighted-leibniz, identities.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    common: CommonRunArgs,
}

#[derive(Args)]
struct SearchArgs {
    /// One of: leibniz, perm-inv-leibniz, contraction, module, bimodule,
    /// strong-leibniz, kato-ponce, weighted-leibniz.
    #[arg(long)]
    target: String,
    #[command(flatten)]
    common: CommonRunArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// One of: cs-bimodule-l1, delta3-not-strongly-leibniz,
    /// prop21-identity, lemma31-decomposition.
    #[arg(long)]
    case: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<ExitCode, AnyError> {
    match cli.command {
        Command::Verify(args) => {
            if args.suite == "identities" {
                let start = std::time::Instant::now();
                let mut reports =
                    identities_suite(args.common.n, args.common.trials, args.common.seed)?;
                runner::stamp_all(&mut reports, start);
                emit::emit_reports(&reports, args.common.format, args.common.out.as_deref())?;
                Ok(exit_for(&reports))
            } else {
                let config = build_config(&args.suite, &args.common)?;
                let report = runner::run_search(&config)?;
                emit::emit_report(&report, args.common.format, args.common.out.as_deref())?;
                Ok(exit_for(std::slice::from_ref(&report)))
            }
        }
        Command::Search(args) => {
            let config = build_config(&args.target, &args.common)?;
            let report = runner::run_search(&config)?;
            emit::emit_report(&report, args.common.format, args.common.out.as_deref())?;
            Ok(exit_for(std::slice::from_ref(&report)))
        }
        Command::Reproduce(args) => {
            let start = std::time::Instant::now();
            let mut report = reproduce(&args.case)?;
            runner::stamp(&mut report, start);
            emit::emit_report(&report, args.format, args.out.as_deref())?;
            Ok(exit_for(std::slice::from_ref(&report)))
        }
        Command::Eval(args) => {
            eval::run_eval(&args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().all(|r| r.clean()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn build_config(target: &str, common: &CommonRunArgs) -> Result<SearchConfig, AnyError> {
    let target: SearchTarget = target.parse()?;
    let mut config = SearchConfig::new(target, common.n);
    if let Some(norm) = &common.norm {
        config.spec = norm.parse::<NormSpec>()?;
    }
    if let Some(p) = &common.p {
        config.p = Some(p.parse()?);
    }
    if let Some(matrix) = &common.matrix {
        let m = inputs::parse_matrix(matrix)?;
        config.laplacian = Some(leibniz_core::operators::Laplacian::new(m)?);
    }
    config.trials = common.trials;
    config.seed = common.seed;
    config.tolerance = common.tolerance;
    config.validate()?;
    Ok(config)
}
