//! Command-line verification harness. `taubethe verify <suite>` runs
//! the registered checks for one suite (or all of them), prints one
//! line per check, optionally writes a JSON or CSV report, and exits
//! 0 when everything passed, 1 when any check failed, and 2 on usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use taubethe::report::{write_report, ReportFormat, Status};
use taubethe::suite::{run_suite, RunMode, SuiteConfig, SuiteName};

#[derive(Parser)]
#[command(
    name = "taubethe",
    version,
    about = "Cross-checks determinant and tau-function identities of integrable lattice models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print one line per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Determinant / lattice size cap.
    #[arg(long)]
    n: Option<usize>,
    /// Spin-chain length for Bethe checks.
    #[arg(long)]
    sites: Option<usize>,
    /// Magnon number for Bethe-state checks.
    #[arg(long)]
    magnons: Option<usize>,
    /// Arithmetic mode to run checks in.
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Random points per check.
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// PRNG seed (TAUBETHE_SEED is the environment fallback).
    #[arg(long, env = "TAUBETHE_SEED", default_value_t = 7)]
    seed: u64,
    /// Pass threshold for floating-point residuals.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Write a machine-readable report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Symfunc,
    Taufn,
    Sixvertex,
    Bethe,
    Qzero,
    All,
}

impl From<SuiteArg> for SuiteName {
    fn from(arg: SuiteArg) -> SuiteName {
        match arg {
            SuiteArg::Symfunc => SuiteName::Symfunc,
            SuiteArg::Taufn => SuiteName::Taufn,
            SuiteArg::Sixvertex => SuiteName::Sixvertex,
            SuiteArg::Bethe => SuiteName::Bethe,
            SuiteArg::Qzero => SuiteName::Qzero,
            SuiteArg::All => SuiteName::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
    Both,
}

impl From<ModeArg> for RunMode {
    fn from(arg: ModeArg) -> RunMode {
        match arg {
            ModeArg::Exact => RunMode::Exact,
            ModeArg::Float => RunMode::Float,
            ModeArg::Both => RunMode::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> ReportFormat {
        match arg {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let mut cfg = SuiteConfig::new(args.suite.into());
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(sites) = args.sites {
        cfg.sites = sites;
    }
    if let Some(magnons) = args.magnons {
        cfg.magnons = magnons;
    }
    cfg.mode = args.mode.into();
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.tol = args.tol;

    let results = match run_suite(&cfg) {
        Ok(results) => results,
        Err(e) => {
            eprintln!("taubethe: {e}");
            return ExitCode::from(2);
        }
    };

    for r in &results {
        println!(
            "{} {:>9}/{:<34} residual {:10.3e}  {:>5} ms",
            r.status, r.suite, r.check, r.residual, r.elapsed_ms
        );
        if r.status == Status::Fail {
            println!("      {}", r.params);
        }
    }
    let passed = results.iter().filter(|r| r.status == Status::Pass).count();
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = results.iter().filter(|r| r.status == Status::Skip).count();
    println!("{passed} passed, {failed} failed, {skipped} skipped (seed {})", cfg.seed);

    if let Some(path) = &args.report {
        if let Err(e) = write_report(&results, args.format.into(), path) {
            eprintln!("taubethe: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }

    if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
