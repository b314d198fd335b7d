use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fourier_rearrange::{Error, GridFunction};
use verify_cli::config::{parse_config, ConfigError, Location, PartialConfig};
use verify_cli::{run, tables, write_reports};

/// Numerical checks of Fourier rearrangement inequalities.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write report.json and summary.csv.
    Run(RunArgs),
    /// Print a CSV table on standard output.
    Table(TableArgs),
    /// Write the symmetric decreasing rearrangement of a grid file.
    Rearrange(RearrangeArgs),
    /// Evolve a grid file under the free Schrodinger flow and print x, |v|, phase.
    Evolve(EvolveArgs),
}

#[derive(Args)]
struct RunArgs {
    /// rearrange, specfun, inequalities, montgomery, schrodinger, conjecture1 or all (comma separated).
    #[arg(long)]
    suite: Option<String>,
    /// Dimensions, comma separated.
    #[arg(long)]
    dim: Option<String>,
    /// Cells per axis (a power of two).
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Trials per dimension for every randomized suite.
    #[arg(long)]
    trials: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// Tolerance replacing that of every gating check.
    #[arg(long)]
    tol: Option<String>,
    /// Flat `key = value` or JSON config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Specfun,
    Profile,
    Spectrum,
}

#[derive(Args)]
struct TableArgs {
    kind: TableKind,
    #[arg(long, default_value_t = 0.0)]
    order: f64,
    #[arg(long, default_value_t = 20.0)]
    xmax: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Grid file (JSON) or 1-D CSV with columns x,re,im.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Zero-padding factor for spectra.
    #[arg(long, default_value_t = 2)]
    pad: usize,
}

#[derive(Args)]
struct RearrangeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Output grid file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    t: f64,
    /// Zero-padding factor applied before evolving.
    #[arg(long, default_value_t = 2)]
    pad: usize,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

const USAGE: u8 = 2;
const FAILED: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(USAGE);
    }
    match cli.command {
        Command::Run(args) => run_command(args),
        Command::Table(args) => table_command(args),
        Command::Rearrange(args) => with_input(&args.input, |f| emit(args.out.as_deref(), &tables::rearranged_json(f))),
        Command::Evolve(args) => with_input(&args.input, |f| {
            let csv = tables::evolve_table(f, args.t, args.pad).map_err(failed)?;
            emit(args.out.as_deref(), &csv)
        }),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("VERIFY_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("VERIFY_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run_command(args: RunArgs) -> ExitCode {
    let cfg = match load_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let report = run(&cfg);
    if let Err(e) = write_reports(&report, &cfg.out) {
        eprintln!("error: cannot write reports to {}: {e}", cfg.out.display());
        return ExitCode::from(FAILED);
    }
    for s in &report.suites {
        let failed = s.reports.iter().filter(|r| r.gates_exit() && !r.pass).count();
        let status = if s.pass { "pass" } else { "FAIL" };
        match &s.error {
            Some(e) => println!("{:<13} {status} ({e})", s.suite.name()),
            None => println!(
                "{:<13} {status} ({} reports, {failed} failing)",
                s.suite.name(),
                s.reports.len()
            ),
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn load_config(args: &RunArgs) -> Result<verify_cli::RunConfig, ConfigError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
                location: None,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            parse_config(&text).map_err(|mut e| {
                e.message = format!("{}: {}", path.display(), e.message);
                e
            })?
        }
        None => PartialConfig::default(),
    };
    let mut flags = PartialConfig::default();
    let pairs: [(&'static str, &Option<String>); 7] = [
        ("suite", &args.suite),
        ("dim", &args.dim),
        ("n", &args.n),
        ("seed", &args.seed),
        ("trials", &args.trials),
        ("out", &args.out),
        ("tol", &args.tol),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            flags.set(key, v).map_err(|message| ConfigError {
                location: Some(Location::Flag(key)),
                message,
            })?;
        }
    }
    file.overlay(flags).finish()
}

fn table_command(args: TableArgs) -> ExitCode {
    let result = match args.kind {
        TableKind::Specfun => tables::specfun_table(args.order, args.xmax, args.step).map_err(usage),
        TableKind::Profile | TableKind::Spectrum => {
            let Some(path) = &args.input else {
                eprintln!("error: --input is required for this table");
                return ExitCode::from(USAGE);
            };
            return with_input(path, |f| {
                let csv = match args.kind {
                    TableKind::Profile => tables::profile_table(f),
                    _ => tables::spectrum_table(f, args.pad).map_err(failed)?,
                };
                emit(None, &csv)
            });
        }
    };
    match result.and_then(|csv| emit(None, &csv)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn usage(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(USAGE)
}

fn failed(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(FAILED)
}

fn with_input<F>(path: &Path, body: F) -> ExitCode
where
    F: FnOnce(&GridFunction) -> Result<(), ExitCode>,
{
    let f = match GridFunction::read(path) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    match body(&f) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), ExitCode> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(FAILED)
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|_| ExitCode::from(FAILED))
        }
    }
}
