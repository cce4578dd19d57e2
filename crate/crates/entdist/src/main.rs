use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entdist::config::SweepConfig;
use entdist::oracle_check::{self, OracleCheckConfig};
use entdist::output::{self, OutputRow};
use entdist::sweep::SweepGrid;
use entdist::{exit, CliError};
use entdist_core::compare::{crossover_n, ratio_r};
use entdist_core::locc::effective_ratio;

/// Compare N single-photon ebits against one twin beam plus optimal LOCC
/// for sharing N ebits over a lossy link.
#[derive(Debug, Parser)]
#[command(name = "entdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single (eta, lambda, N) point.
    Point {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        sink: Sink,
    },
    /// Evaluate a grid; defaults come from the built-in config.
    Sweep {
        /// Grid config file (TOML: etas, lambdas, n_min, n_max).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated transmissivities; overrides the config.
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<f64>>,
        /// Comma-separated gain parameters; overrides the config.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[command(flatten)]
        sink: Sink,
    },
    /// Run the truncated Fock-space checks and report each residual.
    OracleCheck {
        /// Fock cutoff per mode.
        #[arg(long, default_value_t = 30)]
        trunc: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Smallest N for which the ratio bound r exceeds one.
    Crossover {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        lambda: f64,
    },
}

#[derive(Debug, Args)]
struct Sink {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn emit(rows: &[OutputRow], sink: &Sink) -> Result<(), CliError> {
    let write = |w: &mut dyn Write| match sink.format {
        Format::Csv => output::write_csv(rows, w),
        Format::Json => output::write_json(rows, w),
    };
    match &sink.out {
        Some(path) => {
            let ctx = || format!("writing {}", path.display());
            let file = File::create(path).map_err(|e| CliError::Io {
                context: ctx(),
                source: e,
            })?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(|e| CliError::Io {
                context: ctx(),
                source: e,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w).map_err(|e| CliError::Io {
                context: "writing stdout".into(),
                source: e,
            })
        }
    }
}

fn run_grid(grid: &SweepGrid, sink: &Sink) -> Result<i32, CliError> {
    let rows: Vec<OutputRow> = grid.evaluate()?.iter().map(OutputRow::from).collect();
    emit(&rows, sink)?;
    Ok(exit::OK)
}

fn load_config(path: Option<&Path>) -> Result<SweepConfig, CliError> {
    match path {
        Some(p) => SweepConfig::load(p),
        None => Ok(SweepConfig::builtin()),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Point { eta, lambda, n, sink } => run_grid(&SweepGrid::single(eta, lambda, n)?, &sink),
        Command::Sweep {
            config,
            eta,
            lambda,
            n_min,
            n_max,
            sink,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            if let Some(e) = eta {
                cfg.etas = e;
            }
            if let Some(l) = lambda {
                cfg.lambdas = l;
            }
            cfg.n_min = n_min.unwrap_or(cfg.n_min);
            cfg.n_max = n_max.unwrap_or(cfg.n_max);
            run_grid(&cfg.into_grid()?, &sink)
        }
        Command::OracleCheck {
            trunc,
            tol,
            eta,
            lambda,
        } => {
            let outcomes = oracle_check::run(&OracleCheckConfig {
                trunc,
                tol,
                eta,
                lambda,
            })?;
            println!("oracle-check trunc={trunc} eta={eta} lambda={lambda} tol={tol:e}");
            for o in &outcomes {
                println!("{o}");
            }
            Ok(if oracle_check::all_passed(&outcomes) {
                exit::OK
            } else {
                exit::CHECK_FAILED
            })
        }
        Command::Crossover { eta, lambda } => {
            let x = effective_ratio(lambda, eta)?;
            let n = crossover_n(eta, lambda)?;
            let r = ratio_r(eta, lambda, n)?;
            println!("eta,lambda,x,N,r,ln_r");
            println!(
                "{},{},{},{},{},{}",
                output::format_number(eta),
                output::format_number(lambda),
                output::format_number(x),
                n,
                output::format_number(r.r),
                output::format_number(r.ln_r)
            );
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
