//! `rotor-scan`: build the phase / angular-momentum operator sets, run the
//! verification battery, and emit limit-scan and commutator reports.
//!
//! Exit codes: 0 all checks pass / report written, 1 verification failure,
//! 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rotor_phase::FiniteError;
use rotor_scan::report::{
    commutator_csv, commutator_json, commutator_rows, finite_limit_rows_parallel,
    infinite_limit_rows, scan_csv, scan_json,
};
use rotor_scan::verify::{all_pass, run_verify, verify_csv, verify_json};
use rotor_scan::{ScanConfig, ScanError};

#[derive(Parser)]
#[command(
    name = "rotor-scan",
    version,
    about = "Phase/angular-momentum commutator scans and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every module invariant for l <= l-max; exits nonzero on failure
    Verify {
        #[arg(long = "l-max", default_value_t = 10)]
        l_max: u32,
        /// Tolerance for the algebraic-identity checks (quadrature, modulus,
        /// divergence and order windows keep their pinned thresholds)
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-space shift-to-zero limit of the normalized <n|R|k> elements
    FiniteLimit {
        /// Space sizes l, comma separated or repeated
        #[arg(long = "l", required = true, value_delimiter = ',')]
        l_values: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Infinite-rotor limit of (1/(i s)) (n, R m), with m passed as --k
    InfiniteLimit {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form commutator table with deviations from the direct product
    Commutator {
        #[arg(long = "l")]
        l: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long = "s-start", default_value_t = 1e-2)]
    s_start: f64,
    #[arg(long = "s-factor", default_value_t = 0.5)]
    s_factor: f64,
    #[arg(long = "s-steps", default_value_t = 20)]
    s_steps: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

enum AppError {
    Usage(String),
    Io(std::io::Error),
}

impl From<ScanError> for AppError {
    fn from(err: ScanError) -> AppError {
        AppError::Usage(err.to_string())
    }
}

impl From<FiniteError> for AppError {
    fn from(err: FiniteError) -> AppError {
        AppError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(err: std::io::Error) -> AppError {
        AppError::Io(err)
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), AppError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, AppError> {
    match cli.command {
        Command::Verify { l_max, tol, output } => {
            if tol < 0.0 {
                return Err(AppError::Usage(format!(
                    "tolerance must be non-negative, got {tol}"
                )));
            }
            let outcomes = run_verify(l_max, tol);
            let text = match output.format {
                Format::Csv => verify_csv(&outcomes),
                Format::Json => verify_json(&outcomes),
            };
            emit(&output, &text)?;
            Ok(if all_pass(&outcomes) { 0 } else { 1 })
        }
        Command::FiniteLimit {
            l_values,
            n,
            k,
            schedule,
            output,
        } => {
            let config = ScanConfig {
                l_values,
                s_start: schedule.s_start,
                s_factor: schedule.s_factor,
                s_steps: schedule.s_steps,
                n,
                k,
            };
            let rows = finite_limit_rows_parallel(&config)?;
            let text = match output.format {
                Format::Csv => scan_csv(&rows),
                Format::Json => scan_json(&rows),
            };
            emit(&output, &text)?;
            Ok(0)
        }
        Command::InfiniteLimit {
            n,
            k,
            schedule,
            output,
        } => {
            let config = ScanConfig {
                l_values: Vec::new(),
                s_start: schedule.s_start,
                s_factor: schedule.s_factor,
                s_steps: schedule.s_steps,
                n,
                k,
            };
            let rows = infinite_limit_rows(&config)?;
            let text = match output.format {
                Format::Csv => scan_csv(&rows),
                Format::Json => scan_json(&rows),
            };
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Commutator { l, output } => {
            let rows = commutator_rows(l);
            let text = match output.format {
                Format::Csv => commutator_csv(&rows),
                Format::Json => commutator_json(&rows),
            };
            emit(&output, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
