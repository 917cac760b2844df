//! Command-line front end: argument parsing, dispatch and output.

pub mod cache;
pub mod commands;
pub mod render;
pub mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minorgrowth::verify::Level;

use crate::commands::{cmd_classify, cmd_constants, cmd_count, cmd_verify, parse_range, CliError};
use crate::report::{Payload, Report};

/// Exit status for a completed run whose verification failed.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Exit status for usage, parse and input errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "minorgrowth",
    version,
    about = "Growth rates of minor-closed classes of labelled graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Print the report as JSON.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Print counts as CSV (count only).
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Growth category of Ex(H_1, ..., H_k).
    Classify {
        /// Excluded minors, comma separated, e.g. "complete:3, star:3".
        #[arg(long)]
        exclude: String,
        #[command(flatten)]
        output: Output,
    },
    /// Exact counts of labelled members on n vertices.
    Count {
        #[arg(long)]
        exclude: String,
        /// A size or an inclusive range a..b.
        #[arg(long = "n", value_parser = parse_range)]
        n: (usize, usize),
        /// JSON count cache, created if missing.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Enumeration threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        output: Output,
    },
    /// ξ, ν and the ρ_k / γ_k table.
    Constants {
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        /// Bisection stops once the bracket is this narrow.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Run the acceptance checks; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value = "fast", value_parser = parse_level)]
        level: Level,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse().map_err(|e: minorgrowth::Error| e.to_string())
}

impl Command {
    fn output(&self) -> &Output {
        match self {
            Command::Classify { output, .. }
            | Command::Count { output, .. }
            | Command::Constants { output, .. }
            | Command::Verify { output, .. } => output,
        }
    }
}

pub fn execute(cli: &Cli, echo: &[String]) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { exclude, .. } => cmd_classify(echo, exclude),
        Command::Count {
            exclude,
            n,
            cache,
            workers,
            ..
        } => cmd_count(echo, exclude, *n, cache.as_deref(), *workers),
        Command::Constants { kmax, tol, .. } => {
            if tol.is_nan() || *tol <= 0.0 {
                return Err(CliError::Input(minorgrowth::Error::Parse {
                    pos: 0,
                    msg: format!("--tol must be positive, got {tol}"),
                }));
            }
            cmd_constants(echo, *kmax, *tol)
        }
        Command::Verify { level, .. } => Ok(cmd_verify(echo, *level)),
    }
}

/// Parses `args` (without the program name), runs the command and prints
/// the report.
pub fn run(args: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(
        std::iter::once("minorgrowth".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match execute(&cli, &args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let output = cli.command.output();
    if output.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else if output.csv {
        match render::csv(&report) {
            Some(text) => print!("{text}"),
            None => {
                eprintln!("error: --csv is only available for count");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    } else {
        print!("{}", render::human(&report));
    }
    match &report.result {
        Payload::Verify(v) if !v.passed => ExitCode::from(EXIT_VERIFY_FAILED),
        _ => ExitCode::SUCCESS,
    }
}
