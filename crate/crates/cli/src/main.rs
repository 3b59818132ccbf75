mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Failure;

#[derive(Parser)]
#[command(name = "foliar", version, about = "Diagrammatic certificates for persistently foliar knots")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a knot diagram given as PD code or diagram JSON (stdin if no file).
    Check {
        input: Option<PathBuf>,
        /// Write the collapsed graph, side graphs and Tait graphs as DOT files.
        #[arg(long, value_name = "DIR")]
        emit_dot: Option<PathBuf>,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Check a braid word such as "s1^3 s2^-3".
    Braid {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: Option<usize>,
        /// Also check the closure diagram and require agreement.
        #[arg(long)]
        crosscheck: bool,
        #[arg(long, value_name = "DIR")]
        emit_dot: Option<PathBuf>,
    },
    /// Check a weighted planar tree such as "(2 (3) (-4))".
    Tree {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Also run the Tait route on the generated diagram.
        #[arg(long)]
        crosscheck: bool,
        #[arg(long, value_name = "DIR")]
        emit_dot: Option<PathBuf>,
    },
    /// Classify a surgery on the Borromean rings.
    Borromean {
        #[arg(num_args = 3, allow_negative_numbers = true, value_names = ["R1", "R2", "R3"])]
        slopes: Vec<String>,
    },
    /// Crossing circles, coefficients and a smoothing plan for a diagram.
    Augment { input: Option<PathBuf> },
    /// Run every input in a directory (.pd, .json, .braid, .tree).
    Corpus { dir: PathBuf },
    /// List the built-in diagrams, or print one as PD code.
    Catalog { name: Option<String> },
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Check { input, emit_dot, timings } => commands::check(input.as_deref(), emit_dot.as_deref(), timings, json),
        Command::Braid { word, strands, crosscheck, emit_dot } => {
            commands::braid(&word, strands, crosscheck, emit_dot.as_deref(), json)
        }
        Command::Tree { expr, crosscheck, emit_dot } => commands::tree(&expr, crosscheck, emit_dot.as_deref(), json),
        Command::Borromean { slopes } => commands::borromean(&slopes, json),
        Command::Augment { input } => commands::augment(input.as_deref(), json),
        Command::Corpus { dir } => commands::corpus(&dir, json),
        Command::Catalog { name } => commands::catalog(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant { output, message }) => {
            print!("{output}");
            eprintln!("invariant violated: {message}");
            ExitCode::from(3)
        }
    }
}
