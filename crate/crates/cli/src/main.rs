//! `drgj`: JSON command-line front end for distance-regular graph spectra.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use drg_jacobi::jacobi::DEFAULT_TOL;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "drgj",
    version,
    about = "Certify distance-regular graphs and compute their adjacency spectra"
)]
struct Cli {
    /// Render a human-readable view instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify distance-regularity and print the intersection sequence or a witness.
    Certify {
        /// Edge-list file or builtin name (petersen, complete:n, cycle:n, hypercube:d, complete_bipartite:n).
        source: String,
    },
    /// Eigenvalues and weights of the boundary-completed Jacobi operator.
    Spectrum {
        #[command(flatten)]
        input: SequenceInput,
        #[command(flatten)]
        boundary: Boundary,
        /// Relative bisection tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the invariant battery on one or more graphs.
    Verify {
        #[arg(required = true)]
        sources: Vec<String>,
        /// Worker threads; results keep input order.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact adjacency moments of an infinite family.
    Moments {
        /// tree:n or custom:a1,b1;...;period=p
        #[arg(long)]
        family: String,
        /// Highest moment order.
        #[arg(long)]
        order: usize,
    },
    /// Spectral measure of the adjacency operator.
    Measure {
        #[command(flatten)]
        input: SequenceInput,
        /// Also write a two-column `lambda weight` table to this path.
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
    /// Compare the spectra for two boundary parameters.
    Interlace {
        #[command(flatten)]
        input: SequenceInput,
        /// Boundary parameter; give exactly two.
        #[arg(long, required = true, allow_hyphen_values = true)]
        tau: Vec<f64>,
        /// Smallest accepted distance between the two spectra.
        #[arg(long, default_value_t = 1e-9)]
        gap: f64,
    },
    /// Dump the tridiagonal matrix.
    Jacobi {
        #[command(flatten)]
        input: SequenceInput,
        /// Infinite family to truncate instead of a finite sequence.
        #[arg(long, conflicts_with_all = ["source", "array"], requires = "size")]
        family: Option<String>,
        /// Truncation size for --family.
        #[arg(long, requires = "family")]
        size: Option<usize>,
        #[command(flatten)]
        boundary: Boundary,
    },
}

/// A graph source or an explicit intersection sequence.
#[derive(Args, Debug)]
struct SequenceInput {
    /// Edge-list file or builtin name.
    #[arg(conflicts_with = "array")]
    source: Option<String>,
    /// Intersection sequence "a1,b1;a2,b2;...".
    #[arg(long)]
    array: Option<String>,
}

#[derive(Args, Debug)]
struct Boundary {
    /// Boundary parameter in the bottom-right corner.
    #[arg(long, conflicts_with = "canonical", allow_hyphen_values = true)]
    tau: Option<f64>,
    /// Use the canonical boundary degree - a_d (default).
    #[arg(long)]
    canonical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Witness,
    Error,
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn error(err: &anyhow::Error) -> Self {
        Self {
            status: Status::Error,
            payload: Value::Null,
            diagnostics: err.chain().map(|e| e.to_string()).collect(),
        }
    }
}

fn emit(result: &CommandResult, pretty: bool) -> ExitCode {
    if pretty {
        print!("{}", render::render(result));
    } else {
        println!(
            "{}",
            serde_json::to_string(result).expect("JSON values always serialize")
        );
    }
    ExitCode::from(match result.status {
        Status::Ok => 0,
        Status::Error => 1,
        Status::Witness => 2,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            let rendered = err.to_string();
            let message = rendered.lines().next().unwrap_or_default();
            let message = message.trim_start_matches("error: ").to_string();
            let pretty = std::env::args().any(|a| a == "--pretty");
            return emit(&CommandResult::error(&anyhow::anyhow!(message)), pretty);
        }
    };
    let result = commands::run(cli.command).unwrap_or_else(|e| CommandResult::error(&e));
    emit(&result, cli.pretty)
}
