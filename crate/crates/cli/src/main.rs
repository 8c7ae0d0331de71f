//! `greenseq`: command-line front end to the engine.
//!
//! Exit codes: 0 success, 1 domain/input error, 2 usage error. Errors go to
//! stderr as `error[<kind>]: <message>`.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{value_parser, Args, Parser, Subcommand};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input { .. } => "input",
            CliError::Io { .. } => "io",
            CliError::Domain(_) => "domain",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "greenseq", version, about = "Quiver mutation, exchange graphs and maximal green sequences")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Worker threads for exploration (default: available parallelism).
    #[arg(long, global = true, env = "GREENSEQ_JOBS", value_parser = value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ExploreArgs {
    #[arg(long, default_value_t = 10_000, value_parser = value_parser!(u64).range(1..))]
    pub max_vertices: u64,
    #[arg(long, default_value_t = 64, value_parser = value_parser!(u64).range(1..))]
    pub max_depth: u64,
}

#[derive(Debug, Args, Clone)]
pub struct GreenArgs {
    #[arg(long, default_value_t = 64, value_parser = value_parser!(u64).range(1..))]
    pub max_len: u64,
    /// Cut branches whose matrix has a larger entry in absolute value.
    #[arg(long, default_value = "1000000", value_parser = positive_int)]
    pub max_entry: BigInt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate a quiver along a sequence of vertices.
    Mutate {
        input: PathBuf,
        /// Comma-separated 1-based vertices, applied left to right.
        #[arg(short, required = true, value_delimiter = ',', value_parser = value_parser!(u64).range(1..))]
        k: Vec<u64>,
        /// Emit Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Enumerate the oriented exchange graph of the framed quiver.
    Explore {
        input: PathBuf,
        #[command(flatten)]
        limits: ExploreArgs,
        /// Emit Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Distinguish labelled quivers instead of isomorphism classes.
        #[arg(long)]
        labelled: bool,
    },
    /// List maximal green sequences.
    GreenSeqs {
        input: PathBuf,
        #[command(flatten)]
        limits: GreenArgs,
    },
    /// Enumerate seeds with principal coefficients, one per cluster.
    Clusters {
        input: PathBuf,
        #[arg(long, default_value_t = 1_000, value_parser = value_parser!(u64).range(1..))]
        max_seeds: u64,
    },
    /// c-matrices along a mutation sequence.
    Cmat {
        input: PathBuf,
        /// Comma-separated 1-based vertices.
        #[arg(short, long, value_delimiter = ',', value_parser = value_parser!(u64).range(1..))]
        seq: Vec<u64>,
    },
    /// g-matrices along a mutation sequence.
    Gmat {
        input: PathBuf,
        /// Comma-separated 1-based vertices.
        #[arg(short, long, value_delimiter = ',', value_parser = value_parser!(u64).range(1..))]
        seq: Vec<u64>,
    },
    /// Ginzburg graded quiver and Jacobian relations of a quiver with potential.
    Ginzburg { input: PathBuf },
    /// Check the exchange-graph axioms, tropical duality and separation.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        limits: ExploreArgs,
        /// Random mutation sequences to test.
        #[arg(long, default_value_t = 100, value_parser = value_parser!(u64).range(1..))]
        trials: u64,
        /// Maximum length of each random sequence.
        #[arg(long, default_value_t = 6, value_parser = value_parser!(u64).range(1..))]
        depth: u64,
        /// RNG seed for the random sequences.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Persist sessions in this directory.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// Origin allowed by CORS (default: any).
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

fn positive_int(s: &str) -> Result<BigInt, String> {
    let x: BigInt = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if x < BigInt::from(1) {
        return Err("must be positive".into());
    }
    Ok(x)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let msg = rendered.trim_start_matches("error: ").trim_end();
            eprintln!("error[usage]: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    let (text, failures) = commands::dispatch(cli.command, cli.json)?;
    match &cli.output {
        Some(path) => greenseq_core::formats::write_atomic(path, &text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    if failures > 0 {
        eprintln!("error[domain]: {failures} check(s) failed");
        return Ok(1);
    }
    Ok(0)
}
