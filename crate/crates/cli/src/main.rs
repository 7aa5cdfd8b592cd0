//! `hermite`: command-line front end with canonical JSON output.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermite_core::Error;

use crate::output::{render, Payload};

const CONVENTIONS: &str = include_str!("conventions.txt");

#[derive(Parser, Debug)]
#[command(name = "hermite", version, about = "Exact computations around Hermite reciprocity")]
struct Cli {
    /// Print the basis and sign conventions and exit.
    #[arg(long, global = true)]
    conventions: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Characteristic of the working field; 0 means the rationals.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,

    /// Include wall-clock timings in the metadata. Off by default to keep output reproducible.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reciprocity maps, the star action and freeness certificates.
    Hermite(HermiteArgs),
    /// Line bundles, wedge powers of Schwarzenberger bundles, twisted symmetric powers.
    Cohomology(CohomologyArgs),
    /// Hankel matrices, Betti tables, Hilbert series and secant invariants.
    Hankel(HankelArgs),
    /// Rank one MCM modules and the generalized reciprocity check.
    Mcm(McmArgs),
    /// Weyman complexes, single and bigraded.
    Weyman(WeymanArgs),
    /// Vanishing checks in a given genus and closed-form Tor dimensions.
    Green(GreenArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct HermiteArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Output the matrix of the action in degree --d.
    #[arg(long)]
    pub star: bool,
    /// Certify freeness up to degree --d.
    #[arg(long)]
    pub freeness: bool,
    #[arg(long, default_value = "wedge")]
    pub mode: String,
    /// Also check the triangle and square identities.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct HankelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Also run the brute-force Koszul homology oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Comma-separated integer point at which to evaluate the Hankel matrix.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

#[derive(Args, Debug)]
pub struct McmArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// Run the generalized reciprocity check at this index instead.
    #[arg(long)]
    pub i: Option<usize>,
}

#[derive(Args, Debug)]
pub struct WeymanArgs {
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long)]
    pub v: Option<usize>,
    /// Bidegree `d1,d2` of the bigraded complex.
    #[arg(long)]
    pub bidegree: Option<String>,
    #[arg(long, default_value = "transparent")]
    pub policy: String,
    /// With --u --v: check the closed-form identification in genus --g for scroll type --a.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    /// Include the differentials.
    #[arg(long)]
    pub matrices: bool,
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    #[arg(long)]
    pub g: usize,
    /// Scroll type for the scroll Tor profile.
    #[arg(long)]
    pub a: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// hermite, supernatural, hankel, selfdual, green or all
    pub suite: String,
}

/// Exit status for an error from the core library.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::UnsupportedTwistWindow(_) => 2,
        Error::ResourceLimit { .. } => 3,
        Error::Linalg(hermite_core::LinalgError::InvalidModulus(_)) => 2,
        Error::Linalg(_) => 1,
    }
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    if cli.conventions && cli.command.is_none() {
        print!("{CONVENTIONS}");
        return Ok(ExitCode::SUCCESS);
    }
    let Some(command) = cli.command else {
        return Err((2, "no subcommand given; see --help".into()));
    };
    let start = std::time::Instant::now();
    let payload: Payload = commands::dispatch(&command, cli.characteristic).map_err(|e| {
        let code = exit_code(&e);
        (code, e.to_string())
    })?;
    let elapsed = cli.timings.then(|| start.elapsed());
    let text = render(&payload, cli.format, elapsed).map_err(|msg| (2, msg))?;
    match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| (1, format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if let Some(summary) = &payload.summary {
        eprint!("{summary}");
    }
    Ok(if payload.passed == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// `THREADS` caps the worker pool; output does not depend on it.
fn configure_threads() -> Result<(), (u8, String)> {
    let Ok(v) = std::env::var("THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| (2, format!("THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| (1, e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
