//! `orleak` — batch front end for simulating distributed OR algorithms,
//! measuring anonymity leakage, evaluating lower bounds, running the
//! verification suites, and working with ramp secret-sharing schemes.
//!
//! Exit codes: 0 success, 2 configuration error, 3 violated invariant or
//! failed check, 4 resource cutoff exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;
mod spec;

use config::FileConfig;
use error::CliResult;
use output::Format;

#[derive(Parser)]
#[command(
    name = "orleak",
    version,
    about = "Anonymity-leakage laboratory for distributed OR algorithms"
)]
struct Cli {
    /// JSON config file supplying defaults for common flags (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Flags shared by most subcommands.
#[derive(Args, Debug)]
struct CommonArgs {
    /// Graph: builtin (`star:4`, `path:3`, `cycle:5`, `complete:2`) or a
    /// file in edge-list or JSON format.
    #[arg(long)]
    graph: Option<String>,

    /// Algorithm: `convergecast[:root=R]`, `silent[:root=R]`,
    /// `dummy[:root=R]`, `lossy[:root=R]` (negative control), or
    /// `rebased(<inner>;targets=1,2)`.
    #[arg(long)]
    algo: Option<String>,

    /// Master seed for anything randomized (tapes, Monte-Carlo sampling).
    #[arg(long)]
    seed: Option<u64>,

    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Input assignment: `zeros`, `initiator:V`, or `bits:0110`.
    #[arg(long, default_value = "zeros")]
    input: String,

    /// Random-tape bits per node (defaults to what the algorithm needs).
    #[arg(long)]
    tape_bits: Option<usize>,

    /// Round budget (defaults to 4n).
    #[arg(long)]
    max_rounds: Option<usize>,
}

#[derive(Args, Debug)]
struct LeakageArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Observation mode: full | filtered | card.
    #[arg(long)]
    mode: Option<String>,

    /// Watched edge set, e.g. `0-1,1-2`.
    #[arg(long)]
    edges: Option<String>,

    /// Bernoulli edge-observation probability.
    #[arg(long)]
    p: Option<f64>,

    /// Ordered-tuple length for the averaged leakage.
    #[arg(long)]
    k: Option<usize>,

    /// Evaluation method for --p: exact | mc.
    #[arg(long)]
    method: Option<String>,

    /// Monte-Carlo sample count.
    #[arg(long)]
    samples: Option<u32>,

    /// Random-tape bits per node (defaults to what the algorithm needs).
    #[arg(long)]
    tape_bits: Option<usize>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Which bound to evaluate: sparse_k | sparse_p | dense_k | dense_p |
    /// sparsec_k | sparsec_p | sparsec_coro_k | sparsec_coro_p | densec_k |
    /// densec_p | rcase | petrov | ramp_star.
    #[arg(long)]
    theorem: String,

    /// Tuple length for the `_k` bounds.
    #[arg(long)]
    k: Option<u32>,

    /// Bernoulli probability for the `_p` bounds.
    #[arg(long)]
    p: Option<f64>,

    /// Watched edge set for `rcase`.
    #[arg(long)]
    edges: Option<String>,

    /// Worst-case communication override for the capped bounds (measured
    /// from --algo when omitted).
    #[arg(long)]
    wcom: Option<usize>,

    /// Random-tape bits for the measured side.
    #[arg(long)]
    tape_bits: Option<usize>,

    /// Petrov sweep limit (all compositions of every n up to this).
    #[arg(long)]
    n_max: Option<usize>,

    /// Petrov single evaluation: block sizes, e.g. `2,2`.
    #[arg(long)]
    blocks: Option<String>,

    /// Petrov cap parameter m.
    #[arg(long)]
    m: Option<usize>,

    /// Party count for ramp_star.
    #[arg(long)]
    parties: Option<usize>,

    /// Colluder count k for ramp_star.
    #[arg(long)]
    colluders: Option<usize>,

    /// Secret entropy in bits for ramp_star (default 1).
    #[arg(long)]
    secret_bits: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Graph family: `default` (all connected graphs with n <= 5 plus the
    /// 6-node specials) or `n<=K`.
    #[arg(long, default_value = "default")]
    family: String,

    /// Size of the star/path/cycle/complete specials (0 disables them).
    #[arg(long)]
    special_n: Option<usize>,

    /// Comma-separated suite names (all when omitted).
    #[arg(long)]
    suites: Option<String>,

    /// Inject a broken algorithm instead of the standard set: `lossy`.
    #[arg(long)]
    algos: Option<String>,
}

#[derive(Args, Debug)]
struct RampArgs {
    /// Write the full scheme dump (including the joint table) here.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    action: RampAction,
}

#[derive(Subcommand, Debug)]
enum RampAction {
    /// Build and verify a packed Shamir scheme.
    Build {
        s: usize,
        r: usize,
        n: usize,
        q: u64,
    },
    /// Re-verify a scheme dump produced by `build --out`.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the share-size lower bound for an (s, r, n) shape.
    Bounds { s: usize, r: usize, n: usize },
}

#[derive(Subcommand)]
enum Command {
    /// Run one execution and dump its per-edge message histories.
    Simulate(SimulateArgs),
    /// Measure anonymity leakage and emit a report row.
    Leakage(LeakageArgs),
    /// Evaluate a lower bound, optionally against a measured algorithm.
    Bounds(BoundsArgs),
    /// Run the invariant suites over a graph family.
    Verify(VerifyArgs),
    /// Build, verify, and bound ramp secret-sharing schemes.
    Ramp(RampArgs),
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Simulate(args) => commands::simulate::exec(args, &file),
        Command::Leakage(args) => commands::leakage::exec(args, &file),
        Command::Bounds(args) => commands::bounds::exec(args, &file),
        Command::Verify(args) => commands::verify::exec(args, &file),
        Command::Ramp(args) => commands::ramp::exec(&args.action, args.out.as_ref()),
    }
}

/// Die quietly on a closed pipe (`orleak verify | head`) like other Unix
/// tools instead of panicking mid-print.
fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
