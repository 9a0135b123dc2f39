use std::path::PathBuf;
use std::process::ExitCode;

use avoidkit::toolkit::{init_threads_from_env, GenKind};
use avoidkit::Error;
use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(
    name = "avoidkit",
    version,
    about = "Mutually avoiding sets and crossing families, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Io {
    /// Point file (`d n` header, one point per line).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Where to write the result; standard output if absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct Check {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled transversals when exhaustive checking is too large.
    #[arg(long, default_value_t = avoidkit::fractional::DEFAULT_TRIALS)]
    pub trials: u64,
    /// Check every transversal regardless of count.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set in general position.
    Gen {
        #[arg(long, default_value = "uniform")]
        kind: GenKind,
        #[arg(long, short)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturbation radius for `perturbed_grid`, e.g. `1/8`.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Find a mutually avoiding pair.
    FindAvoiding {
        #[command(flatten)]
        io: Io,
        /// Target size; searches heuristically for a pair of this size.
        #[arg(long)]
        m: Option<usize>,
        /// Largest n handed to the exhaustive search.
        #[arg(long)]
        cap: Option<usize>,
        /// Insist on the exhaustive search.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Find a planar crossing family.
    FindCrossing {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Positive-fraction family in the plane.
    Fractional {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 9)]
        m: usize,
        #[command(flatten)]
        check: Check,
    },
    /// Positive-fraction family in any dimension, through a same-type partition.
    FractionalRd {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of partition parts; defaults to max(2k^2, (d+2)k).
        #[arg(long)]
        parts: Option<usize>,
        #[command(flatten)]
        check: Check,
    },
    /// Crossing family of (d-1)-simplices by separation and projection.
    CrossingRd {
        #[command(flatten)]
        io: Io,
    },
    /// Partition into parts with same-type transversals.
    SametypePartition {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Re-check a report produced by another command.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Report file to check against the points.
        #[arg(long)]
        claim: PathBuf,
        #[command(flatten)]
        check: Check,
    },
    /// Tabulate achieved sizes against the sqrt(n/12) bound as CSV.
    Bench {
        /// Lines of `kind n d seed [delta]`; a built-in list if absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw a planar point set with report overlays as SVG.
    Render {
        #[command(flatten)]
        io: Io,
        /// Reports to overlay, drawn in the given order.
        #[arg(long = "overlay")]
        overlays: Vec<PathBuf>,
    },
}

/// Exit status of a finished command.
pub enum Outcome {
    Ok,
    Failed,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::NotFound(_) | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_threads_from_env().and_then(|_| dispatch(cli.command));
    match run {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("avoidkit: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn dispatch(cmd: Command) -> avoidkit::Result<Outcome> {
    use commands::*;
    match cmd {
        Command::Gen {
            kind,
            n,
            dim,
            seed,
            delta,
            output,
        } => gen(kind, n, dim, seed, delta.as_deref(), output),
        Command::FindAvoiding { io, m, cap, exhaustive } => find_avoiding(&io, m, cap, exhaustive),
        Command::FindCrossing { io, cap, exhaustive } => find_crossing(&io, cap, exhaustive),
        Command::Fractional { io, k, m, check } => fractional(&io, k, m, &check),
        Command::FractionalRd { io, k, parts, check } => fractional_rd(&io, k, parts, &check),
        Command::CrossingRd { io } => crossing_rd(&io),
        Command::SametypePartition {
            io,
            k,
            seed,
            exhaustive,
        } => sametype_partition(&io, k, seed, exhaustive),
        Command::Verify { io, claim, check } => verify(&io, &claim, &check),
        Command::Bench { spec, output } => bench(spec, output),
        Command::Render { io, overlays } => render(&io, &overlays),
    }
}
