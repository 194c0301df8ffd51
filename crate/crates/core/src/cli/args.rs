use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chain::TailSide;
use crate::ldp::Bound;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "greedy-ldp", version, about = "Greedy exploration of sparse random graphs and its large deviations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Upper,
    Lower,
}

impl From<SideArg> for TailSide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Upper => TailSide::Upper,
            SideArg::Lower => TailSide::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundArg {
    Sigma1,
    Sigma2,
}

impl From<BoundArg> for Bound {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Sigma1 => Bound::Sigma1,
            BoundArg::Sigma2 => Bound::Sigma2,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo replicas of the chain or of the graph exploration.
    Simulate {
        #[command(subcommand)]
        mode: SimulateMode,
    },
    /// Exact law of the stopping time.
    Dist {
        #[command(subcommand)]
        mode: DistMode,
    },
    /// Rates along Hamiltonian extremals and of user paths.
    Rate {
        #[command(subcommand)]
        mode: RateMode,
    },
    /// Rates of the independent-set bounds over a grid of c.
    Bounds(BoundsArgs),
    /// Run the invariant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum SimulateMode {
    Chain(SimulateArgs),
    Graph(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub c: f64,
    /// Master seed; replica i uses a seed derived from (seed, i).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Emit the explored counts step by step instead of stop times.
    #[arg(long)]
    pub paths: bool,
}

#[derive(Debug, Subcommand)]
pub enum DistMode {
    Exact(DistArgs),
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub c: f64,
    /// Also report the log-probability of T/n beyond this threshold.
    #[arg(long)]
    pub tail: Option<f64>,
    #[arg(long, value_enum, default_value = "upper")]
    pub side: SideArg,
}

#[derive(Debug, Subcommand)]
pub enum RateMode {
    /// Extremal x(t), alpha(t) and running cost on a grid over [0, 1].
    Traj {
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha0: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// F(alpha0) on an evenly spaced grid.
    #[command(name = "F", alias = "f")]
    F {
        #[arg(long)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha0_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha0_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Decay rate of P(T/n >= T* + eps) or P(T/n <= T* - eps).
    Tail {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Rate of a piecewise-linear path read from a "t,value" CSV.
    Path {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        path_file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub c_min: f64,
    #[arg(long)]
    pub c_max: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum)]
    pub which: BoundArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Smaller grids; finishes in a few seconds.
    #[arg(long)]
    pub quick: bool,
    /// Run a single check.
    #[arg(long)]
    pub check: Option<String>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha0: Option<f64>,
}
