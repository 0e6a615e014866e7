use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schurlab::collision::CollisionCase;
use schurlab::groups::{GroupSpec, SubgroupSpec};

use crate::output::{Emitter, Format};

/// Exact Schur, Plancherel and weak Fourier-Schur sampling distributions,
/// bound checks, and the collision-algorithm accounting.
#[derive(Debug, Parser)]
#[command(name = "schurlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plancherel and Schur distributions over partitions of k.
    Dist(DistArgs),
    /// Weak Fourier, weak Schur and joint sampling of a hidden subgroup state.
    Hsp(HspArgs),
    /// Distinguishing advantage, query plan and Monte Carlo for the collision problem.
    Collision(CollisionArgs),
    /// Randomized amplified swap test instances against the fidelity bound.
    Swaptest(SwaptestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory for output files; without it the result goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Record the wall-clock time (seconds since the Unix epoch) in the manifest.
    #[arg(long, global = true)]
    pub stamp: bool,
}

impl OutputArgs {
    pub fn emitter(&self) -> Emitter {
        Emitter {
            out: self.out.clone(),
            format: self.format,
            stamp: self.stamp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Compare {
    Planch,
    Schur,
    Both,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, required_unless_present = "sweep")]
    pub k: Option<usize>,
    /// Local dimension for the Schur distribution.
    #[arg(long)]
    pub d: Option<usize>,
    /// Defaults to `both` when --d is given and `planch` otherwise.
    #[arg(long, value_enum)]
    pub compare: Option<Compare>,
    /// Check the distance and fidelity bounds that apply to (k, d).
    #[arg(long)]
    pub bounds: bool,
    /// Second dimension for the monotonicity check (with --r).
    #[arg(long, requires = "r")]
    pub d2: Option<usize>,
    /// Scale factor for the monotonicity check (with --d2).
    #[arg(long, requires = "d2")]
    pub r: Option<usize>,
    /// Tabulate Delta and the bounds over 1 <= k <= k-max, 1 <= d <= d-max.
    #[arg(long, requires_all = ["k_max", "d_max"], conflicts_with_all = ["k", "d", "compare"])]
    pub sweep: bool,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub d_max: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HspMode {
    Fourier,
    Schur,
    Joint,
}

#[derive(Debug, Args)]
pub struct HspArgs {
    /// `cyclic:N`, `dihedral:N`, `sym:n` or `wreath_s2:n`.
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    /// `trivial`, `full`, `reflection:j` or `gen:<elements>`.
    #[arg(long, default_value = "trivial", value_parser = parse_subgroup)]
    pub subgroup: SubgroupSpec,
    /// Number of copies of the hidden subgroup state.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = HspMode::Fourier)]
    pub mode: HspMode,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: schurlab::Error| e.to_string())
}

fn parse_subgroup(s: &str) -> Result<SubgroupSpec, String> {
    s.parse().map_err(|e: schurlab::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct CollisionArgs {
    #[command(subcommand)]
    pub action: CollisionAction,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    OneToOne,
    RToOne,
    Both,
}

impl CaseArg {
    pub fn cases(self) -> Vec<CollisionCase> {
        match self {
            CaseArg::OneToOne => vec![CollisionCase::OneToOne],
            CaseArg::RToOne => vec![CollisionCase::RToOne],
            CaseArg::Both => vec![CollisionCase::OneToOne, CollisionCase::RToOne],
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CollisionAction {
    /// Exact success probability of telling k copies of rank d from rank d/r.
    Advantage {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Table size, copies per comparison, Grover iterations and query count.
    Plan {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// Classical Monte Carlo of the algorithm's success probability.
    Montecarlo {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CaseArg::Both)]
        case: CaseArg,
    },
}

#[derive(Debug, Args)]
pub struct SwaptestArgs {
    /// Copies per side.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Each instance has between 1 and this many branches.
    #[arg(long, default_value_t = 4)]
    pub max_branches: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
