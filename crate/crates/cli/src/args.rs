use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ramsey-rates", version, about = "Exponential bases for Ramsey-type colouring and forbidden-intersection problems")]
pub struct Cli {
    /// Emit one JSON object instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// JSON file with default tolerances, budgets and seeds; flags win.
    #[arg(long, global = true, env = "RAMSEY_RATES_CONFIG")]
    pub config_file: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named constants and the table of headline bases.
    Constants,
    /// One base for a forbidden configuration or intersection problem.
    Bound(BoundArgs),
    /// Search asymmetric block plans for the forbidden-intersection bound.
    OptimizePartition(OptimizeArgs),
    /// Split an integer into primes.
    PrimeSplit(PrimeArgs),
    /// Combine two super-Ramsey parameter tuples.
    Compose(ComposeArgs),
    /// Semicross or box parameters for a triangle, simplex or baton.
    Embed(EmbedArgs),
    /// Run a randomized certification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Euclidean,
    Manhattan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    TwoPoint,
    Simplex,
    Semicross,
    RightTriangle,
    AcuteTriangle,
    Triangle,
    Baton,
    Sunflower,
    Intersection,
    Clique,
    Plan,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub config: BoundKind,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub norm: NormArg,
    /// Comma-separated semicross or baton scalings.
    #[arg(long, value_delimiter = ',')]
    pub scalings: Vec<f64>,
    /// Comma-separated triangle sides (two legs for a right triangle).
    #[arg(long, value_delimiter = ',')]
    pub sides: Vec<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Prime class of r - s: 1, 3 or 4.
    #[arg(long)]
    pub c: Option<u32>,
    /// Use the unproved c = 2 for even r - s.
    #[arg(long)]
    pub hypothetical: bool,
    /// JSON file holding a block plan.
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Ground-set size for the finite sunflower chain.
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Also realize the best plan at this n with prime block differences.
    #[arg(long)]
    pub certify_n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    #[arg(long)]
    pub target: u64,
    #[arg(long, default_value_t = 3)]
    pub parts: usize,
    /// Comma-separated shares for a proportional three-prime split.
    #[arg(long, value_delimiter = ',')]
    pub proportions: Vec<f64>,
    /// Spell out the head-plus-three construction for even targets.
    #[arg(long)]
    pub recipe: bool,
    /// Two primes nearest target/2 (conditional on Goldbach).
    #[arg(long)]
    pub goldbach: bool,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub eps1: f64,
    #[arg(long)]
    pub m1: u32,
    #[arg(long)]
    pub c2: f64,
    #[arg(long)]
    pub eps2: f64,
    #[arg(long)]
    pub m2: u32,
    /// Also report the folded k-fold power of the first tuple.
    #[arg(long)]
    pub iterate: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, value_delimiter = ',')]
    pub triangle: Vec<f64>,
    #[arg(long)]
    pub simplex: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub baton: Vec<f64>,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub norm: NormArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TreeConcat,
    Family,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub max_vertices: Option<usize>,
    /// Family file (`n=<int>` header, one hex mask per line) to check as well.
    #[arg(long)]
    pub family_file: Option<PathBuf>,
}
