use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use esq_core::qstate::DEFAULT_MAX_DIM;
use esq_core::sweep::DEFAULT_THRESHOLD_TOL;
use esq_core::{Family, LogBase, Method};

/// Entropic bounds on multipartite squashed entanglement.
///
/// Values use the multipartite convention, which for two parties equals twice
/// the bipartite squashed entanglement. Entropies are in bits unless
/// `--log-base e` is given.
#[derive(Debug, Parser)]
#[command(name = "esq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Logarithm base for every entropy: 2 (bits) or e (nats).
    #[arg(long, global = true, default_value = "2")]
    pub log_base: LogBase,

    /// Largest total Hilbert-space dimension accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a lower bound on one state.
    Bound(BoundArgs),
    /// Evaluate bounds over a grid of the family parameter p.
    Sweep(SweepArgs),
    /// Locate where a bound crosses zero by bisection.
    Threshold(ThresholdArgs),
    /// Evaluate the conditional mutual information on an extension (an upper bound).
    Upper(UpperArgs),
    /// Von Neumann entropy of a marginal.
    Entropy(EntropyArgs),
    /// Randomized self-checks.
    Check(CheckArgs),
}

/// Where the input state comes from.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// JSON state file.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,

    /// Named family: ghz, w, ghz-w, werner, product, random-pure, random-mixed.
    #[arg(long)]
    pub family: Option<Family>,

    /// Number of parties (ghz-w is fixed at 4, werner at 3).
    #[arg(long)]
    pub n: Option<usize>,

    /// Family parameter in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,

    /// Seed for the random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Local dimension of each party.
    #[arg(long, default_value_t = 2)]
    pub local_dim: usize,

    /// Rank of random-mixed states.
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

/// Family selection for commands that vary p.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Named family: ghz-w, werner, or any non-parametric family.
    #[arg(long)]
    pub family: Family,

    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 2)]
    pub local_dim: usize,

    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[arg(long, default_value = "lemma3")]
    pub method: Method,

    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,

    /// Also write the evaluated state to this JSON file.
    #[arg(long)]
    pub save_state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    /// Repeat to sweep several methods.
    #[arg(long = "method", default_value = "lemma3")]
    pub methods: Vec<Method>,

    /// Inclusive grid start:end:step.
    #[arg(long, default_value = "0:1:0.001")]
    pub grid: String,

    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write an SVG line chart.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    #[arg(long, default_value = "lemma3")]
    pub method: Method,

    /// Bracket lo:hi whose endpoints have opposite signs.
    #[arg(long)]
    pub bracket: String,

    /// Final bracket width.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD_TOL)]
    pub tol: f64,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct UpperArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Extension state file (state format plus "e_index").
    #[arg(long, conflicts_with = "eigen_ensemble")]
    pub ext: Option<PathBuf>,

    /// Use the classical extension built from the spectral decomposition.
    #[arg(long)]
    pub eigen_ensemble: bool,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Comma-separated party indices; all parties when omitted.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Strong subadditivity and chain-rule check on random 3-qubit states.
    #[arg(long)]
    pub ssa: bool,

    #[arg(long, default_value_t = 500)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
