use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "saw-forge", version, about = "Exact enumeration and surgery for self-avoiding walks and polygons")]
pub struct Cli {
    /// Omit the timestamp so identical runs give identical reports.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Walk, polygon, closing, half-space and bridge counts.
    Census(CensusArgs),
    /// Polygon joins: plaquette, Madras, and regulation joins.
    Join(JoinArgs),
    /// Pattern shells, combs and the resampling experiment.
    Patterns(PatternsArgs),
    /// Charming indices and charming snakes.
    Snake(SnakeArgs),
    /// Counts in the model where each edge may be used three times.
    Edge3(Edge3Args),
    /// Runs a suite of exact checks.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CensusTarget {
    Walks,
    Polygons,
    Closing,
    HalfSpace,
    Bridges,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "walks,polygons")]
    pub targets: Vec<CensusTarget>,
    /// Prefix length at which the search is split into parallel shards.
    #[arg(long)]
    pub shard_depth: Option<usize>,
    /// Report path; a `.csv` extension writes the table instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum JoinMode {
    Simple,
    Madras,
    Rgj,
}

#[derive(Args, Debug)]
pub struct JoinArgs {
    #[arg(long, value_enum)]
    pub mode: JoinMode,
    /// Length of the left polygons.
    #[arg(long)]
    pub k: usize,
    /// Length of the right polygons.
    #[arg(long)]
    pub l: usize,
    /// Window divisor for regulation joins.
    #[arg(long, default_value_t = 10)]
    pub c_reg: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("action").required(true).args(["scan", "resample", "comb"])))]
pub struct PatternsArgs {
    /// Polygon file whose local shell is reported.
    #[arg(long)]
    pub scan: Option<PathBuf>,
    /// Polygon file to resample repeatedly.
    #[arg(long)]
    pub resample: Option<PathBuf>,
    /// Builds a comb polygon, e.g. `II,I/I`: first-window types, then last-window types.
    #[arg(long)]
    pub comb: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub draws: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SnakeArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Odd walk length.
    #[arg(long)]
    pub n: usize,
    /// First-part length.
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    #[arg(long, default_value = "1")]
    pub beta: String,
    #[arg(long, default_value = "1/4")]
    pub eta: String,
    #[arg(long, alias = "out")]
    pub report: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Edge3Target {
    Walks,
    Polygons,
}

#[derive(Args, Debug)]
pub struct Edge3Args {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "walks,polygons")]
    pub targets: Vec<Edge3Target>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Surgery,
    Patterns,
    Edge3,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "identities")]
    pub suite: Suite,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 11)]
    pub max_n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
