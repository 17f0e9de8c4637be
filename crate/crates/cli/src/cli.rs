use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "clgrowth", version, about = "Mutation combinatorics and growth of cluster algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for parallel searches (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// TOML file with limits and classifier thresholds; flags win over the file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Include wall-clock time in the report (makes reports differ between runs).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON document.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a mutation word to a matrix, seed or diagram.
    Mutate(MutateArgs),
    /// Enumerate the mutation class of a diagram.
    Class(ClassArgs),
    /// Count exchange-graph balls and classify the growth.
    Growth(GrowthArgs),
    /// Build or replay a ping-pong certificate.
    Certify(CertifyArgs),
    /// Unfolding checks.
    #[command(subcommand)]
    Unfold(UnfoldCommand),
    /// Browse the built-in catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

/// Where the exchange matrix or diagram comes from.
#[derive(Debug, Args)]
pub struct Source {
    /// Matrix file (rank line, then rows) or diagram file (`v N`, then `e i j w` lines).
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Catalog family, e.g. `A`, `D~`, `E6^11`, `X7`, `G2*+`.
    #[arg(long)]
    pub family: Option<String>,
    /// First family parameter.
    #[arg(long)]
    pub n: Option<u32>,
    /// Remaining family parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Directions, 1-based, separated by spaces or commas.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Track principal coefficients and print the C-matrix too.
    #[arg(long)]
    pub seed: bool,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// List every member with the word reaching it.
    #[arg(long)]
    pub members: bool,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub radius: usize,
    #[arg(long)]
    pub max_vertices: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub variance: Option<f64>,
    #[arg(long)]
    pub slope_tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Built-in case: X6, G2*+, G2^(1,1), G2^(3,3), F4*+, F4^(1,1), F4^(2,2).
    #[arg(long, required_unless_present = "replay", conflicts_with = "replay")]
    pub case: Option<String>,
    /// Re-run every check of a stored certificate.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Write the certificate JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fixed width `p/q` instead of the built-in value or search.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Also compare the engine with the published action formulas.
    #[arg(long)]
    pub published: bool,
}

#[derive(Debug, Subcommand)]
pub enum UnfoldCommand {
    /// Check both block conditions along every composite-mutation word up to a depth.
    Verify(UnfoldArgs),
}

#[derive(Debug, Args)]
pub struct UnfoldArgs {
    /// Unfolding file: b block, `E i: ...` lines, c block.
    #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
    pub input: Option<PathBuf>,
    /// Built-in pair id (see `catalog list`).
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub max_nodes: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Families, certificate cases and unfolding pairs.
    List,
    /// Print a catalog matrix, diagram or unfolding in its file format.
    Emit(EmitArgs),
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[command(flatten)]
    pub source: Source,
    /// Emit the diagram instead of the matrix.
    #[arg(long)]
    pub diagram: bool,
    #[arg(long, conflicts_with_all = ["family", "input"])]
    pub pair: Option<String>,
}
