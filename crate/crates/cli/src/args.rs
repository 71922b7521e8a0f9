use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "topk-noise", version, about = "Top-k node recovery under edge-flip noise")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Seed for every random stream (overrides `seed_root` for experiments).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Data format for centrality output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (generate, perturb, centrality, bounds) or directory
    /// (experiment).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the experiment harness (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress the human-readable summary on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a latent graph and write it as an edge list.
    Generate {
        #[command(subcommand)]
        model: GenerateModel,
    },
    /// Apply edge-flip noise to an edge list.
    Perturb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Score nodes and extract the top-k set.
    Centrality {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        k: usize,
    },
    /// Evaluate recovery conditions and bounds for a latent graph (JSON).
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        c1: f64,
        /// Growth constant C(n); default max(1, ln ln n).
        #[arg(long)]
        c_of_n: Option<f64>,
        /// Bulk comparison rank; default is the search rule.
        #[arg(long)]
        i_star: Option<usize>,
        /// PA offset b, enabling PA rate diagnostics.
        #[arg(long, allow_hyphen_values = true)]
        pa_offset: Option<f64>,
    },
    /// Run the experiment described by a TOML config.
    Experiment {
        config: PathBuf,
        /// Timestamp used in file names and metadata (default: Unix seconds).
        #[arg(long)]
        stamp: Option<String>,
        /// Record wall time in the JSON metadata.
        #[arg(long)]
        record_timing: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenerateModel {
    /// Erdos-Renyi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Linear preferential attachment with offset b.
    Pa {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b: f64,
    },
    /// Watts-Strogatz small world.
    Sw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_ring: usize,
        #[arg(long)]
        rewire_p: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Degree,
    Eigenvector,
}
