//! Reproducible Monte Carlo studies of top-k recovery under edge noise.
//!
//! Every random stream is seeded by
//! `derive_seed(seed_root, [tag, grid_index, graph_index, draw_index])`
//! (see [`crate::rng::derive_seed`]), with one tag per purpose: latent
//! graph, tie breaking, noise draw. Graphs within a grid cell run in
//! parallel and are aggregated in index order, so output does not depend on
//! the thread count.

mod config;
mod localization;
mod output;
mod profile;
mod recovery;
pub mod stats;

pub use config::{
    CentralitySpec, ExperimentConfig, ExperimentKind, GridPoint, ModelSpec, NoiseSpec, PowerLaw,
    Rate, RateLaw,
};
pub use localization::{localization_stats, run_localization, LocalizationRow, LocalizationStats};
pub use output::{output_stem, run_experiment, write_outputs, ExperimentOutput, RunMeta};
pub use profile::{matched_models, run_figure1_profile, run_profile_config, ProfileRow};
pub use recovery::{run_jaccard_comparison, run_topk_experiment, SummaryRow};

use crate::error::Result;
use crate::graph::{generate_er, generate_pa, generate_small_world, Graph, PaParams};

/// Stream tags mixed into derived seeds.
pub mod tags {
    pub const LATENT: u64 = 1;
    pub const TIE: u64 = 2;
    pub const TIE_EVEC: u64 = 3;
    pub const NOISE: u64 = 4;
    pub const LOCALIZATION: u64 = 5;
    pub const PROFILE: u64 = 6;
}

/// Draw a latent graph on `n` nodes from `model`.
pub fn generate_latent(model: &ModelSpec, n: usize, seed: u64) -> Result<Graph> {
    match *model {
        ModelSpec::Er { p } => generate_er(n, p, seed),
        ModelSpec::Pa { m, b } => generate_pa(PaParams::new(n, m, b)?, seed),
        ModelSpec::Sw { k_ring, rewire_p } => generate_small_world(n, k_ring, rewire_p, seed),
    }
}
