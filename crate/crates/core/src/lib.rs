//! Top-k node recovery from noisy observations of a network.
//!
//! The crate generates latent graphs ([`graph`]), corrupts them with
//! independent edge flips ([`noise`]), ranks nodes by degree or eigenvector
//! centrality ([`centrality`]), evaluates the closed-form recovery and
//! infeasibility conditions ([`bounds`]) and runs reproducible Monte Carlo
//! studies ([`experiments`]).
//!
//! ```
//! use topk_noise::{apply_noise, degree_scores, generate_pa, hamming, top_k, NoiseParams, PaParams};
//!
//! let latent = generate_pa(PaParams::new(500, 3, 1.0)?, 7)?;
//! let observed = apply_noise(&latent, NoiseParams::new(0.001, 0.05)?, 8);
//! let truth = top_k(&degree_scores(&latent), 3, 0)?;
//! let guess = top_k(&degree_scores(&observed), 3, 0)?;
//! assert!(hamming(&truth, &guess)? <= 6);
//! # Ok::<(), topk_noise::Error>(())
//! ```

pub mod bounds;
pub mod centrality;
mod error;
pub mod experiments;
pub mod graph;
pub mod noise;
pub mod rng;

pub use centrality::{
    degree_scores, hamming, jaccard, spectral_top2, top_k, ScoreKind, ScoreVector, SpectralPair,
    TopKSet,
};
pub use error::{Error, Result};
pub use graph::{
    generate_er, generate_pa, generate_small_world, read_edge_list, write_edge_list,
    DegreeSequence, Graph, PaParams,
};
pub use noise::{apply_noise, exact_noise_distribution, NoiseParams};

/// The guide chapters, compiled so their examples run as doctests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub mod graphs {}
    #[doc = include_str!("../../../book/src/noise.md")]
    pub mod noise {}
    #[doc = include_str!("../../../book/src/degree_recovery.md")]
    pub mod degree_recovery {}
    #[doc = include_str!("../../../book/src/hamming.md")]
    pub mod hamming {}
    #[doc = include_str!("../../../book/src/eigenvector.md")]
    pub mod eigenvector {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    pub mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
