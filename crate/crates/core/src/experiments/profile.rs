use serde::Serialize;

use super::config::{ExperimentConfig, ExperimentKind, ModelSpec};
use super::{generate_latent, tags};
use crate::error::{Error, Result};
use crate::noise::{apply_noise, NoiseParams};
use crate::rng::derive_seed;

/// One line of a degree-profile table: the node at `rank` in the latent
/// ordering, its latent degree and its degree in the noisy observation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub model: &'static str,
    pub rank: usize,
    pub node: usize,
    pub degree: usize,
    pub noisy_degree: usize,
}

/// Latent models matched to a target mean degree: `ER(n, md/(n-1))`, a
/// small world with the largest even ring degree `<= md` and rewiring 0.1,
/// and linear PA (`b = 1`) with `m = md / 2`.
pub fn matched_models(n: usize, mean_degree: usize) -> Result<[ModelSpec; 3]> {
    if mean_degree < 2 || mean_degree >= n {
        return Err(Error::invalid(
            "mean_degree",
            format!("must lie in [2, n - 1] for matched models (n = {n}, got {mean_degree})"),
        ));
    }
    let m = mean_degree / 2;
    if m + 1 >= n {
        return Err(Error::invalid(
            "mean_degree",
            format!("PA needs m = {m} < n - 1 (n = {n})"),
        ));
    }
    Ok([
        ModelSpec::Er {
            p: mean_degree as f64 / (n - 1) as f64,
        },
        ModelSpec::Sw {
            k_ring: mean_degree - mean_degree % 2,
            rewire_p: 0.1,
        },
        ModelSpec::Pa { m, b: 1.0 },
    ])
}

/// Ordered degree tables for ER, small-world and PA graphs of matching
/// mean degree, before and after one noisy observation.
pub fn run_figure1_profile(
    n: usize,
    mean_degree: usize,
    noise: NoiseParams,
    seed: u64,
) -> Result<Vec<ProfileRow>> {
    let mut rows = Vec::with_capacity(3 * n);
    for (i, model) in matched_models(n, mean_degree)?.iter().enumerate() {
        let g = generate_latent(model, n, derive_seed(seed, &[tags::PROFILE, i as u64, 0]))?;
        let y = apply_noise(&g, noise, derive_seed(seed, &[tags::PROFILE, i as u64, 1]));
        let latent = g.degrees();
        let observed = y.degree_vec();
        for (r, &node) in latent.order().iter().enumerate() {
            rows.push(ProfileRow {
                model: model.label(),
                rank: r + 1,
                node,
                degree: latent.degrees()[node],
                noisy_degree: observed[node],
            });
        }
    }
    Ok(rows)
}

/// Profile tables for every `n` in a `figure1` config.
pub fn run_profile_config(cfg: &ExperimentConfig) -> Result<Vec<ProfileRow>> {
    cfg.validate()?;
    if cfg.kind != ExperimentKind::Figure1 {
        return Err(Error::Config {
            field: "kind".into(),
            message: format!("expected figure1, got {}", cfg.kind.as_str()),
        });
    }
    let md = cfg.mean_degree.expect("validated");
    let mut rows = Vec::new();
    for (cell, &n) in cfg.grid()?.iter().zip(&cfg.n_grid) {
        let seed = derive_seed(cfg.seed_root, &[tags::PROFILE, cell.index as u64]);
        rows.extend(run_figure1_profile(n, md, cell.params, seed)?);
    }
    Ok(rows)
}
