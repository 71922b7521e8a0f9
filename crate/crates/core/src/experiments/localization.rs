use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, ExperimentKind};
use super::stats::{quantile, Moments};
use super::{generate_latent, tags};
use crate::centrality::{spectral_top2, SpectralPair, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::derive_seed;

/// Hub-localisation statistics of one graph's principal eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalizationStats {
    /// Maximum-degree vertex (smallest id among ties).
    pub hub: usize,
    /// More than one vertex attains the maximum degree.
    pub hub_tie: bool,
    pub x_h: f64,
    /// Eigenvector mass outside the hub and its neighbours.
    pub m_out: f64,
    /// `x_h - max` over the hub's neighbours (`x_h` if it has none).
    pub gap: f64,
}

pub fn localization_stats(g: &Graph, spec: &SpectralPair) -> LocalizationStats {
    let deg = g.degree_vec();
    let max = deg.iter().copied().max().unwrap_or(0);
    let hub = deg.iter().position(|&d| d == max).unwrap_or(0);
    let hub_tie = deg.iter().filter(|&&d| d == max).count() > 1;

    let x = spec.x.scores();
    let adj = g.adjacency();
    let mut near = vec![false; g.n()];
    near[hub] = true;
    let mut best_neighbor = f64::NEG_INFINITY;
    for &v in adj.neighbors(hub) {
        near[v] = true;
        best_neighbor = best_neighbor.max(x[v]);
    }
    let m_out = x
        .iter()
        .zip(&near)
        .filter(|(_, &inside)| !inside)
        .map(|(v, _)| v * v)
        .sum();
    let x_h = x[hub];
    LocalizationStats {
        hub,
        hub_tie,
        x_h,
        m_out,
        gap: if best_neighbor.is_finite() { x_h - best_neighbor } else { x_h },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizationRow {
    pub n: usize,
    pub reps: usize,
    pub x_h_mean: f64,
    pub x_h_se: f64,
    pub x_h_q10: f64,
    pub x_h_q50: f64,
    pub x_h_q90: f64,
    pub m_out_mean: f64,
    pub m_out_se: f64,
    pub m_out_q10: f64,
    pub m_out_q50: f64,
    pub m_out_q90: f64,
    pub gap_mean: f64,
    pub gap_se: f64,
    pub gap_q10: f64,
    pub gap_q50: f64,
    pub gap_q90: f64,
    pub hub_ties: usize,
    pub degenerate: usize,
    pub not_converged: usize,
}

fn summary(values: &[f64]) -> (f64, f64, [f64; 3]) {
    let mut m = Moments::default();
    values.iter().for_each(|&v| m.push(v));
    let q = [0.1, 0.5, 0.9].map(|p| quantile(values, p));
    (m.mean(), m.se(), q)
}

/// Eigenvector localisation on PA graphs with `m = 1`; one row per `n`,
/// `graphs_per_point` networks each.
pub fn run_localization(cfg: &ExperimentConfig) -> Result<Vec<LocalizationRow>> {
    cfg.validate()?;
    if cfg.kind != ExperimentKind::Localization {
        return Err(Error::Config {
            field: "kind".into(),
            message: format!("expected localization, got {}", cfg.kind.as_str()),
        });
    }
    let model = cfg.model.expect("validated");
    let mut rows = Vec::new();
    for (idx, &n) in cfg.n_grid.iter().enumerate() {
        let trials = (0..cfg.graphs_per_point)
            .into_par_iter()
            .map(|rep| {
                let seed = derive_seed(cfg.seed_root, &[tags::LOCALIZATION, idx as u64, rep as u64]);
                let g = generate_latent(&model, n, seed)?;
                let spec = spectral_top2(&g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
                Ok((localization_stats(&g, &spec), spec.degenerate, spec.converged))
            })
            .collect::<Result<Vec<_>>>()?;

        let pick = |f: fn(&LocalizationStats) -> f64| trials.iter().map(|(s, _, _)| f(s)).collect::<Vec<_>>();
        let (x_h_mean, x_h_se, xq) = summary(&pick(|s| s.x_h));
        let (m_out_mean, m_out_se, mq) = summary(&pick(|s| s.m_out));
        let (gap_mean, gap_se, gq) = summary(&pick(|s| s.gap));
        rows.push(LocalizationRow {
            n,
            reps: trials.len(),
            x_h_mean,
            x_h_se,
            x_h_q10: xq[0],
            x_h_q50: xq[1],
            x_h_q90: xq[2],
            m_out_mean,
            m_out_se,
            m_out_q10: mq[0],
            m_out_q50: mq[1],
            m_out_q90: mq[2],
            gap_mean,
            gap_se,
            gap_q10: gq[0],
            gap_q50: gq[1],
            gap_q90: gq[2],
            hub_ties: trials.iter().filter(|(s, _, _)| s.hub_tie).count(),
            degenerate: trials.iter().filter(|(_, d, _)| *d).count(),
            not_converged: trials.iter().filter(|(_, _, c)| !*c).count(),
        });
    }
    Ok(rows)
}
