use rayon::prelude::*;
use serde::Serialize;

use super::config::{CentralitySpec, ExperimentConfig, ExperimentKind, GridPoint, ModelSpec, NoiseSpec};
use super::stats::{two_level, Moments};
use super::{generate_latent, tags};
use crate::bounds::hamming::boundary_counts;
use crate::bounds::{default_c_of_n, er_expected_hamming_lower_bound};
use crate::centrality::topk::top_k_values;
use crate::centrality::{principal_eigenpair, TopKSet, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::centrality::{hamming, jaccard};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{apply_noise, NoiseParams};
use crate::rng::derive_seed;

/// Aggregated results for one grid cell. Hamming quantities are on the
/// `d_H / 2` scale.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub x_value: f64,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Centrality whose top-k set drives the Hamming columns.
    pub centrality: &'static str,
    pub trials: usize,
    pub excluded: usize,
    pub mean_half_hamming: f64,
    pub se_half_hamming: f64,
    /// Mean of the per-realisation bounds.
    pub mean_lower_bound: f64,
    pub se_lower_bound: f64,
    pub mean_upper_bound: f64,
    pub se_upper_bound: f64,
    /// Per-graph bounds built from node exceedance frequencies.
    pub mean_lower_bound_expect: f64,
    pub se_lower_bound_expect: f64,
    pub mean_upper_bound_expect: f64,
    pub se_upper_bound_expect: f64,
    pub theory_lower: Option<f64>,
    pub exact_recovery_rate: f64,
    pub se_exact_recovery_rate: f64,
    pub jaccard_degree: Option<f64>,
    pub se_jaccard_degree: Option<f64>,
    pub jaccard_evec: Option<f64>,
    pub se_jaccard_evec: Option<f64>,
    /// Fraction of noisy observations that are disconnected.
    pub disconnected_fraction: f64,
}

#[derive(Default)]
struct GraphTally {
    half: Moments,
    exact: Moments,
    lower: Moments,
    upper: Moments,
    expect_sums: [f64; 4],
    jac_deg: Moments,
    jac_evec: Moments,
    excluded: usize,
    disconnected: usize,
}

struct Truth {
    primary: TopKSet,
    degree: Option<TopKSet>,
    evec: Option<TopKSet>,
}

fn degree_values(g: &Graph) -> Vec<f64> {
    g.degree_vec().into_iter().map(|d| d as f64).collect()
}

/// Eigenvector scores, or `None` when power iteration did not converge.
fn evec_values(g: &Graph) -> Result<Option<(Vec<f64>, bool)>> {
    let p = principal_eigenpair(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    Ok(p.converged.then(|| (p.x.into_vec(), p.connected)))
}

fn check_sandwich(truth: &TopKSet, scores: &[f64], k: usize, d_h: usize) -> Result<[usize; 4]> {
    let mut sorted = scores.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let t_hi = sorted[k - 1];
    let t_lo = sorted.get(k).copied().unwrap_or(f64::NEG_INFINITY);
    let mask = truth.mask(scores.len());
    let mut at_lo = [0; 4];
    for (i, t) in [t_lo, t_hi].into_iter().enumerate() {
        let c = boundary_counts(&mask, scores, t);
        let lower = 2 * c.in_below.max(c.out_above);
        let upper = 2 * c.in_at_or_below.min(c.out_at_or_above);
        if !(lower <= d_h && d_h <= upper) {
            return Err(Error::Invariant(format!(
                "Hamming sandwich violated at t = {t}: {lower} <= {d_h} <= {upper} fails"
            )));
        }
        if i == 0 {
            at_lo = [c.in_below, c.out_above, c.in_at_or_below, c.out_at_or_above];
        }
    }
    Ok(at_lo)
}

fn run_graph(cfg: &ExperimentConfig, model: &ModelSpec, cell: &GridPoint, gi: usize) -> Result<GraphTally> {
    let root = cfg.seed_root;
    let (g_idx, gi) = (cell.index as u64, gi as u64);
    let k = cfg.k;
    let draws = cfg.noise_draws_per_graph;
    let mut tally = GraphTally::default();
    let latent = generate_latent(model, cell.n, derive_seed(root, &[tags::LATENT, g_idx, gi]))?;

    // One tie-breaking stream per latent graph, shared by the true and the
    // noisy rankings.
    let tie = derive_seed(root, &[tags::TIE, g_idx, gi]);
    let tie_evec = derive_seed(root, &[tags::TIE_EVEC, g_idx, gi]);
    let degree = if cfg.centrality.uses_degree() {
        Some(top_k_values(&degree_values(&latent), k, tie)?)
    } else {
        None
    };
    let evec = if cfg.centrality.uses_eigenvector() {
        match evec_values(&latent)? {
            Some((x, _)) => Some(top_k_values(&x, k, tie_evec)?),
            None => {
                tally.excluded = draws;
                return Ok(tally);
            }
        }
    } else {
        None
    };
    let truth = Truth {
        primary: degree.clone().or_else(|| evec.clone()).expect("some centrality is configured"),
        degree,
        evec,
    };

    for d in 0..draws as u64 {
        let observed = apply_noise(&latent, cell.params, derive_seed(root, &[tags::NOISE, g_idx, gi, d]));
        let noisy_evec = if truth.evec.is_some() {
            match evec_values(&observed)? {
                Some(v) => Some(v),
                None => {
                    tally.excluded += 1;
                    continue;
                }
            }
        } else {
            None
        };

        let mut primary_scores = None;
        if let Some(true_deg) = &truth.degree {
            let s = degree_values(&observed);
            let est = top_k_values(&s, k, tie)?;
            tally.jac_deg.push(jaccard(true_deg, &est));
            primary_scores = Some((s, est));
        }
        if let (Some(true_ev), Some((x, connected))) = (&truth.evec, noisy_evec) {
            let est = top_k_values(&x, k, tie_evec)?;
            tally.jac_evec.push(jaccard(true_ev, &est));
            tally.disconnected += usize::from(!connected);
            if primary_scores.is_none() {
                primary_scores = Some((x, est));
            }
        } else if !observed.is_connected() {
            tally.disconnected += 1;
        }

        let (scores, est) = primary_scores.expect("some centrality is configured");
        let d_h = hamming(&truth.primary, &est)?;
        let c = check_sandwich(&truth.primary, &scores, k, d_h)?;
        tally.half.push(d_h as f64 / 2.0);
        tally.exact.push(f64::from(u8::from(d_h == 0)));
        tally.lower.push(c[0].max(c[1]) as f64);
        tally.upper.push(c[2].min(c[3]) as f64);
        for (acc, v) in tally.expect_sums.iter_mut().zip(c) {
            *acc += v as f64;
        }
    }
    Ok(tally)
}

fn theory_curve(cfg: &ExperimentConfig, model: &ModelSpec, cell: &GridPoint) -> Option<f64> {
    let ModelSpec::Er { p } = *model else { return None };
    if !cfg.centrality.uses_degree() {
        return None;
    }
    let c = cfg.c_of_n.unwrap_or_else(|| default_c_of_n(cell.n));
    er_expected_hamming_lower_bound(cell.n, p, cell.params, cfg.k, c).ok()
}

fn summarise(cfg: &ExperimentConfig, model: &ModelSpec, cell: &GridPoint, tallies: &[GraphTally]) -> SummaryRow {
    let collect = |f: fn(&GraphTally) -> Moments| tallies.iter().map(f).collect::<Vec<_>>();
    let (half, se_half) = two_level(&collect(|t| t.half));
    let (exact, se_exact) = two_level(&collect(|t| t.exact));
    let (lower, se_lower) = two_level(&collect(|t| t.lower));
    let (upper, se_upper) = two_level(&collect(|t| t.upper));

    let mut lo_exp = Moments::default();
    let mut up_exp = Moments::default();
    for t in tallies.iter().filter(|t| t.half.count > 0) {
        let m = t.half.count as f64;
        let e = t.expect_sums.map(|s| s / m);
        lo_exp.push(e[0].max(e[1]));
        up_exp.push(e[2].min(e[3]));
    }
    let exp_se = |m: &Moments| if m.count >= 2 { m.se() } else { 0.0 };

    let optional = |f: fn(&GraphTally) -> Moments, used: bool| {
        if used {
            let (m, se) = two_level(&collect(f));
            (Some(m), Some(se))
        } else {
            (None, None)
        }
    };
    let (jd, se_jd) = optional(|t| t.jac_deg, cfg.centrality.uses_degree());
    let (je, se_je) = optional(|t| t.jac_evec, cfg.centrality.uses_eigenvector());

    let trials: usize = tallies.iter().map(|t| t.half.count).sum();
    let disconnected: usize = tallies.iter().map(|t| t.disconnected).sum();
    SummaryRow {
        x_value: cell.x_value,
        n: cell.n,
        alpha: cell.params.alpha,
        beta: cell.params.beta,
        centrality: if cfg.centrality.uses_degree() { "degree" } else { "eigenvector" },
        trials,
        excluded: tallies.iter().map(|t| t.excluded).sum(),
        mean_half_hamming: half,
        se_half_hamming: se_half,
        mean_lower_bound: lower,
        se_lower_bound: se_lower,
        mean_upper_bound: upper,
        se_upper_bound: se_upper,
        mean_lower_bound_expect: lo_exp.mean(),
        se_lower_bound_expect: exp_se(&lo_exp),
        mean_upper_bound_expect: up_exp.mean(),
        se_upper_bound_expect: exp_se(&up_exp),
        theory_lower: theory_curve(cfg, model, cell),
        exact_recovery_rate: exact,
        se_exact_recovery_rate: se_exact,
        jaccard_degree: jd,
        se_jaccard_degree: se_jd,
        jaccard_evec: je,
        se_jaccard_evec: se_je,
        disconnected_fraction: if trials == 0 { 0.0 } else { disconnected as f64 / trials as f64 },
    }
}

/// Run a top-k recovery study: one row per grid cell, in grid order.
pub fn run_topk_experiment(cfg: &ExperimentConfig) -> Result<Vec<SummaryRow>> {
    cfg.validate()?;
    if cfg.kind != ExperimentKind::Topk {
        return Err(Error::Config {
            field: "kind".into(),
            message: format!("expected topk, got {}", cfg.kind.as_str()),
        });
    }
    let model = cfg.model.expect("validated");
    let mut rows = Vec::new();
    for cell in cfg.grid()? {
        let tallies = (0..cfg.graphs_per_point)
            .into_par_iter()
            .map(|gi| run_graph(cfg, &model, &cell, gi))
            .collect::<Result<Vec<_>>>()?;
        rows.push(summarise(cfg, &model, &cell, &tallies));
    }
    Ok(rows)
}

/// Degree versus eigenvector top-k overlap on linear PA graphs (`b = 1`)
/// across a list of noise levels.
pub fn run_jaccard_comparison(
    n: usize,
    m: usize,
    k: usize,
    noise_grid: &[NoiseParams],
    graphs: usize,
    draws: usize,
    seed_root: u64,
) -> Result<Vec<SummaryRow>> {
    let cfg = ExperimentConfig {
        name: "jaccard".into(),
        kind: ExperimentKind::Topk,
        model: Some(ModelSpec::Pa { m, b: 1.0 }),
        k,
        n_grid: vec![n],
        noise: NoiseSpec {
            alpha: None,
            beta: None,
            levels: Some(noise_grid.iter().map(|p| [p.alpha, p.beta]).collect()),
        },
        graphs_per_point: graphs,
        noise_draws_per_graph: draws,
        seed_root,
        centrality: CentralitySpec::Both,
        c_of_n: None,
        mean_degree: None,
    };
    run_topk_experiment(&cfg)
}
