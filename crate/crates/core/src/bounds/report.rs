use serde::Serialize;

use super::degree::{
    default_i_star, infeasibility_report, separation_report, tail_envelope, InfeasibilityReport,
    SeparationReport, TailEnvelope,
};
use super::evec::{evec_bound, evec_gap_check, EvecBound};
use super::hamming::{er_cn, er_expected_hamming_lower_bound};
use super::moments::{default_c_of_n, noisy_degree_moments, DegreeMoments};
use super::regimes::{rate_diagnostics, RateDiagnostics};
use crate::centrality::{spectral_top2, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::NoiseParams;

pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_C1: f64 = 0.5;

/// Inputs to [`bound_report`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundConfig {
    pub k: usize,
    pub params: NoiseParams,
    pub delta: f64,
    pub c1: f64,
    /// `None` selects `max(1, ln ln n)`.
    pub c_of_n: Option<f64>,
    /// `None` selects the default search rule.
    pub i_star: Option<usize>,
    /// Offset `b` when the graph is known to be a PA graph.
    pub pa_offset: Option<f64>,
}

impl BoundConfig {
    pub fn new(k: usize, params: NoiseParams) -> Self {
        BoundConfig {
            k,
            params,
            delta: DEFAULT_DELTA,
            c1: DEFAULT_C1,
            c_of_n: None,
            i_star: None,
            pa_offset: None,
        }
    }
}

/// Coarse verdict derived from the separation and infeasibility checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    RecoverableLikely,
    InfeasibleBoundary,
    InfeasibleBulk,
    Indeterminate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::RecoverableLikely => "recoverable-likely",
            Regime::InfeasibleBoundary => "infeasible-boundary",
            Regime::InfeasibleBulk => "infeasible-bulk",
            Regime::Indeterminate => "indeterminate",
        }
    }

    pub fn classify(sep: &SeparationReport, inf: &InfeasibilityReport) -> Regime {
        if (sep.boundary_ok && sep.bulk_ok) || sep.one_gap_ok {
            Regime::RecoverableLikely
        } else if inf.bdry_infeasible || inf.bdry_bar_infeasible {
            Regime::InfeasibleBoundary
        } else if inf.bulk_infeasible {
            Regime::InfeasibleBulk
        } else {
            Regime::Indeterminate
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedMoments {
    pub rank: usize,
    pub degree: usize,
    #[serde(flatten)]
    pub moments: DegreeMoments,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErPlugin {
    /// Edge density used as `p`.
    pub p_hat: f64,
    pub c_n: f64,
    /// Lower bound on `E[d_H] / 2`; absent when `c_n <= 0`.
    pub half_hamming_lower_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub lambda1: f64,
    pub lambda2: f64,
    pub gap: f64,
    pub x_inf: f64,
    pub converged: bool,
    pub lambda2_converged: bool,
    pub degenerate: bool,
    pub connected: bool,
}

/// Every closed-form quantity evaluated for one graph and noise level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub c1: f64,
    pub c_of_n: f64,
    pub i_star: usize,
    /// `"user"` or `"default-search"`.
    pub i_star_rule: &'static str,
    pub moments: Vec<RankedMoments>,
    pub separation: SeparationReport,
    pub infeasibility: InfeasibilityReport,
    pub tail_envelope: TailEnvelope,
    pub er_plugin: Option<ErPlugin>,
    pub spectral: SpectralSummary,
    pub evec_bound: EvecBound,
    pub evec_topk_gap_ok: bool,
    pub rates: RateDiagnostics,
    pub regime: Regime,
    pub notes: Vec<String>,
}

/// Evaluate the full set of degree and eigenvector bounds for `g`.
pub fn bound_report(g: &Graph, cfg: &BoundConfig) -> Result<BoundReport> {
    let n = g.n();
    let k = cfg.k;
    if k == 0 || k + 3 > n {
        return Err(Error::invalid(
            "k",
            format!("needs 1 <= k and n - k >= 3 (n = {n}, k = {k})"),
        ));
    }
    let params = cfg.params;
    let c_of_n = cfg.c_of_n.unwrap_or_else(|| default_c_of_n(n));
    let dseq = g.degrees();
    let (i_star, i_star_rule) = match cfg.i_star {
        Some(i) => (i, "user"),
        None => (default_i_star(&dseq, k, params)?, "default-search"),
    };

    let separation = separation_report(&dseq, k, i_star, params, cfg.delta, c_of_n)?;
    let infeasibility = infeasibility_report(&dseq, k, i_star, params, cfg.c1, c_of_n)?;
    let envelope = tail_envelope(&dseq, k, params, c_of_n)?;

    let mut moments = Vec::new();
    let mut ranks = vec![1, k, k + 1, i_star];
    ranks.dedup();
    for r in ranks {
        let d = dseq.sorted(r);
        moments.push(RankedMoments {
            rank: r,
            degree: d,
            moments: noisy_degree_moments(d, n, params)?,
        });
    }

    let p_hat = g.edge_count() as f64 / g.pair_count() as f64;
    let er_plugin = if p_hat > 0.0 && p_hat < 1.0 {
        let c_n = er_cn(n, p_hat, params);
        let lb = match er_expected_hamming_lower_bound(n, p_hat, params, k, c_of_n) {
            Ok(v) => Some(v),
            Err(Error::Inapplicable(_)) => None,
            Err(e) => return Err(e),
        };
        Some(ErPlugin {
            p_hat,
            c_n,
            half_hamming_lower_bound: lb,
        })
    } else {
        None
    };

    let spec = spectral_top2(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let bound = evec_bound(&spec, spec.lambda1.abs(), spec.x_inf(), n, params)?;
    let evec_topk_gap_ok = evec_gap_check(&spec, k, &bound)?;
    let rates = rate_diagnostics(n, params, cfg.pa_offset)?;

    let mut notes = vec![
        "leading-order evaluation: o(1) remainder terms are dropped".to_string(),
        format!(
            "exact-recovery conditions guarantee success with probability at least 1 - {} - o(1)",
            2.0 * cfg.delta
        ),
    ];
    if !spec.converged || !spec.lambda2_converged {
        notes.push("power iteration hit its iteration cap; spectral quantities are approximate".into());
    }
    if spec.degenerate {
        notes.push("lambda1 - lambda2 <= 1e-8: principal eigenvector is not unique".into());
    }
    if !spec.connected {
        notes.push("graph is disconnected; eigenvector is supported on the dominant component".into());
    }

    let regime = Regime::classify(&separation, &infeasibility);
    Ok(BoundReport {
        n,
        edges: g.edge_count(),
        mean_degree: g.mean_degree(),
        k,
        alpha: params.alpha,
        beta: params.beta,
        delta: cfg.delta,
        c1: cfg.c1,
        c_of_n,
        i_star,
        i_star_rule,
        moments,
        separation,
        infeasibility,
        tail_envelope: envelope,
        er_plugin,
        spectral: SpectralSummary {
            lambda1: spec.lambda1,
            lambda2: spec.lambda2,
            gap: spec.gap(),
            x_inf: spec.x_inf(),
            converged: spec.converged,
            lambda2_converged: spec.lambda2_converged,
            degenerate: spec.degenerate,
            connected: spec.connected,
        },
        evec_bound: bound,
        evec_topk_gap_ok,
        rates,
        regime,
        notes,
    })
}
