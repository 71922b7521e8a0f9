use serde::Serialize;

use super::degree::check_contrast;
use super::moments::eps2;
use super::normal::normal_cdf;
use crate::centrality::{ScoreVector, TopKSet};
use crate::error::{Error, Result};
use crate::noise::NoiseParams;

/// Per-realisation bounds on the Hamming distance between the true top-k
/// and any top-k selection by the noisy scores, at threshold `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HammingBounds {
    pub lower: usize,
    pub upper: usize,
    pub t: f64,
}

/// Bounds at `t = ` the `(k+1)`-th largest noisy score (`-inf` when `k = n`).
pub fn hamming_bounds_realization(
    true_topk: &TopKSet,
    noisy_scores: &ScoreVector,
    k: usize,
) -> Result<HammingBounds> {
    let n = noisy_scores.len();
    if true_topk.k() != k {
        return Err(Error::invalid(
            "k",
            format!("true set has {} members, expected {k}", true_topk.k()),
        ));
    }
    if k > n {
        return Err(Error::invalid("k", format!("exceeds n = {n}")));
    }
    let t = if k == n {
        f64::NEG_INFINITY
    } else {
        noisy_scores.sorted_desc()[k]
    };
    hamming_bounds_at(true_topk, noisy_scores.scores(), t)
}

/// Bounds at an arbitrary threshold. They bracket the realised distance
/// whenever `t` lies between the `(k+1)`-th and `k`-th largest scores.
pub fn hamming_bounds_at(true_topk: &TopKSet, noisy: &[f64], t: f64) -> Result<HammingBounds> {
    let n = noisy.len();
    if let Some(&bad) = true_topk.members().iter().find(|&&i| i >= n) {
        return Err(Error::invalid(
            "true_topk",
            format!("node {bad} outside score vector of length {n}"),
        ));
    }
    let c = boundary_counts(&true_topk.mask(n), noisy, t);
    Ok(HammingBounds {
        lower: 2 * c.in_below.max(c.out_above),
        upper: 2 * c.in_at_or_below.min(c.out_at_or_above),
        t,
    })
}

/// Members of the true set at or below `t` and non-members at or above it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct BoundaryCounts {
    pub in_below: usize,
    pub in_at_or_below: usize,
    pub out_above: usize,
    pub out_at_or_above: usize,
}

pub(crate) fn boundary_counts(mask: &[bool], noisy: &[f64], t: f64) -> BoundaryCounts {
    let mut c = BoundaryCounts::default();
    for (&inside, &s) in mask.iter().zip(noisy) {
        if inside {
            c.in_below += usize::from(s < t);
            c.in_at_or_below += usize::from(s <= t);
        } else {
            c.out_above += usize::from(s > t);
            c.out_at_or_above += usize::from(s >= t);
        }
    }
    c
}

/// The variance constant `c_n(alpha, beta)` for `ER(n, p)`, `q = 1 - p`:
/// `[q - r] alpha(1-alpha) + [p - r] beta(1-beta)`, `r = sqrt(2pq ln n / n)`.
pub fn er_cn(n: usize, p: f64, params: NoiseParams) -> f64 {
    let q = 1.0 - p;
    let nf = n as f64;
    let r = (2.0 * p * q * nf.ln() / nf).sqrt();
    let (a, b) = (params.alpha, params.beta);
    (q - r) * a * (1.0 - a) + (p - r) * b * (1.0 - b)
}

/// Leading-order lower bound on `E[d_H] / 2` for degree top-k on
/// `ER(n, p)`: `k Phi(-2 C(n) / (sqrt(c_n) sqrt(ln n)))`.
pub fn er_expected_hamming_lower_bound(
    n: usize,
    p: f64,
    params: NoiseParams,
    k: usize,
    c_of_n: f64,
) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid("p", format!("must lie in (0, 1) (got {p})")));
    }
    check_contrast(params)?;
    if k == 0 || k > n {
        return Err(Error::invalid("k", format!("must lie in [1, n] (got {k})")));
    }
    eps2(n, c_of_n)?;
    let cn = er_cn(n, p, params);
    if !(cn > 0.0) {
        return Err(Error::Inapplicable(format!(
            "c_n = {cn} is not positive"
        )));
    }
    let z = -2.0 * c_of_n / (cn.sqrt() * (n as f64).ln().sqrt());
    Ok(k as f64 * normal_cdf(z))
}
