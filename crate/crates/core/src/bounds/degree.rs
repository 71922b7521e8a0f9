//! Exact-recovery and infeasibility conditions for degree-based top-k.
//!
//! Every routine takes the latent degree sequence and addresses nodes by
//! their 1-based rank after a stable non-increasing sort, so `d(1)` is the
//! largest degree and `d(k)` the smallest one inside the true top-k.

use serde::Serialize;

use super::moments::{max_quantile, noisy_degree_moments, DegreeMoments};
use crate::error::{Error, Result};
use crate::graph::DegreeSequence;
use crate::noise::NoiseParams;

/// Sufficient conditions for exact recovery of the top-k by noisy degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationReport {
    pub k: usize,
    pub i_star: usize,
    /// `d_k - d_{k+1}`.
    pub delta_bdry: f64,
    /// `d_k - d_{i*}`.
    pub delta_bulk: f64,
    /// `ln(k / delta)`.
    pub l_k: f64,
    /// `ln(k (i* - k) / delta)`.
    pub l_bdry: f64,
    /// Largest `sqrt(sigma_i^2 + sigma_j^2)` over `i <= k < j < i*`; zero
    /// when that range of `j` is empty.
    pub sigma_bar_bdry: f64,
    /// Right-hand sides the gaps are compared against.
    pub bulk_threshold: f64,
    pub boundary_threshold: f64,
    pub one_gap_threshold: f64,
    pub boundary_ok: bool,
    pub bulk_ok: bool,
    pub one_gap_ok: bool,
    /// `(1 - alpha - beta) delta_bdry / sigma_{k+1}`; infinite when the
    /// variance vanishes and the gap is positive.
    pub snr: f64,
    /// `sqrt(2 ln(n - k))`, the scale `snr` must beat.
    pub snr_reference: f64,
    /// `2 delta`: the guarantee holds with probability at least
    /// `1 - 2 delta - o(1)`.
    pub failure_budget: f64,
}

/// Separation thresholds below which recovery fails with non-vanishing
/// probability.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfeasibilityReport {
    pub delta_bulk_threshold: f64,
    pub delta_bdry_threshold: f64,
    pub delta_bdry_bar: f64,
    pub c1: f64,
    pub bulk_infeasible: bool,
    pub bdry_infeasible: bool,
    /// `delta_bdry <= delta_bdry_bar`.
    pub bdry_bar_infeasible: bool,
}

/// High-probability envelope for the largest noisy degree in the tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailEnvelope {
    pub c_upper: f64,
    pub c_lower: f64,
}

pub(crate) fn check_contrast(params: NoiseParams) -> Result<f64> {
    let c = params.contrast();
    if !(c > 0.0) {
        return Err(Error::invalid(
            "alpha + beta",
            format!(
                "must be below 1 (got {})",
                params.alpha + params.beta
            ),
        ));
    }
    Ok(c)
}

fn check_k(dseq: &DegreeSequence, k: usize, i_star: usize) -> Result<()> {
    let n = dseq.len();
    if k == 0 || k >= n {
        return Err(Error::invalid("k", format!("must lie in [1, n - 1 = {}] (got {k})", n.saturating_sub(1))));
    }
    if i_star <= k || i_star > n {
        return Err(Error::invalid(
            "i_star",
            format!("must satisfy k < i_star <= n (k = {k}, n = {n}, got {i_star})"),
        ));
    }
    Ok(())
}

fn moments_at(dseq: &DegreeSequence, rank: usize, params: NoiseParams) -> Result<DegreeMoments> {
    noisy_degree_moments(dseq.sorted(rank), dseq.len(), params)
}

/// Largest noisy-degree variance over ranks `lo..=hi`.
fn max_sigma2(dseq: &DegreeSequence, lo: usize, hi: usize, params: NoiseParams) -> Result<f64> {
    let mut best = 0.0f64;
    for r in lo..=hi {
        best = best.max(moments_at(dseq, r, params)?.sigma2);
    }
    Ok(best)
}

/// Evaluate the bulk, boundary and single-gap recovery conditions.
pub fn separation_report(
    dseq: &DegreeSequence,
    k: usize,
    i_star: usize,
    params: NoiseParams,
    delta: f64,
    c_of_n: f64,
) -> Result<SeparationReport> {
    check_k(dseq, k, i_star)?;
    let contrast = check_contrast(params)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("must lie in (0, 1) (got {delta})")));
    }
    let n = dseq.len();
    let d = |r: usize| dseq.sorted(r) as f64;

    let delta_bdry = d(k) - d(k + 1);
    let delta_bulk = d(k) - d(i_star);
    let l_k = (k as f64 / delta).ln();
    let l_bdry = ((k * (i_star - k)) as f64 / delta).ln();

    let sigma_k = moments_at(dseq, k, params)?.sigma();
    let sigma_k1 = moments_at(dseq, k + 1, params)?.sigma();
    let sigma_i = moments_at(dseq, i_star, params)?.sigma();

    let sigma_bar_bdry = if i_star > k + 1 {
        (max_sigma2(dseq, 1, k, params)? + max_sigma2(dseq, k + 1, i_star - 1, params)?).sqrt()
    } else {
        0.0
    };

    let top_term = sigma_k * (2.0 * l_k).sqrt() + 2.0 / 3.0 * l_k;
    let bulk_threshold =
        (max_quantile(n - i_star + 1, n, c_of_n, 1.0)? * sigma_i + top_term) / contrast;
    let boundary_threshold =
        ((2.0 * l_bdry).sqrt() * sigma_bar_bdry + 2.0 / 3.0 * l_bdry) / contrast;
    let one_gap_threshold = (max_quantile(n - k, n, c_of_n, 1.0)? * sigma_k1 + top_term) / contrast;

    let snr = if sigma_k1 > 0.0 {
        contrast * delta_bdry / sigma_k1
    } else if delta_bdry > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };

    Ok(SeparationReport {
        k,
        i_star,
        delta_bdry,
        delta_bulk,
        l_k,
        l_bdry,
        sigma_bar_bdry,
        bulk_threshold,
        boundary_threshold,
        one_gap_threshold,
        boundary_ok: delta_bdry >= boundary_threshold,
        bulk_ok: delta_bulk >= bulk_threshold,
        one_gap_ok: delta_bdry >= one_gap_threshold,
        snr,
        snr_reference: (2.0 * ((n - k) as f64).ln()).sqrt(),
        failure_budget: 2.0 * delta,
    })
}

/// Evaluate the bulk, boundary and boundary-dominated infeasibility
/// thresholds. Thresholds are floored at zero; a gap is never negative, so
/// the floor does not change any verdict.
pub fn infeasibility_report(
    dseq: &DegreeSequence,
    k: usize,
    i_star: usize,
    params: NoiseParams,
    c1: f64,
    c_of_n: f64,
) -> Result<InfeasibilityReport> {
    check_k(dseq, k, i_star)?;
    let contrast = check_contrast(params)?;
    if !(c1 > 0.0 && c1 < 1.0) {
        return Err(Error::invalid("c1", format!("must lie in (0, 1) (got {c1})")));
    }
    let n = dseq.len();
    let sigma_k = moments_at(dseq, k, params)?.sigma();
    let sigma_k1 = moments_at(dseq, k + 1, params)?.sigma();
    let sigma_i = moments_at(dseq, i_star, params)?.sigma();

    let delta_bulk_threshold =
        (max_quantile(n - i_star + 1, n, c_of_n, -1.0)? * sigma_i / contrast).max(0.0);
    let delta_bdry_threshold =
        c1 / contrast * 2.0 * (2.0 * (k as f64).ln()).sqrt() * sigma_k.max(sigma_k1);
    let delta_bdry_bar = (max_quantile(n - k, n, c_of_n, -1.0)? * sigma_k1 / contrast).max(0.0);

    let gap_bdry = (dseq.sorted(k) - dseq.sorted(k + 1)) as f64;
    let gap_bulk = (dseq.sorted(k) - dseq.sorted(i_star)) as f64;
    Ok(InfeasibilityReport {
        delta_bulk_threshold,
        delta_bdry_threshold,
        delta_bdry_bar,
        c1,
        bulk_infeasible: gap_bulk <= delta_bulk_threshold,
        bdry_infeasible: gap_bdry <= delta_bdry_threshold,
        bdry_bar_infeasible: gap_bdry <= delta_bdry_bar,
    })
}

/// Upper and lower envelopes for `max_{j > k}` of the noisy tail degrees.
pub fn tail_envelope(
    dseq: &DegreeSequence,
    k: usize,
    params: NoiseParams,
    c_of_n: f64,
) -> Result<TailEnvelope> {
    let n = dseq.len();
    if k == 0 || k + 3 > n {
        return Err(Error::Inapplicable(format!(
            "the tail envelope needs 1 <= k and n - k >= 3 (n = {n}, k = {k})"
        )));
    }
    let m = moments_at(dseq, k + 1, params)?;
    Ok(TailEnvelope {
        c_upper: m.mu + max_quantile(n - k, n, c_of_n, 1.0)? * m.sigma(),
        c_lower: m.mu + max_quantile(n - k, n, c_of_n, -1.0)? * m.sigma(),
    })
}

/// Smallest rank `i* > k` (up to `n - 2`) whose gap to `d_k` clears twice
/// its own Gaussian-maximum scale, `2 sqrt(2 ln(n - i* + 1)) sigma_{i*} /
/// (1 - alpha - beta)`; `k + 1` when no rank qualifies.
pub fn default_i_star(dseq: &DegreeSequence, k: usize, params: NoiseParams) -> Result<usize> {
    let n = dseq.len();
    if k == 0 || k >= n {
        return Err(Error::invalid("k", format!("must lie in [1, n - 1] (got {k})")));
    }
    let contrast = check_contrast(params)?;
    let dk = dseq.sorted(k) as f64;
    for i in k + 1..=n.saturating_sub(2) {
        let sigma = moments_at(dseq, i, params)?.sigma();
        let need = 2.0 * (2.0 * ((n - i + 1) as f64).ln()).sqrt() * sigma / contrast;
        if dk - dseq.sorted(i) as f64 >= need {
            return Ok(i);
        }
    }
    Ok(k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::moments::correction_terms;

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec())
    }

    fn staircase() -> DegreeSequence {
        // Valid degrees for n = 40: a few hubs and a flat tail.
        let mut d = vec![30, 28, 26, 12, 11];
        d.extend(std::iter::repeat(5).take(35));
        seq(&d)
    }

    #[test]
    fn noiseless_collapse() {
        let s = staircase();
        let r = separation_report(&s, 3, 5, NoiseParams::NOISELESS, 0.05, 1.0).unwrap();
        assert_eq!(r.delta_bdry, 14.0);
        assert_eq!(r.delta_bulk, 15.0);
        assert_eq!(r.sigma_bar_bdry, 0.0);
        let l_bdry = (3.0 * 2.0 / 0.05f64).ln();
        assert!((r.boundary_threshold - 2.0 / 3.0 * l_bdry).abs() < 1e-12);
        assert!(r.boundary_ok && r.bulk_ok && r.one_gap_ok);
        assert_eq!(r.snr, f64::INFINITY);
    }

    #[test]
    fn hand_evaluated_conditions() {
        let s = staircase();
        let p = NoiseParams::new(0.02, 0.05).unwrap();
        let (k, i_star, delta, c) = (3, 6, 0.1, 1.0);
        let r = separation_report(&s, k, i_star, p, delta, c).unwrap();

        let n = 40.0;
        let var = |d: f64| (n - 1.0 - d) * 0.02 * 0.98 + d * 0.05 * 0.95;
        let contrast = 0.93;
        let lk = (3.0f64 / 0.1).ln();
        let lb = (9.0f64 / 0.1).ln();
        let sbar = (var(26.0).max(var(28.0)).max(var(30.0)) + var(12.0).max(var(11.0))).sqrt();
        assert!((r.sigma_bar_bdry - sbar).abs() < 1e-12);
        let bdry = ((2.0 * lb).sqrt() * sbar + 2.0 / 3.0 * lb) / contrast;
        assert!((r.boundary_threshold - bdry).abs() < 1e-12);

        let t = correction_terms(35, 40, c).unwrap();
        let q = (2.0 * 35f64.ln()).sqrt() - t.eps1 + t.eps2;
        let bulk = (q * var(5.0).sqrt() + var(26.0).sqrt() * (2.0 * lk).sqrt() + 2.0 / 3.0 * lk) / contrast;
        assert!((r.bulk_threshold - bulk).abs() < 1e-12);
        assert_eq!(r.bulk_ok, 21.0 >= bulk);
        assert!((r.snr - contrast * 14.0 / var(12.0).sqrt()).abs() < 1e-12);
        assert!((r.failure_budget - 0.2).abs() < 1e-15);
    }

    #[test]
    fn flat_boundary_fails() {
        let s = seq(&[5, 3, 3, 3, 2, 2]);
        let p = NoiseParams::new(0.05, 0.05).unwrap();
        let r = separation_report(&s, 2, 3, p, 0.05, 1.0);
        // n - i* + 1 = 4 >= 3, so the evaluation is defined.
        let r = r.unwrap();
        assert_eq!(r.delta_bdry, 0.0);
        assert!(!r.boundary_ok && !r.one_gap_ok);
        let inf = infeasibility_report(&s, 2, 3, p, 0.5, 1.0).unwrap();
        assert!(inf.bdry_infeasible);
    }

    #[test]
    fn guards() {
        let s = staircase();
        let p = NoiseParams::new(0.6, 0.4).unwrap();
        assert!(separation_report(&s, 3, 5, p, 0.05, 1.0).is_err());
        let p = NoiseParams::new(0.01, 0.01).unwrap();
        assert!(separation_report(&s, 3, 3, p, 0.05, 1.0).is_err());
        assert!(separation_report(&s, 0, 3, p, 0.05, 1.0).is_err());
        assert!(separation_report(&s, 3, 5, p, 1.0, 1.0).is_err());
        assert!(infeasibility_report(&s, 3, 5, p, 1.0, 1.0).is_err());
        assert!(infeasibility_report(&s, 3, 5, p, 0.0, 1.0).is_err());
        // The bulk tail needs n - i* + 1 >= 3.
        assert!(separation_report(&s, 3, 39, p, 0.05, 1.0).is_err());
    }

    #[test]
    fn noiseless_thresholds_vanish() {
        let s = staircase();
        let inf = infeasibility_report(&s, 3, 5, NoiseParams::NOISELESS, 0.5, 1.0).unwrap();
        assert_eq!(inf.delta_bulk_threshold, 0.0);
        assert_eq!(inf.delta_bdry_threshold, 0.0);
        assert_eq!(inf.delta_bdry_bar, 0.0);
        assert!(!inf.bdry_infeasible && !inf.bulk_infeasible);
    }

    #[test]
    fn envelope_identity() {
        let s = staircase();
        let p = NoiseParams::new(0.03, 0.07).unwrap();
        let env = tail_envelope(&s, 3, p, 1.5).unwrap();
        let sigma = noisy_degree_moments(12, 40, p).unwrap().sigma();
        let eps2 = 1.5 / 40f64.ln().sqrt();
        assert!((env.c_upper - env.c_lower - 2.0 * eps2 * sigma).abs() < 1e-12);

        let env = tail_envelope(&s, 3, NoiseParams::NOISELESS, 1.5).unwrap();
        assert_eq!((env.c_upper, env.c_lower), (12.0, 12.0));
        assert!(tail_envelope(&s, 38, p, 1.0).is_err());
    }

    #[test]
    fn i_star_search() {
        let s = staircase();
        assert_eq!(default_i_star(&s, 3, NoiseParams::NOISELESS).unwrap(), 4);
        let p = NoiseParams::new(0.05, 0.05).unwrap();
        let i = default_i_star(&s, 3, p).unwrap();
        assert!(i > 3);
        let flat = seq(&[4; 10]);
        assert_eq!(default_i_star(&flat, 2, p).unwrap(), 3);
    }
}
