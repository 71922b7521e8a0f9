use serde::Serialize;

use crate::centrality::SpectralPair;
use crate::error::{Error, Result};
use crate::noise::NoiseParams;

/// Entrywise perturbation bound for the principal eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvecBound {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    /// Bound on `||x - x_noisy||_inf`; infinite unless `applicable`.
    pub eps_n: f64,
    /// `lambda1 - lambda2 > 2 B3 + 4 B2`.
    pub gap_condition_ok: bool,
    /// Gap condition holds and `lambda1 > B3`.
    pub applicable: bool,
}

/// Evaluate `B1`, `B2`, `B3` and `eps_n` for a latent spectrum `spec`.
pub fn evec_bound(
    spec: &SpectralPair,
    spectral_norm_a: f64,
    x_inf: f64,
    n: usize,
    params: NoiseParams,
) -> Result<EvecBound> {
    if n < 2 {
        return Err(Error::invalid("n", "the eigenvector bound needs n >= 2"));
    }
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    let ln_n = nf.ln();
    let s = a + b;
    // (a+b) - (a-b)^2 = a(1-a) + b(1-b) + 2ab >= 0; clamp rounding only.
    let spread = (s - (a - b).powi(2)).max(0.0);

    let b1 = s * nf.sqrt() + 5.0 * (spread * ln_n).sqrt();
    let b2 = (2.0 * nf * s + ln_n).sqrt();
    let b3 = 5.0 * (nf * s).sqrt() + a * nf + s * spectral_norm_a;

    let (l1, l2) = (spec.lambda1, spec.lambda2);
    let gap = l1 - l2;
    let gap_condition_ok = gap > 2.0 * b3 + 4.0 * b2;
    let applicable = gap_condition_ok && l1 - b3 > 0.0;
    let eps_n = if applicable {
        let den = gap - 2.0 * b3 - 4.0 * b2;
        (gap - 2.0 * b3 - 2.0 * b2) / den
            * (l2 / l1 + x_inf)
            * (2.0 * b3 / gap + b3 / (l1 - b3))
            + (2.0 * b1 + 2.0 * b2 * x_inf) / den
    } else {
        f64::INFINITY
    };
    Ok(EvecBound {
        b1,
        b2,
        b3,
        eps_n,
        gap_condition_ok,
        applicable,
    })
}

/// Whether the eigenvector gap at the top-k boundary exceeds `2 eps_n`.
pub fn evec_gap_check(spec: &SpectralPair, k: usize, bound: &EvecBound) -> Result<bool> {
    let n = spec.x.len();
    if k == 0 || k >= n {
        return Err(Error::invalid("k", format!("must lie in [1, n - 1 = {}] (got {k})", n - 1)));
    }
    if !bound.applicable || !bound.eps_n.is_finite() {
        return Ok(false);
    }
    let x = spec.x.sorted_desc();
    Ok(x[k - 1] - x[k] > 2.0 * bound.eps_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{spectral_top2, DEFAULT_MAX_ITER, DEFAULT_TOL};
    use crate::graph::Graph;

    fn star(n: usize) -> SpectralPair {
        let g = Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap();
        spectral_top2(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap()
    }

    fn fake(l1: f64, l2: f64) -> SpectralPair {
        let mut s = star(5);
        s.lambda1 = l1;
        s.lambda2 = l2;
        s
    }

    #[test]
    fn noiseless_collapse() {
        let n = 50;
        let s = fake(100.0, 10.0);
        let b = evec_bound(&s, 100.0, 0.3, n, NoiseParams::NOISELESS).unwrap();
        assert_eq!((b.b1, b.b3), (0.0, 0.0));
        let b2 = (n as f64).ln().sqrt();
        assert!((b.b2 - b2).abs() < 1e-15);
        assert!(b.applicable);
        let expect = 2.0 * b2 * 0.3 / (90.0 - 4.0 * b2);
        assert!((b.eps_n - expect).abs() < 1e-14);
    }

    #[test]
    fn hand_evaluated() {
        let (a, bt, n) = (0.01, 0.03, 400usize);
        let nf = n as f64;
        let s = fake(200.0, 20.0);
        let b = evec_bound(&s, 200.0, 0.2, n, NoiseParams::new(a, bt).unwrap()).unwrap();
        let b1 = 0.04 * nf.sqrt() + 5.0 * ((0.04 - 0.0004) * nf.ln()).sqrt();
        let b2 = (2.0 * nf * 0.04 + nf.ln()).sqrt();
        let b3 = 5.0 * (nf * 0.04).sqrt() + a * nf + 0.04 * 200.0;
        assert!((b.b1 - b1).abs() < 1e-12);
        assert!((b.b2 - b2).abs() < 1e-12);
        assert!((b.b3 - b3).abs() < 1e-12);
        let den = 180.0 - 2.0 * b3 - 4.0 * b2;
        let eps = (180.0 - 2.0 * b3 - 2.0 * b2) / den
            * (0.1 + 0.2)
            * (2.0 * b3 / 180.0 + b3 / (200.0 - b3))
            + (2.0 * b1 + 0.4 * b2) / den;
        assert!((b.eps_n - eps).abs() < 1e-12);
    }

    #[test]
    fn gap_violation_is_flagged() {
        let s = star(5);
        let b = evec_bound(&s, s.lambda1, s.x_inf(), 5, NoiseParams::new(0.1, 0.1).unwrap()).unwrap();
        assert!(!b.gap_condition_ok && !b.applicable);
        assert_eq!(b.eps_n, f64::INFINITY);
        assert!(!evec_gap_check(&s, 1, &b).unwrap());
    }

    #[test]
    fn star_gap_check() {
        let s = star(5);
        let b = EvecBound {
            b1: 0.0,
            b2: 0.0,
            b3: 0.0,
            eps_n: 0.1,
            gap_condition_ok: true,
            applicable: true,
        };
        assert!(evec_gap_check(&s, 1, &b).unwrap());
        // Leaves are tied: no gap at k = 2.
        assert!(!evec_gap_check(&s, 2, &b).unwrap());
        assert!(evec_gap_check(&s, 5, &b).is_err());
        assert!(evec_gap_check(&s, 0, &b).is_err());
    }

    #[test]
    fn b_terms_nonnegative_on_grid() {
        let s = star(5);
        for i in 0..=10 {
            for j in 0..=10 {
                let p = NoiseParams::new(i as f64 / 10.0, j as f64 / 10.0).unwrap();
                let b = evec_bound(&s, 2.0, 0.7, 2, p).unwrap();
                assert!(b.b1 >= 0.0 && b.b2 >= 0.0 && b.b3 >= 0.0);
            }
        }
    }
}
