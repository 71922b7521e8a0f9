use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::NoiseParams;

/// Mean and variance of a node's observed degree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeMoments {
    pub mu: f64,
    pub sigma2: f64,
}

impl DegreeMoments {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

/// Moments of the noisy degree of a node with latent degree `d` in an
/// `n`-node graph: a sum of `n - 1 - d` Bernoulli(alpha) and `d`
/// Bernoulli(1 - beta) indicators.
pub fn noisy_degree_moments(d: usize, n: usize, params: NoiseParams) -> Result<DegreeMoments> {
    if n == 0 || d > n - 1 {
        return Err(Error::invalid(
            "d",
            format!("degree {d} impossible in a graph on {n} nodes"),
        ));
    }
    let (a, b) = (params.alpha, params.beta);
    let absent = (n - 1 - d) as f64;
    let present = d as f64;
    Ok(DegreeMoments {
        mu: absent * a + present * (1.0 - b),
        sigma2: absent * a * (1.0 - a) + present * b * (1.0 - b),
    })
}

/// Second-order corrections to the Gaussian maximum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrectionTerms {
    /// `ln ln m / (2 sqrt(2 ln m))`.
    pub eps1: f64,
    /// `C(n) / sqrt(ln n)`.
    pub eps2: f64,
    pub c_of_n: f64,
}

/// The growth function used when none is supplied: `max(1, ln ln n)`.
pub fn default_c_of_n(n: usize) -> f64 {
    (n as f64).ln().ln().max(1.0)
}

pub(crate) fn eps1(m: usize) -> Result<f64> {
    if m < 3 {
        return Err(Error::Inapplicable(format!(
            "the extreme-value correction needs at least 3 nodes in the tail (got {m})"
        )));
    }
    let l = (m as f64).ln();
    Ok(l.ln() / (2.0 * (2.0 * l).sqrt()))
}

pub(crate) fn eps2(n: usize, c_of_n: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Inapplicable(format!(
            "the slack term needs n >= 3 (got {n})"
        )));
    }
    if !(c_of_n > 0.0) || !c_of_n.is_finite() {
        return Err(Error::invalid(
            "c_of_n",
            format!("must be positive and finite (got {c_of_n})"),
        ));
    }
    Ok(c_of_n / (n as f64).ln().sqrt())
}

/// `eps1(m)` for a tail of `m` nodes and `eps2(n)` with growth `c_of_n`.
pub fn correction_terms(m: usize, n: usize, c_of_n: f64) -> Result<CorrectionTerms> {
    Ok(CorrectionTerms {
        eps1: eps1(m)?,
        eps2: eps2(n, c_of_n)?,
        c_of_n,
    })
}

/// `sqrt(2 ln m) - eps1(m) + sign * eps2(n)`: the standardised location of
/// the maximum of `m` near-Gaussian degrees, widened (`sign = 1`) or
/// narrowed (`sign = -1`) by the slack.
pub(crate) fn max_quantile(m: usize, n: usize, c_of_n: f64, sign: f64) -> Result<f64> {
    let t = correction_terms(m, n, c_of_n)?;
    Ok((2.0 * (m as f64).ln()).sqrt() - t.eps1 + sign * t.eps2)
}
