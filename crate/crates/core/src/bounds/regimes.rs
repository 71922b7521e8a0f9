//! Noise-rate scales that separate the asymptotic regimes.
//!
//! The statements are asymptotic (`o(.)`, `>>`), so at a single `n` only the
//! ratio of the actual rate to its scale is meaningful: ratios far below 1
//! place a configuration inside a stability regime, ratios far above 1
//! inside an instability regime.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::NoiseParams;

/// `n^(-b/(2+b)) / ln n`: addition rates of smaller order keep degree hubs
/// of a linear preferential-attachment graph stable.
pub fn pa_hub_alpha_scale(n: usize, b: f64) -> f64 {
    let nf = n as f64;
    nf.powf(-b / (2.0 + b)) / nf.ln()
}

/// `1 / (ln n)^2`: in dense Erdos-Renyi graphs, noise rates of larger order
/// make exact top-k recovery fail with non-vanishing probability.
pub fn er_instability_scale(n: usize) -> f64 {
    (n as f64).ln().powi(-2)
}

/// `(n^(-(b+3/2)/(b+2)), n^(-(b+1)/(b+2)))`: addition and deletion rates of
/// smaller order keep the top eigenvector entry of a PA graph stable.
pub fn evec_rate_scales(n: usize, b: f64) -> (f64, f64) {
    let nf = n as f64;
    (nf.powf(-(b + 1.5) / (b + 2.0)), nf.powf(-(b + 1.0) / (b + 2.0)))
}

/// Rate-to-scale ratios for a configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateDiagnostics {
    pub n: usize,
    pub er_scale: f64,
    /// `max(alpha, beta) / er_scale`.
    pub er_ratio: f64,
    pub pa: Option<PaRateDiagnostics>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaRateDiagnostics {
    pub b: f64,
    pub hub_alpha_scale: f64,
    pub hub_alpha_ratio: f64,
    pub evec_alpha_scale: f64,
    pub evec_beta_scale: f64,
    pub evec_alpha_ratio: f64,
    pub evec_beta_ratio: f64,
}

pub fn rate_diagnostics(n: usize, params: NoiseParams, pa_offset: Option<f64>) -> Result<RateDiagnostics> {
    if n < 3 {
        return Err(Error::invalid("n", "rate scales need n >= 3"));
    }
    let er_scale = er_instability_scale(n);
    let pa = match pa_offset {
        None => None,
        Some(b) if !(b > -1.0) || !b.is_finite() => {
            return Err(Error::invalid("b", format!("offset must exceed -1 (got {b})")))
        }
        Some(b) => {
            let hub = pa_hub_alpha_scale(n, b);
            let (ea, eb) = evec_rate_scales(n, b);
            Some(PaRateDiagnostics {
                b,
                hub_alpha_scale: hub,
                hub_alpha_ratio: params.alpha / hub,
                evec_alpha_scale: ea,
                evec_beta_scale: eb,
                evec_alpha_ratio: params.alpha / ea,
                evec_beta_ratio: params.beta / eb,
            })
        }
    };
    Ok(RateDiagnostics {
        n,
        er_scale,
        er_ratio: params.alpha.max(params.beta) / er_scale,
        pa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_for_unit_offset() {
        let n = 1000;
        let nf = 1000f64;
        assert!((pa_hub_alpha_scale(n, 1.0) - nf.powf(-1.0 / 3.0) / nf.ln()).abs() < 1e-15);
        let (a, b) = evec_rate_scales(n, 1.0);
        assert!((a - nf.powf(-5.0 / 6.0)).abs() < 1e-15);
        assert!((b - nf.powf(-2.0 / 3.0)).abs() < 1e-15);
        assert!((er_instability_scale(n) - 1.0 / nf.ln().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn diagnostics() {
        let p = NoiseParams::new(0.05, 0.05).unwrap();
        let d = rate_diagnostics(1000, p, None).unwrap();
        assert!(d.er_ratio > 2.0);
        assert!(d.pa.is_none());
        let nf = 1000f64;
        let p = NoiseParams::new(nf.powf(-1.6), nf.powf(-0.7)).unwrap();
        let d = rate_diagnostics(1000, p, Some(1.0)).unwrap();
        let pa = d.pa.unwrap();
        assert!(pa.evec_alpha_ratio < 1.0 && pa.evec_beta_ratio < 1.0);
        assert!(rate_diagnostics(1000, p, Some(-1.0)).is_err());
        assert!(rate_diagnostics(2, p, None).is_err());
    }
}
