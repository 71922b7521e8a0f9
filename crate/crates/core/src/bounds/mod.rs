//! Closed-form recovery conditions, infeasibility thresholds, Hamming
//! bounds and the eigenvector perturbation bound.
//!
//! Logarithms are natural throughout. All evaluations are leading-order:
//! the vanishing remainder terms of the underlying asymptotic statements are
//! dropped.

mod degree;
mod evec;
pub(crate) mod hamming;
mod moments;
mod normal;
mod regimes;
mod report;

pub use degree::{
    default_i_star, infeasibility_report, separation_report, tail_envelope, InfeasibilityReport,
    SeparationReport, TailEnvelope,
};
pub use evec::{evec_bound, evec_gap_check, EvecBound};
pub use hamming::{
    er_cn, er_expected_hamming_lower_bound, hamming_bounds_at, hamming_bounds_realization,
    HammingBounds,
};
pub use moments::{
    correction_terms, default_c_of_n, noisy_degree_moments, CorrectionTerms, DegreeMoments,
};
pub use normal::{erfc, normal_cdf};
pub use regimes::{
    er_instability_scale, evec_rate_scales, pa_hub_alpha_scale, rate_diagnostics,
    PaRateDiagnostics, RateDiagnostics,
};
pub use report::{
    bound_report, BoundConfig, BoundReport, ErPlugin, RankedMoments, Regime, SpectralSummary,
    DEFAULT_C1, DEFAULT_DELTA,
};
