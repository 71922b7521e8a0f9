//! Degree and eigenvector centrality, top-k extraction and set discrepancy.

mod spectral;
pub(crate) mod topk;

pub use spectral::{
    principal_eigenpair, spectral_top2, PrincipalEigen, SpectralPair, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
pub use topk::{hamming, jaccard, top_k, TopKSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Degree,
    Eigenvector,
}

/// Per-node centrality scores.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreVector {
    kind: ScoreKind,
    scores: Vec<f64>,
}

impl ScoreVector {
    /// Rejects non-finite entries.
    pub fn new(kind: ScoreKind, scores: Vec<f64>) -> Result<Self> {
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::invalid(
                "scores",
                format!("entry {i} is not finite ({})", scores[i]),
            ));
        }
        Ok(ScoreVector { kind, scores })
    }

    pub fn kind(&self) -> ScoreKind {
        self.kind
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.scores.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Scores sorted non-increasingly.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.scores.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.scores
    }
}

/// Degrees as real-valued scores.
pub fn degree_scores(g: &Graph) -> ScoreVector {
    ScoreVector {
        kind: ScoreKind::Degree,
        scores: g.degree_vec().into_iter().map(|d| d as f64).collect(),
    }
}
