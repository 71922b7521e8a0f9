//! Independent edge-flip observation noise.
//!
//! Given a latent graph `A`, the observation `Y` keeps each present edge with
//! probability `1 - beta` and adds each absent pair with probability `alpha`,
//! independently over unordered pairs. The diagonal is never touched.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, IndexSampler, PairSampler};
use crate::rng::stream;

/// Edge addition rate `alpha` and deletion rate `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub alpha: f64,
    pub beta: f64,
}

impl NoiseParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(name, format!("{v} is not a probability")));
            }
        }
        Ok(NoiseParams { alpha, beta })
    }

    pub const NOISELESS: NoiseParams = NoiseParams {
        alpha: 0.0,
        beta: 0.0,
    };

    /// `1 - alpha - beta`, the attenuation of degree differences under noise.
    pub fn contrast(&self) -> f64 {
        1.0 - self.alpha - self.beta
    }

    /// Probability that a pair with latent state `present` is observed as an edge.
    pub fn edge_probability(&self, present: bool) -> f64 {
        if present {
            1.0 - self.beta
        } else {
            self.alpha
        }
    }
}

/// Draw one noisy observation of `a`.
///
/// Random numbers are consumed in two lexicographic passes: first over the
/// present edges (deletions), then over all pairs (additions, keeping only
/// pairs absent from `a`). Both passes use geometric skipping, so the cost is
/// proportional to the number of edges and flips, not to `C(n, 2)`.
pub fn apply_noise(a: &Graph, params: NoiseParams, seed: u64) -> Graph {
    let mut rng = stream(seed);
    let n = a.n();
    let edges = a.edges();

    let mut kept = Vec::with_capacity(edges.len());
    {
        let mut deleted = IndexSampler::new(&mut rng, edges.len() as u64, params.beta);
        let mut next_del = deleted.next();
        for (i, &e) in edges.iter().enumerate() {
            if next_del == Some(i as u64) {
                next_del = deleted.next();
            } else {
                kept.push(e);
            }
        }
    }

    let mut added = Vec::new();
    let mut present = edges.iter().peekable();
    for pair in PairSampler::new(&mut rng, n, params.alpha) {
        while present.peek().is_some_and(|&&e| e < pair) {
            present.next();
        }
        if present.peek() != Some(&&pair) {
            added.push(pair);
        }
    }

    Graph::from_sorted_unchecked(n, merge_sorted(kept, added))
}

fn merge_sorted(a: Vec<(usize, usize)>, b: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Largest number of node pairs [`exact_noise_distribution`] will enumerate.
pub const MAX_ENUMERATED_PAIRS: usize = 20;

/// Every possible observation of `a` with its exact probability.
///
/// Outcomes are indexed by a bitmask over the `C(n, 2)` pairs in
/// lexicographic order (bit set = edge observed).
pub fn exact_noise_distribution(a: &Graph, params: NoiseParams) -> Result<NoiseOutcomes> {
    let pairs: Vec<(usize, usize)> = (0..a.n())
        .flat_map(|u| (u + 1..a.n()).map(move |v| (u, v)))
        .collect();
    if pairs.len() > MAX_ENUMERATED_PAIRS {
        return Err(Error::invalid(
            "graph",
            format!(
                "{} node pairs exceed the enumeration cap of {MAX_ENUMERATED_PAIRS}",
                pairs.len()
            ),
        ));
    }
    let p_edge = pairs
        .iter()
        .map(|&(u, v)| params.edge_probability(a.has_edge(u, v)))
        .collect();
    Ok(NoiseOutcomes {
        n: a.n(),
        pairs,
        p_edge,
        next: 0,
    })
}

/// Iterator over `(observation, probability)` produced by
/// [`exact_noise_distribution`].
#[derive(Clone, Debug)]
pub struct NoiseOutcomes {
    n: usize,
    pairs: Vec<(usize, usize)>,
    p_edge: Vec<f64>,
    next: u64,
}

impl NoiseOutcomes {
    pub fn outcome_count(&self) -> u64 {
        1u64 << self.pairs.len()
    }
}

impl Iterator for NoiseOutcomes {
    type Item = (Graph, f64);

    fn next(&mut self) -> Option<(Graph, f64)> {
        if self.next >= self.outcome_count() {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut prob = 1.0;
        let mut edges = Vec::new();
        for (bit, (&pair, &p)) in self.pairs.iter().zip(&self.p_edge).enumerate() {
            if mask >> bit & 1 == 1 {
                prob *= p;
                edges.push(pair);
            } else {
                prob *= 1.0 - p;
            }
        }
        Some((Graph::from_sorted_unchecked(self.n, edges), prob))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.outcome_count() - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for NoiseOutcomes {}
