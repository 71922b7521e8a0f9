//! Random graph models: Erdős–Rényi, linear preferential attachment and
//! Watts–Strogatz small-world.
//!
//! Every generator is a pure function of its parameters and seed.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, PairSampler};
use crate::error::{Error, Result};
use crate::rng::stream;

/// `G(n, p)`: each of the `C(n, 2)` pairs is an edge independently with
/// probability `p`.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n", "must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p", format!("{p} is not a probability")));
    }
    let mut rng = stream(seed);
    let edges = PairSampler::new(&mut rng, n, p).collect();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

/// Parameters of the linear preferential attachment model with attachment
/// function `f(d) = d + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaParams {
    /// Final number of nodes.
    pub n: usize,
    /// Edges added by each arriving node.
    pub m: usize,
    /// Offset in the attachment weight; must exceed -1.
    pub b: f64,
}

impl PaParams {
    pub fn new(n: usize, m: usize, b: f64) -> Result<Self> {
        let params = PaParams { n, m, b };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("m", "must be at least 1"));
        }
        if self.n <= self.m {
            return Err(Error::invalid(
                "n",
                format!("must exceed m = {} (got {})", self.m, self.n),
            ));
        }
        if !(self.b > -1.0) || !self.b.is_finite() {
            return Err(Error::invalid(
                "b",
                format!("attachment offset must be finite and > -1 (got {})", self.b),
            ));
        }
        Ok(())
    }
}

/// Linear preferential attachment.
///
/// Growth starts from a complete graph on `m + 1` nodes. Each arriving node
/// draws `m` distinct targets among the existing nodes, sequentially without
/// replacement, with probability proportional to `deg(v) + b` where degrees
/// are frozen at the start of the step.
pub fn generate_pa(params: PaParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let PaParams { n, m, b } = params;
    let mut rng = stream(seed);

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    let mut deg = vec![0usize; n];
    let mut weights = Fenwick::new(n);
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
        }
        deg[u] = m;
        weights.add(u, m as f64 + b);
    }

    let mut picked = Vec::with_capacity(m);
    for t in m + 1..n {
        picked.clear();
        let mut total = weights.prefix(t);
        while picked.len() < m {
            let target = rng.random::<f64>() * total;
            let v = weights.find(target);
            // Rounding can land on a zero-weight slot (already picked, or not
            // yet arrived); redraw in that case.
            if v >= t || picked.contains(&v) {
                continue;
            }
            let w = deg[v] as f64 + b;
            weights.add(v, -w);
            total -= w;
            picked.push(v);
        }
        for &v in &picked {
            // Restore the frozen weight plus the new edge.
            weights.add(v, deg[v] as f64 + b + 1.0);
            deg[v] += 1;
            edges.push((v, t));
        }
        deg[t] = m;
        weights.add(t, m as f64 + b);
    }

    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

/// Watts–Strogatz small world: a ring where each node links to its `k_ring`
/// nearest neighbours, after which every lattice edge `(u, u + j)` is
/// rewired with probability `rewire_p` to `(u, w)` for a uniformly chosen
/// `w` that avoids self-loops and duplicate edges. The edge count is
/// preserved.
pub fn generate_small_world(n: usize, k_ring: usize, rewire_p: f64, seed: u64) -> Result<Graph> {
    if k_ring == 0 || k_ring % 2 != 0 {
        return Err(Error::invalid(
            "k_ring",
            format!("must be a positive even number (got {k_ring})"),
        ));
    }
    if k_ring >= n {
        return Err(Error::invalid(
            "k_ring",
            format!("must be smaller than n = {n} (got {k_ring})"),
        ));
    }
    if !(0.0..=1.0).contains(&rewire_p) {
        return Err(Error::invalid(
            "rewire_p",
            format!("{rewire_p} is not a probability"),
        ));
    }
    let mut rng = stream(seed);
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k_ring / 2 {
            let v = (u + j) % n;
            nbrs[u].insert(v);
            nbrs[v].insert(u);
        }
    }
    for j in 1..=k_ring / 2 {
        for u in 0..n {
            if rng.random::<f64>() >= rewire_p {
                continue;
            }
            if nbrs[u].len() >= n - 1 {
                continue;
            }
            let v = (u + j) % n;
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !nbrs[u].contains(&w) {
                    break w;
                }
            };
            nbrs[u].remove(&v);
            nbrs[v].remove(&u);
            nbrs[u].insert(w);
            nbrs[w].insert(u);
        }
    }
    let edges = nbrs
        .iter()
        .enumerate()
        .flat_map(|(u, set)| set.range(u + 1..).map(move |&v| (u, v)))
        .collect();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

/// Binary indexed tree over non-negative weights with prefix-sum search.
struct Fenwick {
    tree: Vec<f64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0.0; n + 1],
        }
    }

    fn add(&mut self, idx: usize, delta: f64) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum of weights `0..end`.
    fn prefix(&self, end: usize) -> f64 {
        let mut i = end;
        let mut s = 0.0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: f64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
