//! Simple undirected graphs, degree sequences and the edge-list format.
//!
//! A [`Graph`] stores each undirected edge once as a pair `(u, v)` with
//! `u < v`, sorted lexicographically. Symmetry is therefore structural and
//! self-loops cannot be represented.

mod generators;
mod io;
mod pairs;

use std::collections::VecDeque;

pub use generators::{generate_er, generate_pa, generate_small_world, PaParams};
pub use io::{read_edge_list, write_edge_list};
pub(crate) use pairs::{IndexSampler, PairSampler};

use crate::error::{Error, Result};

/// A simple undirected graph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// The empty graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph { n, edges }
    }

    /// Build a graph from unordered pairs. Pairs are canonicalised and
    /// duplicates (in either orientation) merged; self-loops and endpoints
    /// `>= n` are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::invalid("edges", format!("self-loop at node {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(
                    "edges",
                    format!("edge ({a}, {b}) has an endpoint >= n = {n}"),
                ));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph { n, edges })
    }

    /// Caller guarantees `edges` is sorted, deduplicated, `u < v < n`.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges `(u, v)`, `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Number of unordered node pairs, `C(n, 2)`.
    pub fn pair_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn degree_vec(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence::new(self.degree_vec())
    }

    pub fn mean_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// Every absent pair becomes an edge and vice versa.
    pub fn complement(&self) -> Graph {
        let mut out = Vec::with_capacity(self.pair_count() - self.edges.len());
        let mut present = self.edges.iter().peekable();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if present.peek() == Some(&&(u, v)) {
                    present.next();
                } else {
                    out.push((u, v));
                }
            }
        }
        Graph {
            n: self.n,
            edges: out,
        }
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }

    /// Connected component label of every node (labels in order of first
    /// appearance by node id) and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in adj.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }
}

/// Compressed sparse row neighbour lists for a [`Graph`].
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Adjacency {
    fn new(g: &Graph) -> Self {
        let deg = g.degree_vec();
        let mut offsets = Vec::with_capacity(g.n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..g.n].to_vec();
        let mut targets = vec![0; offsets[g.n]];
        for &(u, v) in &g.edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// `out = A x`.
    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        for (u, o) in out.iter_mut().enumerate() {
            *o = self.neighbors(u).iter().map(|&v| x[v]).sum();
        }
    }
}

/// Degrees of a graph together with a stable non-increasing ordering.
///
/// `order[r]` is the node at (0-based) rank `r`; ties keep ascending node id.
/// The theory routines address nodes by 1-based rank, so
/// `sorted(1) >= sorted(2) >= ...` is the relabelled sequence `d_1 >= d_2 >= ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    order: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Self {
        let mut order: Vec<usize> = (0..degrees.len()).collect();
        order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]));
        DegreeSequence { degrees, order }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Degree at 1-based rank `r`, i.e. `d_r` after relabelling.
    ///
    /// Panics if `r == 0` or `r > n`.
    pub fn sorted(&self, r: usize) -> usize {
        assert!(r >= 1 && r <= self.len(), "rank {r} out of range");
        self.degrees[self.order[r - 1]]
    }

    /// The whole relabelled sequence `d_1 >= ... >= d_n`.
    pub fn sorted_values(&self) -> Vec<usize> {
        self.order.iter().map(|&i| self.degrees[i]).collect()
    }
}
