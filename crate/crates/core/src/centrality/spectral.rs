//! Leading eigenpairs of an adjacency matrix by power iteration.
//!
//! The principal pair is found by iterating the shifted operator `A + sI`
//! with `s = max(1, sqrt(max_degree) / 2)` from the all-ones direction. The
//! shift keeps the Perron root strictly dominant even on bipartite graphs,
//! where `-lambda_1` is also an eigenvalue, and keeps every iterate
//! non-negative.
//!
//! The second eigenvalue is found by iterating `A + lambda_1 I` restricted to
//! the orthogonal complement of the converged principal vector. That operator
//! is positive semidefinite there, so its dominant eigenvalue is
//! `lambda_2 + lambda_1` (second *largest*, not second in magnitude).

use serde::Serialize;

use super::{ScoreKind, ScoreVector};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::rng::mix64;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Eigenvalues closer than this are reported as degenerate.
const DEGENERACY_TOL: f64 = 1e-8;
/// Entries in `[-CLAMP, 0)` are rounded to zero.
const CLAMP: f64 = 1e-9;

/// Principal eigenvalue and eigenvector.
#[derive(Clone, Debug, Serialize)]
pub struct PrincipalEigen {
    pub lambda1: f64,
    /// Unit `l2` norm, non-negative entries.
    pub x: ScoreVector,
    pub iterations: usize,
    pub converged: bool,
    /// `||A x - lambda1 x||_2`.
    pub residual: f64,
    /// False when the graph has several components; `x` is then supported
    /// on the dominant one(s).
    pub connected: bool,
}

/// Largest two eigenvalues and the principal eigenvector.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralPair {
    pub lambda1: f64,
    pub lambda2: f64,
    pub x: ScoreVector,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
    pub lambda2_iterations: usize,
    pub lambda2_converged: bool,
    /// `lambda1 - lambda2 <= 1e-8`: the principal vector is not unique and
    /// gap-based bounds do not apply.
    pub degenerate: bool,
    pub connected: bool,
}

impl SpectralPair {
    pub fn gap(&self) -> f64 {
        self.lambda1 - self.lambda2
    }

    pub fn x_inf(&self) -> f64 {
        self.x.max_abs()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn check_params(g: &Graph, tol: f64, max_iter: usize) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::invalid("graph", "spectral solver needs n >= 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", format!("must be positive (got {tol})")));
    }
    if max_iter == 0 {
        return Err(Error::invalid("max_iter", "must be at least 1"));
    }
    Ok(())
}

/// Rayleigh quotient `v' A v` and residual `||A v - rho v||` for unit `v`.
fn rayleigh(adj: &Adjacency, v: &[f64], scratch: &mut [f64]) -> (f64, f64) {
    adj.mul_vec(v, scratch);
    let rho = dot(v, scratch);
    let res = scratch
        .iter()
        .zip(v)
        .map(|(av, x)| (av - rho * x).powi(2))
        .sum::<f64>()
        .sqrt();
    (rho, res)
}

fn principal(g: &Graph, adj: &Adjacency, tol: f64, max_iter: usize) -> PrincipalEigen {
    let n = g.n();
    let max_deg = (0..n).map(|u| adj.neighbors(u).len()).max().unwrap_or(0);
    let shift = (0.5 * (max_deg as f64).sqrt()).max(1.0);

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = vec![0.0; n];
    let mut iterations = 0;
    let mut step_converged = false;
    while iterations < max_iter {
        iterations += 1;
        adj.mul_vec(&v, &mut w);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += shift * vi;
        }
        let nw = norm(&w);
        w.iter_mut().for_each(|a| *a /= nw);
        let d = diff_norm(&w, &v);
        std::mem::swap(&mut v, &mut w);
        if d <= tol {
            step_converged = true;
            break;
        }
    }

    fix_sign(&mut v);
    let (lambda1, residual) = rayleigh(adj, &v, &mut w);
    let converged = step_converged || residual <= tol * lambda1.abs().max(1.0);
    PrincipalEigen {
        lambda1,
        x: ScoreVector {
            kind: ScoreKind::Eigenvector,
            scores: v,
        },
        iterations,
        converged,
        residual,
        connected: g.is_connected(),
    }
}

/// Largest-magnitude entry positive, tiny negatives clamped to zero.
fn fix_sign(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .fold(0.0f64, |m, a| if a.abs() > m.abs() { a } else { m });
    if pivot < 0.0 {
        v.iter_mut().for_each(|a| *a = -*a);
    }
    for a in v.iter_mut() {
        if *a < 0.0 && *a >= -CLAMP {
            *a = 0.0;
        }
    }
}

/// Principal eigenvalue and non-negative unit eigenvector of `g`.
pub fn principal_eigenpair(g: &Graph, tol: f64, max_iter: usize) -> Result<PrincipalEigen> {
    check_params(g, tol, max_iter)?;
    let adj = g.adjacency();
    Ok(principal(g, &adj, tol, max_iter))
}

/// `lambda_1`, `lambda_2` and the principal eigenvector of `g`.
///
/// Non-convergence is reported through the `converged` flags rather than as
/// an error.
pub fn spectral_top2(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralPair> {
    check_params(g, tol, max_iter)?;
    let adj = g.adjacency();
    let first = principal(g, &adj, tol, max_iter);
    let n = g.n();
    let x = first.x.scores();
    let lambda1 = first.lambda1;
    let shift = lambda1.max(0.0);

    // Deterministic start vector with no special structure.
    let mut v: Vec<f64> = (0..n)
        .map(|i| (mix64(i as u64) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect();
    project_out(&mut v, x);
    let nv = norm(&v);
    v.iter_mut().for_each(|a| *a /= nv);

    let mut w = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let scale = lambda1.abs().max(1.0);
    while iterations < max_iter {
        iterations += 1;
        adj.mul_vec(&v, &mut w);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += shift * vi;
        }
        project_out(&mut w, x);
        let nw = norm(&w);
        if nw == 0.0 {
            // The complement is annihilated: every remaining eigenvalue is -lambda1.
            converged = true;
            break;
        }
        w.iter_mut().for_each(|a| *a /= nw);
        let d = diff_norm(&w, &v);
        std::mem::swap(&mut v, &mut w);
        if d <= tol {
            converged = true;
            break;
        }
        if iterations % 16 == 0 {
            let (rho, _) = rayleigh(&adj, &v, &mut scratch);
            project_out(&mut scratch, x);
            let res = scratch
                .iter()
                .zip(&v)
                .map(|(av, y)| (av - rho * y).powi(2))
                .sum::<f64>()
                .sqrt();
            if res <= tol * scale {
                converged = true;
                break;
            }
        }
    }
    let lambda2 = rayleigh(&adj, &v, &mut scratch).0;

    Ok(SpectralPair {
        lambda1,
        lambda2,
        degenerate: lambda1 - lambda2 <= DEGENERACY_TOL,
        x: first.x,
        iterations: first.iterations,
        converged: first.converged,
        residual: first.residual,
        lambda2_iterations: iterations,
        lambda2_converged: converged,
        connected: first.connected,
    })
}

fn project_out(v: &mut [f64], x: &[f64]) {
    let c = dot(v, x);
    for (a, b) in v.iter_mut().zip(x) {
        *a -= c * b;
    }
}
