use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Subgraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KatzParams {
    pub alpha: f64,
    pub beta: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for KatzParams {
    fn default() -> Self {
        KatzParams {
            alpha: 0.1,
            beta: 1.0,
            max_iter: 1000,
            tol: 1e-6,
        }
    }
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Fixed point of `x = alpha * A x + beta`, scaled to unit L2 norm.
///
/// Fails with [`Error::Convergence`] when `alpha >= 1 / lambda_max` or the
/// iteration does not settle within `max_iter` steps.
pub fn katz_centrality(sg: &Subgraph, p: &KatzParams) -> Result<Vec<f64>> {
    let n = sg.node_count();
    if p.tol <= 0.0 {
        return Err(Error::Domain("katz tolerance must be positive".into()));
    }
    let max_degree = (0..n).map(|v| sg.degree(v)).max().unwrap_or(0);
    // lambda_max <= max degree; only estimate the spectrum when the bound is inconclusive
    if p.alpha * max_degree as f64 >= 1.0 {
        let (_, lambda) = eigenvector_centrality(sg, p.max_iter, p.tol)?;
        if p.alpha * lambda >= 1.0 {
            return Err(Error::Convergence { iterations: 0 });
        }
    }
    let mut x = vec![0.0; n];
    for _ in 0..p.max_iter {
        let next: Vec<f64> = (0..n)
            .map(|v| p.alpha * sg.neighbors(v).iter().map(|&w| x[w]).sum::<f64>() + p.beta)
            .collect();
        let change = l2(&next.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>());
        x = next;
        if change < p.tol {
            let norm = l2(&x);
            if norm == 0.0 {
                return Ok(x);
            }
            return Ok(x.into_iter().map(|v| v / norm).collect());
        }
    }
    Err(Error::Convergence {
        iterations: p.max_iter,
    })
}

/// Power iteration on `A + I` from the all-ones vector; returns the unit-L2
/// eigenvector and the corresponding eigenvalue estimate of `A`.
pub fn eigenvector_centrality(sg: &Subgraph, max_iter: usize, tol: f64) -> Result<(Vec<f64>, f64)> {
    let n = sg.node_count();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..max_iter {
        let mut next: Vec<f64> = (0..n)
            .map(|v| x[v] + sg.neighbors(v).iter().map(|&w| x[w]).sum::<f64>())
            .collect();
        let norm = l2(&next);
        if norm == 0.0 {
            return Err(Error::Convergence { iterations: 0 });
        }
        for v in &mut next {
            *v /= norm;
        }
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change < n as f64 * tol {
            // Rayleigh quotient of A at the converged vector
            let lambda: f64 = (0..n)
                .map(|v| x[v] * sg.neighbors(v).iter().map(|&w| x[w]).sum::<f64>())
                .sum();
            return Ok((x, lambda));
        }
    }
    Err(Error::Convergence {
        iterations: max_iter,
    })
}

pub(crate) fn bfs_distances(sg: &Subgraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; sg.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in sg.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Closeness with the Wasserman–Faust correction for disconnected graphs:
/// `(r - 1) / sum_dist * (r - 1) / (n - 1)` where `r` counts reachable nodes.
pub fn closeness(sg: &Subgraph, v: usize) -> f64 {
    let n = sg.node_count();
    let dist = bfs_distances(sg, v);
    let reachable: Vec<usize> = dist.iter().flatten().copied().collect();
    let total: usize = reachable.iter().sum();
    if total == 0 || n <= 1 {
        return 0.0;
    }
    let r = reachable.len() as f64 - 1.0;
    (r / total as f64) * (r / (n as f64 - 1.0))
}
