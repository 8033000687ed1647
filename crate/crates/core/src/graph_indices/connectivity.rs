//! Vertex connectivity via unit-capacity max-flow on the split graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Subgraph;

struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Edmonds–Karp; flows here are bounded by the node count.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return flow;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Number of internally vertex-disjoint `s`–`t` paths, ignoring a direct
/// `s`–`t` edge.
fn disjoint_paths(sg: &Subgraph, s: usize, t: usize) -> usize {
    let n = sg.node_count();
    let big = n as u32 + 1;
    // node v splits into v_in = 2v and v_out = 2v + 1
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for (u, v) in sg.edges() {
        if (u == s && v == t) || (u == t && v == s) {
            continue;
        }
        net.add_arc(2 * u + 1, 2 * v, big);
        net.add_arc(2 * v + 1, 2 * u, big);
    }
    net.max_flow(2 * s + 1, 2 * t)
}

/// Minimum number of nodes whose removal separates `s` from `t`. Adjacent
/// pairs count the direct edge as one extra path.
pub fn local_node_connectivity(sg: &Subgraph, s: usize, t: usize) -> Result<usize> {
    if s == t {
        return Err(Error::Domain("local connectivity needs distinct nodes".into()));
    }
    Ok(disjoint_paths(sg, s, t) + usize::from(sg.has_edge(s, t)))
}

fn is_connected(sg: &Subgraph) -> bool {
    let n = sg.node_count();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in sg.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Exact vertex connectivity of the whole subgraph (0 when disconnected or
/// trivial, `n - 1` for complete graphs).
pub fn node_connectivity(sg: &Subgraph) -> usize {
    let n = sg.node_count();
    if n <= 1 || !is_connected(sg) {
        return 0;
    }
    let v = (0..n).min_by_key(|&v| (sg.degree(v), v)).unwrap();
    let mut best = sg.degree(v);
    if best == n - 1 {
        return best;
    }
    // a minimum separator either misses v, or v lies in it and then two of
    // v's neighbours are separated
    for w in (0..n).filter(|&w| w != v && !sg.has_edge(v, w)) {
        if best <= 1 {
            return best;
        }
        best = best.min(disjoint_paths(sg, v, w));
    }
    let nb = sg.neighbors(v);
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            if best <= 1 {
                return best;
            }
            if !sg.has_edge(x, y) {
                best = best.min(disjoint_paths(sg, x, y));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_connectivity_two() {
        let sg = Subgraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], &[0]).unwrap();
        assert_eq!(node_connectivity(&sg), 2);
        assert_eq!(local_node_connectivity(&sg, 0, 2).unwrap(), 2);
        assert_eq!(local_node_connectivity(&sg, 0, 1).unwrap(), 2);
    }

    #[test]
    fn complete_graph_and_path() {
        let edges: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let k5 = Subgraph::from_edges(5, &edges, &[0]).unwrap();
        assert_eq!(node_connectivity(&k5), 4);
        assert_eq!(local_node_connectivity(&k5, 0, 1).unwrap(), 4);
        let path = Subgraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], &[0]).unwrap();
        assert_eq!(node_connectivity(&path), 1);
        assert_eq!(local_node_connectivity(&path, 0, 3).unwrap(), 1);
    }

    #[test]
    fn complete_bipartite_k33() {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        let sg = Subgraph::from_edges(6, &edges, &[0]).unwrap();
        assert_eq!(node_connectivity(&sg), 3);
        assert_eq!(local_node_connectivity(&sg, 0, 1).unwrap(), 3);
    }
}
