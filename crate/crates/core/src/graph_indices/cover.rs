//! Approximation heuristics for covering, matching and clique problems.
//!
//! All choices break ties by ascending node id (or lexicographic edge order)
//! so results are reproducible.

use std::collections::BTreeSet;

use crate::graph::Subgraph;

/// Greedy dominating set: repeatedly take the node whose closed neighborhood
/// dominates the most not-yet-dominated nodes.
pub fn greedy_dominating_set(sg: &Subgraph) -> Vec<usize> {
    let n = sg.node_count();
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let gain = |v: usize| {
            usize::from(!dominated[v]) + sg.neighbors(v).iter().filter(|&&w| !dominated[w]).count()
        };
        // max gain, smallest id on ties
        let best = (0..n).fold(0, |best, v| if gain(v) > gain(best) { v } else { best });
        chosen.push(best);
        for w in std::iter::once(best).chain(sg.neighbors(best).iter().copied()) {
            if !dominated[w] {
                dominated[w] = true;
                remaining -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Greedy maximal matching scanning edges in lexicographic order.
pub fn maximal_matching(sg: &Subgraph) -> Vec<(usize, usize)> {
    let mut matched = vec![false; sg.node_count()];
    let mut out = Vec::new();
    for (u, v) in sg.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            out.push((u, v));
        }
    }
    out
}

/// Local-ratio 2-approximation with unit weights: both endpoints of every
/// edge not yet covered enter the cover.
pub fn vertex_cover_2approx(sg: &Subgraph) -> Vec<usize> {
    let mut cover: Vec<usize> = maximal_matching(sg)
        .into_iter()
        .flat_map(|(u, v)| [u, v])
        .collect();
    cover.sort_unstable();
    cover
}

/// Small maximal matching: repeatedly take the available edge that blocks
/// the most other available edges.
pub fn min_maximal_matching(sg: &Subgraph) -> Vec<(usize, usize)> {
    let n = sg.node_count();
    let mut matched = vec![false; n];
    let mut out = Vec::new();
    loop {
        let free_degree =
            |v: usize| sg.neighbors(v).iter().filter(|&&w| !matched[w]).count();
        let mut best: Option<((usize, usize), usize)> = None;
        for (u, v) in sg.edges().filter(|&(u, v)| !matched[u] && !matched[v]) {
            let blocked = free_degree(u) + free_degree(v) - 1;
            if best.is_none_or(|(_, b)| blocked > b) {
                best = Some(((u, v), blocked));
            }
        }
        let Some(((u, v), _)) = best else { break };
        matched[u] = true;
        matched[v] = true;
        out.push((u, v));
    }
    out.sort_unstable();
    out
}

/// Treewidth upper bound from the minimum-degree elimination ordering.
pub fn treewidth_min_degree(sg: &Subgraph) -> usize {
    let n = sg.node_count();
    let mut graph: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| sg.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut width = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (graph[v].len(), v))
            .expect("a live node remains");
        let nb: Vec<usize> = graph[v].iter().copied().collect();
        width = width.max(nb.len());
        for (i, &a) in nb.iter().enumerate() {
            graph[a].remove(&v);
            for &b in &nb[i + 1..] {
                graph[a].insert(b);
                graph[b].insert(a);
            }
        }
        graph[v].clear();
        alive[v] = false;
    }
    width
}

/// Recursive Ramsey construction: a clique and an independent set, each found
/// by splitting on the smallest remaining node's neighbors / non-neighbors.
pub fn ramsey_r2(sg: &Subgraph) -> (Vec<usize>, Vec<usize>) {
    let all: Vec<usize> = (0..sg.node_count()).collect();
    let (mut c, mut i) = ramsey_rec(sg, &all);
    c.sort_unstable();
    i.sort_unstable();
    (c, i)
}

fn ramsey_rec(sg: &Subgraph, nodes: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let Some((&node, rest)) = nodes.split_first() else {
        return (Vec::new(), Vec::new());
    };
    let (nbrs, non_nbrs): (Vec<usize>, Vec<usize>) =
        rest.iter().partition(|&&w| sg.has_edge(node, w));
    let (mut c1, i1) = ramsey_rec(sg, &nbrs);
    let (c2, mut i2) = ramsey_rec(sg, &non_nbrs);
    c1.push(node);
    i2.push(node);
    let clique = if c1.len() >= c2.len() { c1 } else { c2 };
    let indep = if i1.len() >= i2.len() { i1 } else { i2 };
    (clique, indep)
}

/// Greedy large-clique heuristic: from each node, repeatedly extend with the
/// highest-degree candidate, pruning candidates whose degree cannot beat the
/// best clique so far.
pub fn large_clique(sg: &Subgraph) -> Vec<usize> {
    let n = sg.node_count();
    let mut best: Vec<usize> = Vec::new();
    for u in 0..n {
        if sg.degree(u) < best.len() {
            continue;
        }
        let mut clique = vec![u];
        let mut cand: BTreeSet<usize> = sg
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| sg.degree(v) >= best.len())
            .collect();
        while let Some(&next) = cand.iter().max_by_key(|&&v| (sg.degree(v), std::cmp::Reverse(v))) {
            cand.remove(&next);
            clique.push(next);
            cand.retain(|&w| sg.has_edge(next, w) && sg.degree(w) >= best.len());
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}
