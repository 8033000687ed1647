//! Independent reference implementations used as test oracles, plus fixtures.
#![allow(dead_code)]

use curriculum_core::dataset::{Dataset, Task};
use curriculum_core::graph::Subgraph;
use curriculum_core::graph_indices::*;
use curriculum_core::pipeline::{build_index_matrix, build_pairs, select_indices, IndexConfig, IndexMatrix, RankingTable, SortOrder};
use curriculum_core::synth::{generate, SynthParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense adjacency matrix of a small graph.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn random(rng: &mut ChaCha8Rng, max_nodes: usize) -> Dense {
        let n = rng.gen_range(1..=max_nodes);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
        }
        Dense { n, adj }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / (self.n * (self.n - 1)) as f64
    }

    pub fn clustering(&self, v: usize) -> f64 {
        let k = self.degree(v);
        if k < 2 {
            return 0.0;
        }
        let mut closed = 0;
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.adj[v][a] && self.adj[v][b] && self.adj[a][b] {
                    closed += 1;
                }
            }
        }
        // ordered pairs count each triangle twice
        closed as f64 / (k * (k - 1)) as f64
    }

    pub fn average_clustering(&self) -> f64 {
        (0..self.n).map(|v| self.clustering(v)).sum::<f64>() / self.n as f64
    }

    /// All-pairs hop distances by Floyd–Warshall (`None` = unreachable).
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; self.n]; self.n];
        for u in 0..self.n {
            d[u][u] = 0;
            for v in 0..self.n {
                if self.adj[u][v] {
                    d[u][v] = 1;
                }
            }
        }
        for k in 0..self.n {
            for i in 0..self.n {
                for j in 0..self.n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d.into_iter()
            .map(|row| row.into_iter().map(|x| (x < inf).then_some(x)).collect())
            .collect()
    }

    /// Closeness with the reachable-set scaling of Wasserman and Faust.
    pub fn closeness(&self, v: usize) -> f64 {
        let d = &self.distances()[v];
        let reach: Vec<usize> = d.iter().flatten().copied().collect();
        let total: usize = reach.iter().sum();
        if total == 0 || self.n <= 1 {
            return 0.0;
        }
        let r = (reach.len() - 1) as f64;
        (r / total as f64) * (r / (self.n - 1) as f64)
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (0..self.n).filter(|&w| self.adj[u][w] && self.adj[v][w]).count()
    }

    pub fn local_bridges(&self) -> usize {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.common_neighbors(u, v) == 0)
            .count()
    }

    fn connected_without(&self, removed: u32, s: usize, t: usize) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            if x == t {
                return true;
            }
            for y in 0..self.n {
                if self.adj[x][y] && !seen[y] && removed & (1 << y) == 0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn is_connected_without(&self, removed: u32) -> bool {
        let alive: Vec<usize> = (0..self.n).filter(|v| removed & (1 << v) == 0).collect();
        alive.iter().all(|&v| self.connected_without(removed, alive[0], v))
    }

    /// Smallest vertex set whose removal disconnects the graph or leaves one
    /// node, by exhaustive search.
    pub fn node_connectivity(&self) -> usize {
        if self.n <= 1 || !self.is_connected_without(0) {
            return 0;
        }
        let mut best = self.n - 1;
        for mask in 0u32..(1 << self.n) {
            let size = mask.count_ones() as usize;
            if size < best && size + 2 <= self.n && !self.is_connected_without(mask) {
                best = size;
            }
        }
        best
    }

    /// Minimum s–t vertex separator, by exhaustive search; an s–t edge
    /// counts as one extra unit.
    pub fn local_connectivity(&self, s: usize, t: usize) -> usize {
        let mut g = self.clone();
        let direct = g.adj[s][t];
        g.adj[s][t] = false;
        g.adj[t][s] = false;
        let mut best = usize::MAX;
        for mask in 0u32..(1 << self.n) {
            if mask & (1 << s) != 0 || mask & (1 << t) != 0 {
                continue;
            }
            if !g.connected_without(mask, s, t) {
                best = best.min(mask.count_ones() as usize);
            }
        }
        best + usize::from(direct)
    }

    /// Nodes within `hops` of any target.
    pub fn ball(&self, targets: &[usize], hops: usize) -> Vec<usize> {
        let d = self.distances();
        (0..self.n)
            .filter(|&v| targets.iter().any(|&t| d[t][v].is_some_and(|x| x <= hops)))
            .collect()
    }

    pub fn min_dominating_set(&self) -> usize {
        (0u32..(1 << self.n))
            .filter(|&mask| (0..self.n).all(|v| mask & (1 << v) != 0 || (0..self.n).any(|u| mask & (1 << u) != 0 && self.adj[u][v])))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    pub fn min_vertex_cover(&self) -> usize {
        let edges = self.edges();
        (0u32..(1 << self.n))
            .filter(|&mask| edges.iter().all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    pub fn max_clique(&self) -> usize {
        (0u32..(1 << self.n))
            .filter(|&mask| self.is_clique(&bits(mask)))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| nodes[i + 1..].iter().all(|&b| self.adj[a][b]))
    }

    pub fn is_independent(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| nodes[i + 1..].iter().all(|&b| !self.adj[a][b]))
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}

/// Bisection for the largest `x` with `f(x) >= eta` on a non-increasing `f`.
pub fn bisect_threshold(f: impl Fn(f64) -> f64, eta: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi) >= eta {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= eta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Fixture {
    pub data: Dataset,
    pub matrix: IndexMatrix,
    pub selected: Vec<String>,
    pub pairs: Vec<RankingTable>,
}

/// Synthetic dataset, full index matrix, 10-cluster selection, all orders.
pub fn fixture(params: SynthParams, task: Task) -> Fixture {
    let data = generate(&params).unwrap().dataset(task).unwrap();
    let matrix = build_index_matrix(&data, &IndexConfig::all_for(task)).unwrap();
    let selected = select_indices(&matrix, 10, params.seed).unwrap().selected;
    let pairs = build_pairs(&matrix, &selected, &SortOrder::ALL).unwrap();
    Fixture {
        data,
        matrix,
        selected,
        pairs,
    }
}

pub fn subgraph(g: &Dense, targets: &[usize]) -> Subgraph {
    Subgraph::from_edges(g.n, &g.edges(), targets).unwrap()
}

fn expect_close(what: &str, got: f64, want: f64, g: &Dense) -> Result<(), String> {
    if (got - want).abs() <= 1e-9 {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, oracle {want} on {:?} (n={})", g.edges(), g.n))
    }
}

fn expect(what: &str, ok: bool, g: &Dense) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} failed on {:?} (n={})", g.edges(), g.n))
    }
}

/// Exact indices against the brute-force oracles; returns the number of
/// comparisons made.
pub fn exact_index_suite(seed: u64, graphs: usize) -> Result<usize, String> {
    use GraphIndexKind as K;
    let mut r = rng(seed);
    let mut checks = 0;
    for _ in 0..graphs {
        let g = Dense::random(&mut r, 7);
        for t in 0..g.n {
            let sg = subgraph(&g, &[t]);
            let idx = |k| compute_index(k, &sg).unwrap();
            let cases = [
                ("degree", idx(K::Degree), g.degree(t) as f64),
                ("density", idx(K::Density), g.density()),
                ("clustering", idx(K::AverageClustering), g.average_clustering()),
                ("closeness", idx(K::ClosenessCentrality), g.closeness(t)),
                ("nodes", idx(K::NumberOfNodes), g.n as f64),
                ("edges", idx(K::NumberOfEdges), g.edge_count() as f64),
                ("local bridges", idx(K::LocalBridges), g.local_bridges() as f64),
                ("connectivity", idx(K::SubgraphConnectivity), g.node_connectivity() as f64),
            ];
            for (what, got, want) in cases {
                expect_close(what, got, want, &g)?;
                checks += 1;
            }
        }
        for s in 0..g.n {
            for t in s + 1..g.n {
                let sg = subgraph(&g, &[s, t]);
                let cn = compute_index(K::CommonNeighbors, &sg).unwrap();
                expect_close("common neighbors", cn, g.common_neighbors(s, t) as f64, &g)?;
                let lc = compute_index(K::LocalNodeConnectivity, &sg).unwrap();
                expect_close("local connectivity", lc, g.local_connectivity(s, t) as f64, &g)?;
                checks += 2;
            }
        }
    }
    Ok(checks)
}

/// Validity of the heuristic set constructions; returns the number of
/// graphs checked.
pub fn heuristic_validity_suite(seed: u64, graphs: usize) -> Result<usize, String> {
    let mut r = rng(seed);
    for _ in 0..graphs {
        let g = Dense::random(&mut r, 7);
        let sg = subgraph(&g, &[0]);
        let edges = g.edges();

        let cover = vertex_cover_2approx(&sg);
        expect("cover covers", edges.iter().all(|(u, v)| cover.contains(u) || cover.contains(v)), &g)?;
        expect("cover within 2x", cover.len() <= 2 * g.min_vertex_cover(), &g)?;

        let dom = greedy_dominating_set(&sg);
        let dominates = (0..g.n).all(|v| dom.contains(&v) || dom.iter().any(|&u| g.adj[u][v]));
        expect("dominating set dominates", dominates, &g)?;

        for matching in [maximal_matching(&sg), min_maximal_matching(&sg)] {
            let mut used = vec![false; g.n];
            for &(u, v) in &matching {
                expect("matching edges disjoint", g.adj[u][v] && !used[u] && !used[v], &g)?;
                used[u] = true;
                used[v] = true;
            }
            expect("matching maximal", edges.iter().all(|&(u, v)| used[u] || used[v]), &g)?;
        }

        let clique = large_clique(&sg);
        expect("clique is clique", g.is_clique(&clique) && clique.len() <= g.max_clique(), &g)?;
        let (c, i) = ramsey_r2(&sg);
        expect("ramsey sets", g.is_clique(&c) && g.is_independent(&i), &g)?;
    }
    Ok(graphs)
}

/// Small synthetic link-prediction dataset.
pub fn fixture_links(nodes: usize) -> Dataset {
    let p = SynthParams {
        nodes,
        dim: 4,
        p_in: 0.2,
        p_out: 0.02,
        ..SynthParams::default()
    };
    generate(&p).unwrap().dataset(Task::LinkPrediction).unwrap()
}
