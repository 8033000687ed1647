//! Graph complexity indices evaluated on ego subgraphs.
//!
//! Node-valued indices (degree, the centralities, average neighbor degree)
//! are evaluated at the subgraph's target node(s) and summed over targets.
//! Graph-valued indices describe the whole subgraph; set-valued ones report
//! the set's cardinality. Pairwise indices need exactly two targets.
//!
//! Every index returns a finite value. Inputs on which an index is undefined
//! (zero degree variance, no edges, non-converging iterations) score 0.

mod centrality;
mod connectivity;
mod cover;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Subgraph;

pub use centrality::{closeness, eigenvector_centrality, katz_centrality, KatzParams};
pub use connectivity::{local_node_connectivity, node_connectivity};
pub use cover::{
    greedy_dominating_set, large_clique, maximal_matching, min_maximal_matching, ramsey_r2,
    treewidth_min_degree, vertex_cover_2approx,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Degree,
    Centrality,
    Flow,
    Computing,
    Connectivity,
    Basic,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Degree => "degree",
            Category::Centrality => "centrality",
            Category::Flow => "flow",
            Category::Computing => "computing",
            Category::Connectivity => "connectivity",
            Category::Basic => "basic",
        })
    }
}

macro_rules! graph_kinds {
    ($( $variant:ident => $name:literal, $cat:ident; )*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum GraphIndexKind {
            $( $variant, )*
        }

        impl GraphIndexKind {
            pub const ALL: [GraphIndexKind; 26] = [ $( GraphIndexKind::$variant, )* ];

            pub fn name(self) -> &'static str {
                match self { $( GraphIndexKind::$variant => $name, )* }
            }

            pub fn category(self) -> Category {
                match self { $( GraphIndexKind::$variant => Category::$cat, )* }
            }
        }

        impl FromStr for GraphIndexKind {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $( $name => Ok(GraphIndexKind::$variant), )*
                    other => Err(Error::Config(format!("unknown graph index {other:?}"))),
                }
            }
        }
    };
}

graph_kinds! {
    Degree => "degree", Degree;
    TreewidthMinDegree => "treewidth_min_degree", Degree;
    DegreeMixingMatrix => "degree_mixing_matrix", Degree;
    AverageNeighborDegree => "average_neighbor_degree", Degree;
    AverageDegreeConnectivity => "average_degree_connectivity", Degree;
    DegreeAssortativityCoefficient => "degree_assortativity_coefficient", Degree;
    KatzCentrality => "katz_centrality", Centrality;
    DegreeCentrality => "degree_centrality", Centrality;
    ClosenessCentrality => "closeness_centrality", Centrality;
    EigenvectorCentrality => "eigenvector_centrality", Centrality;
    GroupDegreeCentrality => "group_degree_centrality", Centrality;
    MinWeightedDominatingSet => "min_weighted_dominating_set", Flow;
    MinWeightedVertexCover => "min_weighted_vertex_cover", Flow;
    MinEdgeDominatingSet => "min_edge_dominating_set", Flow;
    MinMaximalMatching => "min_maximal_matching", Flow;
    RamseyR2 => "ramsey_r2", Computing;
    AverageClustering => "average_clustering", Computing;
    ResourceAllocationIndex => "resource_allocation_index", Computing;
    SubgraphConnectivity => "subgraph_connectivity", Connectivity;
    LocalNodeConnectivity => "local_node_connectivity", Connectivity;
    LargeCliqueSize => "large_clique_size", Basic;
    CommonNeighbors => "common_neighbors", Basic;
    NumberOfEdges => "number_of_edges", Basic;
    NumberOfNodes => "number_of_nodes", Basic;
    Density => "density", Basic;
    LocalBridges => "local_bridges", Basic;
}

impl GraphIndexKind {
    /// Pairwise indices relate the two targets of a link sample and are
    /// computed once on the joint subgraph rather than per endpoint.
    pub fn is_pairwise(self) -> bool {
        matches!(
            self,
            GraphIndexKind::CommonNeighbors
                | GraphIndexKind::ResourceAllocationIndex
                | GraphIndexKind::LocalNodeConnectivity
        )
    }
}

impl fmt::Display for GraphIndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IndexOptions {
    /// Use `e / (v (v - 1))` instead of the standard undirected density.
    pub literal_density: bool,
    pub katz: KatzParams,
}

pub fn compute_index(kind: GraphIndexKind, sg: &Subgraph) -> Result<f64> {
    compute_index_with(kind, sg, &IndexOptions::default())
}

pub fn compute_index_with(kind: GraphIndexKind, sg: &Subgraph, opts: &IndexOptions) -> Result<f64> {
    use GraphIndexKind as K;
    let n = sg.node_count();
    if n == 0 {
        return Err(Error::Domain("index on an empty subgraph".into()));
    }
    if kind.is_pairwise() && sg.targets().len() != 2 {
        return Err(Error::Domain(format!(
            "{kind} needs exactly 2 targets, subgraph has {}",
            sg.targets().len()
        )));
    }
    let targets = sg.targets();
    let value = match kind {
        K::Degree => targets.iter().map(|&t| sg.degree(t) as f64).sum(),
        K::TreewidthMinDegree => treewidth_min_degree(sg) as f64,
        K::DegreeMixingMatrix => degree_mixing_mean(sg),
        K::AverageNeighborDegree => targets.iter().map(|&t| average_neighbor_degree(sg, t)).sum(),
        K::AverageDegreeConnectivity => average_degree_connectivity_top(sg),
        K::DegreeAssortativityCoefficient => degree_assortativity(sg),
        K::KatzCentrality => match katz_centrality(sg, &opts.katz) {
            Ok(x) => targets.iter().map(|&t| x[t]).sum(),
            Err(e) => {
                log::warn!("katz centrality on {n}-node subgraph: {e}; scoring 0");
                0.0
            }
        },
        K::DegreeCentrality => targets.iter().map(|&t| degree_centrality(sg, t)).sum(),
        K::ClosenessCentrality => targets.iter().map(|&t| closeness(sg, t)).sum(),
        K::EigenvectorCentrality => {
            if sg.edge_count() == 0 {
                0.0
            } else {
                match eigenvector_centrality(sg, 1000, 1e-6) {
                    Ok((x, _)) => targets.iter().map(|&t| x[t]).sum(),
                    Err(e) => {
                        log::warn!("eigenvector centrality on {n}-node subgraph: {e}; scoring 0");
                        0.0
                    }
                }
            }
        }
        K::GroupDegreeCentrality => group_degree_centrality(sg, targets),
        K::MinWeightedDominatingSet => greedy_dominating_set(sg).len() as f64,
        K::MinWeightedVertexCover => vertex_cover_2approx(sg).len() as f64,
        K::MinEdgeDominatingSet => maximal_matching(sg).len() as f64,
        K::MinMaximalMatching => min_maximal_matching(sg).len() as f64,
        K::RamseyR2 => {
            let (clique, indep) = ramsey_r2(sg);
            (clique.len() * indep.len()) as f64
        }
        K::AverageClustering => average_clustering(sg),
        K::ResourceAllocationIndex => {
            let (s, t) = (targets[0], targets[1]);
            common_neighbors(sg, s, t)
                .into_iter()
                .map(|k| 1.0 / sg.degree(k) as f64)
                .sum()
        }
        K::SubgraphConnectivity => node_connectivity(sg) as f64,
        K::LocalNodeConnectivity => local_node_connectivity(sg, targets[0], targets[1])? as f64,
        K::LargeCliqueSize => large_clique(sg).len() as f64,
        K::CommonNeighbors => common_neighbors(sg, targets[0], targets[1]).len() as f64,
        K::NumberOfEdges => sg.edge_count() as f64,
        K::NumberOfNodes => n as f64,
        K::Density => density(sg, opts.literal_density),
        K::LocalBridges => local_bridge_count(sg) as f64,
    };
    debug_assert!(value.is_finite(), "{kind} produced {value}");
    Ok(if value.is_finite() { value } else { 0.0 })
}

/// Sorted-list intersection of two neighborhoods.
pub(crate) fn common_neighbors(sg: &Subgraph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (sg.neighbors(u), sg.neighbors(v));
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn density(sg: &Subgraph, literal: bool) -> f64 {
    let v = sg.node_count() as f64;
    if sg.node_count() < 2 {
        return 0.0;
    }
    let e = sg.edge_count() as f64;
    let scale = if literal { 1.0 } else { 2.0 };
    scale * e / (v * (v - 1.0))
}

pub fn local_bridge_count(sg: &Subgraph) -> usize {
    sg.edges()
        .filter(|&(u, v)| common_neighbors(sg, u, v).is_empty())
        .count()
}

pub fn average_clustering(sg: &Subgraph) -> f64 {
    let n = sg.node_count();
    let total: f64 = (0..n).map(|v| local_clustering(sg, v)).sum();
    total / n as f64
}

pub fn local_clustering(sg: &Subgraph, v: usize) -> f64 {
    let nb = sg.neighbors(v);
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if sg.has_edge(a, b) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

pub fn degree_centrality(sg: &Subgraph, v: usize) -> f64 {
    let n = sg.node_count();
    if n <= 1 {
        return 1.0;
    }
    sg.degree(v) as f64 / (n - 1) as f64
}

fn average_neighbor_degree(sg: &Subgraph, v: usize) -> f64 {
    let nb = sg.neighbors(v);
    if nb.is_empty() {
        return 0.0;
    }
    nb.iter().map(|&w| sg.degree(w) as f64).sum::<f64>() / nb.len() as f64
}

/// Mean neighbor degree of the highest-degree class.
fn average_degree_connectivity_top(sg: &Subgraph) -> f64 {
    let Some(k_max) = (0..sg.node_count()).map(|v| sg.degree(v)).max() else {
        return 0.0;
    };
    if k_max == 0 {
        return 0.0;
    }
    let (mut sum, mut norm) = (0.0, 0.0);
    for v in (0..sg.node_count()).filter(|&v| sg.degree(v) == k_max) {
        sum += sg.neighbors(v).iter().map(|&w| sg.degree(w) as f64).sum::<f64>();
        norm += k_max as f64;
    }
    sum / norm
}

/// Mean entry of the normalized joint degree-pair matrix over the distinct
/// degrees seen at edge endpoints.
fn degree_mixing_mean(sg: &Subgraph) -> f64 {
    let mut degrees: Vec<usize> = sg
        .edges()
        .flat_map(|(u, v)| [sg.degree(u), sg.degree(v)])
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let k = degrees.len();
    if k == 0 {
        return 0.0;
    }
    let pos = |d: usize| degrees.binary_search(&d).unwrap();
    let mut matrix = vec![0.0; k * k];
    let mut total = 0.0;
    for (u, v) in sg.edges() {
        let (a, b) = (pos(sg.degree(u)), pos(sg.degree(v)));
        matrix[a * k + b] += 1.0;
        matrix[b * k + a] += 1.0;
        total += 2.0;
    }
    matrix.iter().map(|x| x / total).sum::<f64>() / (k * k) as f64
}

/// Pearson correlation of endpoint degrees over both orientations of each edge.
fn degree_assortativity(sg: &Subgraph) -> f64 {
    let pairs: Vec<(f64, f64)> = sg
        .edges()
        .flat_map(|(u, v)| {
            let (du, dv) = (sg.degree(u) as f64, sg.degree(v) as f64);
            [(du, dv), (dv, du)]
        })
        .collect();
    if pairs.is_empty() {
        return 0.0;
    }
    let m = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for &(x, y) in &pairs {
        cov += (x - mean_x) * (y - mean_y);
        vx += (x - mean_x).powi(2);
        vy += (y - mean_y).powi(2);
    }
    if vx <= 1e-12 || vy <= 1e-12 {
        return 0.0;
    }
    (cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0)
}

/// Fraction of non-group nodes adjacent to the group.
fn group_degree_centrality(sg: &Subgraph, group: &[usize]) -> f64 {
    let n = sg.node_count();
    let mut in_group = vec![false; n];
    for &g in group {
        in_group[g] = true;
    }
    let outside = n - in_group.iter().filter(|&&b| b).count();
    if outside == 0 {
        return 0.0;
    }
    let mut reached = vec![false; n];
    for &g in group {
        for &w in sg.neighbors(g) {
            if !in_group[w] {
                reached[w] = true;
            }
        }
    }
    reached.iter().filter(|&&b| b).count() as f64 / outside as f64
}
