//! Undirected, unweighted graph storage and ego-subgraph extraction.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Dense row-major node feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Features {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl Features {
    pub fn row(&self, node: usize) -> &[f64] {
        &self.data[node * self.dim..(node + 1) * self.dim]
    }
}

/// The dataset graph. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    pub features: Option<Features>,
    pub labels: Option<Vec<Option<usize>>>,
}

impl Graph {
    /// Builds a graph from undirected edges. Duplicate edges (in either
    /// orientation) collapse into one; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("self-loop on node {u}")));
            }
            if u >= node_count || v >= node_count {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) outside node range 0..{node_count}"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            node_count,
            edges: canon,
            adj,
            features: None,
            labels: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Canonical `(min, max)` edges in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Subgraph induced by `nodes` (original ids, any order, duplicates
    /// ignored) with the given targets marked.
    pub fn induced(&self, nodes: &[usize], targets: &[usize]) -> Result<Subgraph> {
        let mut node_ids = nodes.to_vec();
        node_ids.sort_unstable();
        node_ids.dedup();
        if let Some(&bad) = node_ids.iter().find(|&&v| v >= self.node_count) {
            return Err(Error::Domain(format!("node {bad} not in graph")));
        }
        let local = |v: usize| node_ids.binary_search(&v).ok();
        let adj = node_ids
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| local(w)).collect())
            .collect();
        let target_local_ids = targets
            .iter()
            .map(|&t| local(t).ok_or_else(|| Error::Domain(format!("target {t} not in node set"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgraph {
            node_ids,
            adj,
            target_local_ids,
        })
    }

    /// Union of the `hops`-neighborhoods of `targets`, truncated to
    /// `node_cap` nodes by BFS layer and then ascending node id.
    pub fn extract_ego_subgraph(
        &self,
        targets: &[usize],
        hops: usize,
        node_cap: usize,
    ) -> Result<Subgraph> {
        if targets.is_empty() {
            return Err(Error::Domain("ego extraction needs at least one target".into()));
        }
        if hops == 0 {
            return Err(Error::Domain("hops must be at least 1".into()));
        }
        if let Some(&bad) = targets.iter().find(|&&t| t >= self.node_count) {
            return Err(Error::Domain(format!("target {bad} not in graph")));
        }
        let mut distinct = targets.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if node_cap < distinct.len() {
            return Err(Error::Domain(format!(
                "node_cap {node_cap} smaller than target count {}",
                distinct.len()
            )));
        }

        let mut dist = vec![usize::MAX; self.node_count];
        let mut queue = VecDeque::new();
        let mut reached = Vec::new();
        for &t in &distinct {
            dist[t] = 0;
            queue.push_back(t);
        }
        while let Some(v) = queue.pop_front() {
            reached.push(v);
            if dist[v] == hops {
                continue;
            }
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if reached.len() > node_cap {
            reached.sort_unstable_by_key(|&v| (dist[v], v));
            reached.truncate(node_cap);
        }
        self.induced(&reached, targets)
    }
}

/// Induced subgraph with local ids `0..node_ids.len()`; local id `i`
/// corresponds to original id `node_ids[i]` (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub node_ids: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
    pub target_local_ids: Vec<usize>,
}

impl Subgraph {
    /// Builds a standalone subgraph from local edges; used by tests and
    /// small fixtures.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], targets: &[usize]) -> Result<Self> {
        let g = Graph::from_edges(n, edges)?;
        let all: Vec<usize> = (0..n).collect();
        g.induced(&all, targets)
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn targets(&self) -> &[usize] {
        &self.target_local_ids
    }
}

/// Parses an edge list. Lines are `u v` separated by spaces or tabs; `#`
/// starts a comment. A `# nodes: N` comment declares the node count so that
/// isolated trailing nodes survive the round trip.
pub fn parse_edge_list(path: &Path, text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut max_id: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("nodes:") {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(path, line_no, "bad node-count directive"))?;
                declared = Some(n);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(path, line_no, "expected two node ids"));
        };
        let u = a
            .parse::<usize>()
            .map_err(|_| Error::parse(path, line_no, format!("invalid node id {a:?}")))?;
        let v = b
            .parse::<usize>()
            .map_err(|_| Error::parse(path, line_no, format!("invalid node id {b:?}")))?;
        if u == v {
            return Err(Error::parse(path, line_no, "self-loop"));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let observed = max_id.map_or(0, |m| m + 1);
    let node_count = match declared {
        Some(n) if n < observed => {
            return Err(Error::Schema(format!(
                "declared node count {n} but edges reference node {}",
                observed - 1
            )))
        }
        Some(n) => n,
        None => observed,
    };
    Graph::from_edges(node_count, &edges)
}

/// Parses a feature CSV: node id in column 0, then floats. A header row is
/// allowed. Every node needs exactly one row.
pub fn parse_features(path: &Path, text: &str, node_count: usize) -> Result<Features> {
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; node_count];
    let mut dim: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cells = line.split(',').map(str::trim);
        let first = cells.next().unwrap_or_default();
        let Ok(node) = first.parse::<usize>() else {
            if i == 0 {
                continue; // header
            }
            return Err(Error::parse(path, line_no, format!("invalid node id {first:?}")));
        };
        if node >= node_count {
            return Err(Error::Schema(format!(
                "{}:{line_no}: unknown node id {node}",
                path.display()
            )));
        }
        let values = cells
            .map(|c| {
                c.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(path, line_no, format!("invalid feature {c:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        match dim {
            None => dim = Some(values.len()),
            Some(d) if d != values.len() => {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("expected {d} features, found {}", values.len()),
                ))
            }
            _ => {}
        }
        if rows[node].replace(values).is_some() {
            return Err(Error::Schema(format!(
                "{}:{line_no}: duplicate row for node {node}",
                path.display()
            )));
        }
    }
    let dim = dim.unwrap_or(0);
    let mut data = Vec::with_capacity(node_count * dim);
    for (node, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| {
            Error::Schema(format!("{}: no feature row for node {node}", path.display()))
        })?;
        data.extend(row);
    }
    Ok(Features { dim, data })
}

/// Parses `node_id label` lines.
pub fn parse_labels(path: &Path, text: &str, node_count: usize) -> Result<Vec<Option<usize>>> {
    let mut labels = vec![None; node_count];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(path, line_no, "expected `node_id label`"));
        };
        let node = a
            .parse::<usize>()
            .map_err(|_| Error::parse(path, line_no, format!("invalid node id {a:?}")))?;
        let label = b
            .parse::<usize>()
            .map_err(|_| Error::parse(path, line_no, format!("invalid label {b:?}")))?;
        if node >= node_count {
            return Err(Error::Schema(format!(
                "{}:{line_no}: unknown node id {node}",
                path.display()
            )));
        }
        labels[node] = Some(label);
    }
    Ok(labels)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Loads the edge list plus optional features and labels.
pub fn load_dataset(
    edge_path: &Path,
    feature_path: Option<&Path>,
    label_path: Option<&Path>,
) -> Result<Graph> {
    let mut g = parse_edge_list(edge_path, &read(edge_path)?)?;
    if let Some(p) = feature_path {
        g.features = Some(parse_features(p, &read(p)?, g.node_count)?);
    }
    if let Some(p) = label_path {
        g.labels = Some(parse_labels(p, &read(p)?, g.node_count)?);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("edges.txt")
    }

    #[test]
    fn path_graph_degrees() {
        let g = parse_edge_list(p(), "0 1\n1 2\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn self_loop_is_parse_error() {
        let err = parse_edge_list(p(), "0 1\n1 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains("self-loop"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reversed_duplicate_collapses() {
        let g = parse_edge_list(p(), "0 1\n1\t0\n").unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.degrees(), vec![1, 1]);
    }

    #[test]
    fn comments_and_node_directive() {
        let g = parse_edge_list(p(), "# nodes: 5\n# a comment\n0 1\n").unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.degree(4), 0);
        let err = parse_edge_list(p(), "# nodes: 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_edge_list(p(), "0 1\n\n2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn features_with_header_and_unknown_ids() {
        let f = parse_features(p(), "id,a,b\n1,0.5,1\n0,2,3\n", 2).unwrap();
        assert_eq!(f.dim, 2);
        assert_eq!(f.row(0), &[2.0, 3.0]);
        assert_eq!(f.row(1), &[0.5, 1.0]);
        assert!(matches!(
            parse_features(p(), "0,1\n1,1\n2,1\n", 2),
            Err(Error::Schema(_))
        ));
        assert!(matches!(parse_features(p(), "0,1\n", 2), Err(Error::Schema(_))));
    }

    #[test]
    fn labels_reject_unknown_nodes() {
        let l = parse_labels(p(), "0 1\n2 0\n", 3).unwrap();
        assert_eq!(l, vec![Some(1), None, Some(0)]);
        assert!(matches!(parse_labels(p(), "3 0\n", 3), Err(Error::Schema(_))));
    }

    #[test]
    fn ego_on_path() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let sg = g.extract_ego_subgraph(&[1], 1, 256).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2]);
        assert_eq!(sg.edge_count(), 2);
        assert_eq!(sg.targets(), &[1]);
    }

    #[test]
    fn ego_on_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let sg = g.extract_ego_subgraph(&[0], 1, 256).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2]);
        assert_eq!(sg.edge_count(), 3);
    }

    #[test]
    fn ego_cap_breaks_ties_by_id() {
        let edges: Vec<_> = (1..=10).map(|l| (0, l)).collect();
        let g = Graph::from_edges(11, &edges).unwrap();
        let sg = g.extract_ego_subgraph(&[0], 1, 5).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2, 3, 4]);
        // leaf target: layer 1 is only the center, layer 2 is cut by id
        let sg = g.extract_ego_subgraph(&[7], 2, 4).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2, 7]);
    }

    #[test]
    fn ego_errors() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(g.extract_ego_subgraph(&[2], 1, 8), Err(Error::Domain(_))));
        assert!(matches!(g.extract_ego_subgraph(&[0], 0, 8), Err(Error::Domain(_))));
        assert!(matches!(g.extract_ego_subgraph(&[0, 1], 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn large_hops_give_component() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let sg = g.extract_ego_subgraph(&[0], 10, 256).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2]);
        let sg = g.extract_ego_subgraph(&[2, 4], 10, 256).unwrap();
        assert_eq!(sg.node_ids, vec![0, 1, 2, 3, 4]);
        assert_eq!(sg.targets(), &[2, 4]);
    }
}
