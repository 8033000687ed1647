//! From samples to rankings: index matrix construction, L2 normalization,
//! correlation-clustered index selection, and per-(index, order) rankings.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Sample, Split};
use crate::error::{Error, Result};
use crate::graph::Subgraph;
use crate::graph_indices::{compute_index_with, GraphIndexKind, IndexOptions};
use crate::text_indices::{analyze_text, compute_text_index, TextIndexKind};

/// A complexity index from either view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    Graph(GraphIndexKind),
    Text(TextIndexKind),
}

impl IndexKind {
    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Graph(k) => k.name(),
            IndexKind::Text(k) => k.name(),
        }
    }

    /// Graph category (degree, centrality, ...) or text family (TraF/ShaF).
    pub fn category(self) -> String {
        match self {
            IndexKind::Graph(k) => k.category().to_string(),
            IndexKind::Text(k) => k.family().to_string(),
        }
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(k) = s.parse::<GraphIndexKind>() {
            return Ok(IndexKind::Graph(k));
        }
        s.parse::<TextIndexKind>()
            .map(IndexKind::Text)
            .map_err(|_| Error::Config(format!("unknown index {s:?}")))
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SortOrder {
    Ascending,
    Descending,
    MediumAscending,
    MediumDescending,
}

impl SortOrder {
    pub const ALL: [SortOrder; 4] = [
        SortOrder::Ascending,
        SortOrder::Descending,
        SortOrder::MediumAscending,
        SortOrder::MediumDescending,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SortOrder::Ascending => "ascending",
            SortOrder::Descending => "descending",
            SortOrder::MediumAscending => "medium_ascending",
            SortOrder::MediumDescending => "medium_descending",
        }
    }
}

impl FromStr for SortOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SortOrder::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sort order {s:?}")))
    }
}

impl fmt::Display for SortOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Name of a schedulable (index, order) pair, e.g. `degree/ascending`.
pub fn pair_name(index: &str, order: SortOrder) -> String {
    format!("{index}/{order}")
}

/// Splits a pair name back into its index name and order.
pub fn parse_pair_name(name: &str) -> Result<(&str, SortOrder)> {
    let (index, order) = name
        .rsplit_once('/')
        .ok_or_else(|| Error::Schema(format!("pair name {name:?} lacks an order")))?;
    Ok((index, order.parse()?))
}

#[derive(Debug, Clone)]
pub struct IndexConfig {
    pub graph_kinds: Vec<GraphIndexKind>,
    pub text_kinds: Vec<TextIndexKind>,
    pub hops: usize,
    pub node_cap: usize,
    pub options: IndexOptions,
    /// Worker threads for the per-sample computation; 0 uses rayon's default.
    pub threads: usize,
}

impl IndexConfig {
    /// All indices applicable to the task: pairwise graph indices only make
    /// sense for link samples.
    pub fn all_for(task: crate::dataset::Task) -> Self {
        let link = task == crate::dataset::Task::LinkPrediction;
        IndexConfig {
            graph_kinds: GraphIndexKind::ALL
                .into_iter()
                .filter(|k| link || !k.is_pairwise())
                .collect(),
            text_kinds: TextIndexKind::ALL.to_vec(),
            hops: 1,
            node_cap: 256,
            options: IndexOptions::default(),
            threads: 0,
        }
    }
}

/// Samples x indices score table covering the train and validation splits.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexMatrix {
    pub sample_ids: Vec<usize>,
    pub splits: Vec<Split>,
    pub index_names: Vec<String>,
    /// Row-major, `sample_ids.len() x index_names.len()`.
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    /// Columns with zero variance over the training rows.
    pub constant: Vec<bool>,
}

impl IndexMatrix {
    pub fn rows(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn cols(&self) -> usize {
        self.index_names.len()
    }

    pub fn column_of(&self, name: &str) -> Option<usize> {
        self.index_names.iter().position(|n| n == name)
    }

    pub fn raw_at(&self, row: usize, col: usize) -> f64 {
        self.raw[row * self.cols() + col]
    }

    pub fn normalized_at(&self, row: usize, col: usize) -> f64 {
        self.normalized[row * self.cols() + col]
    }

    fn rows_in(&self, split: Split) -> Vec<usize> {
        (0..self.rows()).filter(|&r| self.splits[r] == split).collect()
    }

    /// Builds a matrix from raw scores and normalizes it.
    pub fn from_raw(
        sample_ids: Vec<usize>,
        splits: Vec<Split>,
        index_names: Vec<String>,
        raw: Vec<f64>,
    ) -> Result<Self> {
        let cols = index_names.len();
        if sample_ids.len() != splits.len() || raw.len() != sample_ids.len() * cols {
            return Err(Error::Schema("index matrix shape mismatch".into()));
        }
        let mut m = IndexMatrix {
            sample_ids,
            splits,
            index_names,
            normalized: vec![0.0; raw.len()],
            constant: vec![false; cols],
            raw,
        };
        m.check_splits()?;
        m.normalize();
        Ok(m)
    }

    fn check_splits(&self) -> Result<()> {
        for split in [Split::Train, Split::Validation] {
            if !self.splits.contains(&split) {
                return Err(Error::Domain(format!("no samples in the {split} split")));
            }
        }
        Ok(())
    }

    /// Scales every column by its training-split L2 norm; validation rows
    /// reuse the training scale. All-zero training columns stay zero.
    fn normalize(&mut self) {
        let train = self.rows_in(Split::Train);
        let cols = self.cols();
        for c in 0..cols {
            let norm = train
                .iter()
                .map(|&r| self.raw[r * cols + c].powi(2))
                .sum::<f64>()
                .sqrt();
            for r in 0..self.rows() {
                let v = self.raw[r * cols + c];
                self.normalized[r * cols + c] = if norm > 0.0 { v / norm } else { 0.0 };
            }
            self.constant[c] = self.is_constant(&train, c);
        }
    }

    fn is_constant(&self, rows: &[usize], col: usize) -> bool {
        let mut values = rows.iter().map(|&r| self.raw_at(r, col));
        let Some(first) = values.next() else {
            return true;
        };
        values.all(|v| v == first)
    }

    /// Long-format CSV: `sample_id,index_name,raw,normalized`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_id,index_name,raw,normalized\n");
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    self.sample_ids[r],
                    self.index_names[c],
                    self.raw_at(r, c),
                    self.normalized_at(r, c)
                ));
            }
        }
        out
    }

    /// Reads the long-format CSV back; splits come from the sample table.
    pub fn from_csv(path: &Path, text: &str, samples: &[Sample]) -> Result<Self> {
        let mut ids: Vec<usize> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut cells: Vec<(usize, usize, f64, f64)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || (i == 0 && line.starts_with("sample_id")) {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(Error::parse(path, line_no, "expected 4 columns"));
            }
            let id: usize = f[0]
                .parse()
                .map_err(|_| Error::parse(path, line_no, "invalid sample id"))?;
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::parse(path, line_no, format!("invalid number {s:?}")))
            };
            let (raw, norm) = (num(f[2])?, num(f[3])?);
            let row = match ids.iter().position(|&x| x == id) {
                Some(p) => p,
                None => {
                    ids.push(id);
                    ids.len() - 1
                }
            };
            let col = match names.iter().position(|n| n == f[1]) {
                Some(p) => p,
                None => {
                    names.push(f[1].to_string());
                    names.len() - 1
                }
            };
            cells.push((row, col, raw, norm));
        }
        let cols = names.len();
        if cells.len() != ids.len() * cols {
            return Err(Error::Schema(format!(
                "{}: {} cells for {} samples x {cols} indices",
                path.display(),
                cells.len(),
                ids.len()
            )));
        }
        let mut raw = vec![f64::NAN; ids.len() * cols];
        let mut normalized = vec![f64::NAN; ids.len() * cols];
        for (r, c, v, n) in cells {
            raw[r * cols + c] = v;
            normalized[r * cols + c] = n;
        }
        if raw.iter().any(|v| v.is_nan()) {
            return Err(Error::Schema(format!("{}: duplicate or missing cells", path.display())));
        }
        let splits = ids
            .iter()
            .map(|&id| {
                samples
                    .get(id)
                    .map(|s| s.split)
                    .ok_or_else(|| Error::Schema(format!("unknown sample id {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = IndexMatrix {
            sample_ids: ids,
            splits,
            index_names: names,
            raw,
            normalized,
            constant: vec![false; cols],
        };
        m.check_splits()?;
        let train = m.rows_in(Split::Train);
        for c in 0..cols {
            m.constant[c] = m.is_constant(&train, c);
        }
        Ok(m)
    }

    pub fn load(path: &Path, samples: &[Sample]) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(path, &text, samples)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }
}

fn scores_for_sample(
    data: &Dataset,
    sample: &Sample,
    cfg: &IndexConfig,
) -> Result<Vec<f64>> {
    let g = &data.graph;
    let per_target: Vec<Subgraph> = sample
        .targets
        .iter()
        .map(|&t| g.extract_ego_subgraph(&[t], cfg.hops, cfg.node_cap))
        .collect::<Result<_>>()?;
    let joint = if sample.targets.len() == 2 && cfg.graph_kinds.iter().any(|k| k.is_pairwise()) {
        Some(g.extract_ego_subgraph(&sample.targets, cfg.hops, cfg.node_cap)?)
    } else {
        None
    };
    let mut row = Vec::with_capacity(cfg.graph_kinds.len() + cfg.text_kinds.len());
    for &kind in &cfg.graph_kinds {
        let value = if kind.is_pairwise() {
            let sg = joint.as_ref().ok_or_else(|| {
                Error::Config(format!("{kind} is pairwise and needs link samples"))
            })?;
            compute_index_with(kind, sg, &cfg.options)?
        } else {
            per_target
                .iter()
                .map(|sg| compute_index_with(kind, sg, &cfg.options))
                .sum::<Result<f64>>()?
        };
        row.push(value);
    }
    let stats: Vec<_> = sample
        .targets
        .iter()
        .map(|&t| analyze_text(data.text_of(t)))
        .collect();
    for &kind in &cfg.text_kinds {
        row.push(stats.iter().map(|s| compute_text_index(kind, s)).sum());
    }
    Ok(row)
}

/// Scores every train/validation sample on the configured indices. Link
/// samples sum per-endpoint scores, except pairwise graph indices which are
/// computed once on the joint subgraph of both endpoints.
pub fn build_index_matrix(data: &Dataset, cfg: &IndexConfig) -> Result<IndexMatrix> {
    let samples: Vec<&Sample> = data
        .samples
        .iter()
        .filter(|s| s.split != Split::Test)
        .collect();
    if samples.is_empty() {
        return Err(Error::Domain("no train or validation samples".into()));
    }
    let compute = || {
        samples
            .par_iter()
            .map(|s| scores_for_sample(data, s, cfg))
            .collect::<Result<Vec<Vec<f64>>>>()
    };
    let rows = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(compute)?
    } else {
        compute()?
    };
    let names = cfg
        .graph_kinds
        .iter()
        .map(|k| k.name().to_string())
        .chain(cfg.text_kinds.iter().map(|k| k.name().to_string()))
        .collect();
    IndexMatrix::from_raw(
        samples.iter().map(|s| s.id).collect(),
        samples.iter().map(|s| s.split).collect(),
        names,
        rows.into_iter().flatten().collect(),
    )
}

/// Pearson correlation between columns over the given rows. Zero-variance
/// columns correlate 0 with everything else and 1 with themselves.
pub fn correlation_matrix(m: &IndexMatrix, cols: &[usize], rows: &[usize]) -> Vec<Vec<f64>> {
    let k = cols.len();
    let n = rows.len() as f64;
    let centered: Vec<Vec<f64>> = cols
        .iter()
        .map(|&c| {
            let mean = rows.iter().map(|&r| m.normalized_at(r, c)).sum::<f64>() / n;
            rows.iter().map(|&r| m.normalized_at(r, c) - mean).collect()
        })
        .collect();
    let norms: Vec<f64> = centered
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut corr = vec![vec![0.0; k]; k];
    for i in 0..k {
        corr[i][i] = 1.0;
        for j in i + 1..k {
            let r = if norms[i] > 0.0 && norms[j] > 0.0 {
                let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
                (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0)
            } else {
                0.0
            };
            corr[i][j] = r;
            corr[j][i] = r;
        }
    }
    corr
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    /// One representative per cluster, in cluster order.
    pub selected: Vec<String>,
    /// Cluster id of every clustered (non-constant) index.
    pub assignments: Vec<(String, usize)>,
}

impl Selection {
    /// `name<TAB>cluster` per selected index.
    pub fn to_text(&self) -> String {
        let cluster_of = |name: &str| {
            self.assignments
                .iter()
                .find(|(n, _)| n == name)
                .map_or(0, |(_, c)| *c)
        };
        self.selected
            .iter()
            .map(|n| format!("{n}\t{}\n", cluster_of(n)))
            .collect()
    }

    /// Reads the names back from a selection file (cluster column optional).
    pub fn names_from_text(text: &str) -> Vec<String> {
        text.lines()
            .filter_map(|l| l.split('\t').next())
            .map(str::trim)
            .filter(|n| !n.is_empty() && !n.starts_with('#'))
            .map(String::from)
            .collect()
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

/// Seeded k-means with k-means++ seeding and several restarts; returns the
/// assignment with the lowest inertia. Every cluster is non-empty.
pub fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    const RESTARTS: usize = 10;
    const MAX_ITER: usize = 100;
    let n = points.len();
    assert!(k >= 1 && k <= n, "k-means needs 1 <= k <= n");
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..RESTARTS {
        let mut centers: Vec<Vec<f64>> = vec![points[rng.gen_range(0..n)].clone()];
        while centers.len() < k {
            let d: Vec<f64> = points
                .iter()
                .map(|p| centers.iter().map(|c| sq_dist(p, c)).fold(f64::INFINITY, f64::min))
                .collect();
            let total: f64 = d.iter().sum();
            let next = if total > 0.0 {
                let mut target = rng.gen::<f64>() * total;
                let mut pick = n - 1;
                for (i, &di) in d.iter().enumerate() {
                    if di > 0.0 && target < di {
                        pick = i;
                        break;
                    }
                    target -= di;
                }
                pick
            } else {
                rng.gen_range(0..n)
            };
            centers.push(points[next].clone());
        }
        let mut assign = vec![usize::MAX; n];
        for _ in 0..MAX_ITER {
            let mut next: Vec<usize> = points
                .iter()
                .map(|p| {
                    (0..k)
                        .min_by(|&a, &b| sq_dist(p, &centers[a]).total_cmp(&sq_dist(p, &centers[b])))
                        .unwrap()
                })
                .collect();
            fill_empty_clusters(points, &centers, &mut next, k);
            let stable = next == assign;
            assign = next;
            for (c, center) in centers.iter_mut().enumerate() {
                let members: Vec<&Vec<f64>> =
                    points.iter().zip(&assign).filter(|(_, &a)| a == c).map(|(p, _)| p).collect();
                for (d, slot) in center.iter_mut().enumerate() {
                    *slot = members.iter().map(|p| p[d]).sum::<f64>() / members.len() as f64;
                }
            }
            if stable {
                break;
            }
        }
        let inertia: f64 = points
            .iter()
            .zip(&assign)
            .map(|(p, &a)| sq_dist(p, &centers[a]))
            .sum();
        if best.as_ref().is_none_or(|(b, _)| inertia < *b) {
            best = Some((inertia, assign));
        }
    }
    best.unwrap().1
}

/// Moves the worst-fitting point of a multi-member cluster into each empty
/// cluster.
fn fill_empty_clusters(points: &[Vec<f64>], centers: &[Vec<f64>], assign: &mut [usize], k: usize) {
    loop {
        let mut sizes = vec![0usize; k];
        for &a in assign.iter() {
            sizes[a] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let donor = (0..points.len())
            .filter(|&i| sizes[assign[i]] > 1)
            .max_by(|&a, &b| {
                sq_dist(&points[a], &centers[assign[a]])
                    .total_cmp(&sq_dist(&points[b], &centers[assign[b]]))
                    .then(b.cmp(&a))
            })
            .expect("n >= k leaves a cluster with two members");
        assign[donor] = empty;
    }
}

/// Clusters the rows of the index correlation matrix and keeps one randomly
/// chosen index per cluster. Constant columns are not clustered.
pub fn select_indices(m: &IndexMatrix, k_clusters: usize, seed: u64) -> Result<Selection> {
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| !m.constant[c]).collect();
    if k_clusters == 0 || cols.len() < k_clusters {
        return Err(Error::Config(format!(
            "{} non-constant indices cannot form {k_clusters} clusters; use a smaller k",
            cols.len()
        )));
    }
    let rows = m.rows_in(Split::Train);
    let corr = correlation_matrix(m, &cols, &rows);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw_assign = kmeans(&corr, k_clusters, &mut rng);
    // relabel clusters by first appearance in column order
    let mut relabel = vec![usize::MAX; k_clusters];
    let mut next = 0;
    for &a in &raw_assign {
        if relabel[a] == usize::MAX {
            relabel[a] = next;
            next += 1;
        }
    }
    let assign: Vec<usize> = raw_assign.iter().map(|&a| relabel[a]).collect();
    let mut selected = Vec::with_capacity(k_clusters);
    for cluster in 0..k_clusters {
        let members: Vec<usize> = (0..cols.len()).filter(|&i| assign[i] == cluster).collect();
        let pick = *members.choose(&mut rng).expect("clusters are non-empty");
        selected.push(m.index_names[cols[pick]].clone());
    }
    let assignments = cols
        .iter()
        .zip(&assign)
        .map(|(&c, &a)| (m.index_names[c].clone(), a))
        .collect();
    Ok(Selection {
        selected,
        assignments,
    })
}

/// Fixed orderings of the train and validation samples for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingTable {
    pub index: String,
    pub order: SortOrder,
    pub train_order: Vec<usize>,
    pub val_order: Vec<usize>,
}

impl RankingTable {
    pub fn name(&self) -> String {
        pair_name(&self.index, self.order)
    }
}

/// Orders `(sample_id, score)` entries; ties always go to the smaller id.
pub fn order_by(scores: &[(usize, f64)], order: SortOrder) -> Vec<usize> {
    let n = scores.len() as f64;
    let key: Vec<(usize, f64)> = match order {
        SortOrder::Ascending | SortOrder::Descending => scores.to_vec(),
        SortOrder::MediumAscending | SortOrder::MediumDescending => {
            let mean = scores.iter().map(|s| s.1).sum::<f64>() / n;
            let std = (scores.iter().map(|s| (s.1 - mean).powi(2)).sum::<f64>() / n).sqrt();
            scores
                .iter()
                .map(|&(id, v)| (id, if std > 0.0 { ((v - mean) / std).abs() } else { 0.0 }))
                .collect()
        }
    };
    let mut sorted = key;
    let descending = matches!(order, SortOrder::Descending | SortOrder::MediumDescending);
    sorted.sort_by(|a, b| {
        let by_score = if descending {
            b.1.total_cmp(&a.1)
        } else {
            a.1.total_cmp(&b.1)
        };
        by_score.then(a.0.cmp(&b.0))
    });
    sorted.into_iter().map(|(id, _)| id).collect()
}

fn split_scores(m: &IndexMatrix, split: Split, score: impl Fn(usize) -> f64) -> Vec<(usize, f64)> {
    m.rows_in(split)
        .into_iter()
        .map(|r| (m.sample_ids[r], score(r)))
        .collect()
}

pub fn rank_samples(m: &IndexMatrix, index: &str, order: SortOrder) -> Result<RankingTable> {
    let col = m
        .column_of(index)
        .ok_or_else(|| Error::Config(format!("index {index:?} not in matrix")))?;
    let score = |r: usize| m.normalized_at(r, col);
    Ok(RankingTable {
        index: index.to_string(),
        order,
        train_order: order_by(&split_scores(m, Split::Train, score), order),
        val_order: order_by(&split_scores(m, Split::Validation, score), order),
    })
}

/// Every (index, order) combination, index-major.
pub fn build_pairs(m: &IndexMatrix, indices: &[String], orders: &[SortOrder]) -> Result<Vec<RankingTable>> {
    let mut out = Vec::with_capacity(indices.len() * orders.len());
    for index in indices {
        for &order in orders {
            out.push(rank_samples(m, index, order)?);
        }
    }
    Ok(out)
}

/// Name of the summed difficulty column used by the competence-only baseline.
pub const SUMMED_INDEX: &str = "summed";

/// Ascending ranking by the sum of the given normalized columns.
pub fn summed_ranking(m: &IndexMatrix, indices: &[String]) -> Result<RankingTable> {
    let cols = indices
        .iter()
        .map(|i| m.column_of(i).ok_or_else(|| Error::Config(format!("index {i:?} not in matrix"))))
        .collect::<Result<Vec<_>>>()?;
    let score = |r: usize| cols.iter().map(|&c| m.normalized_at(r, c)).sum::<f64>();
    Ok(RankingTable {
        index: SUMMED_INDEX.to_string(),
        order: SortOrder::Ascending,
        train_order: order_by(&split_scores(m, Split::Train, score), SortOrder::Ascending),
        val_order: order_by(&split_scores(m, Split::Validation, score), SortOrder::Ascending),
    })
}
