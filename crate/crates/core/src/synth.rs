//! Seeded planted-partition datasets with class-correlated features and
//! synthetic node texts of varying readability.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::{parse_samples, parse_texts, Dataset, Task};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, parse_features, parse_labels};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub nodes: usize,
    pub blocks: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub dim: usize,
    /// Magnitude of each class-centroid coordinate; noise has unit variance.
    pub signal: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            nodes: 400,
            blocks: 2,
            p_in: 0.05,
            p_out: 0.005,
            dim: 16,
            signal: 0.3,
            seed: 7,
        }
    }
}

/// Contents of the generated files.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthData {
    pub edges: String,
    pub features: String,
    pub labels: String,
    pub texts: String,
    pub splits: String,
    pub link_splits: String,
}

pub const FILE_NAMES: [&str; 6] = [
    "edges.txt",
    "features.csv",
    "labels.txt",
    "texts.tsv",
    "splits.txt",
    "link_splits.txt",
];

const EASY_WORDS: [&str; 16] = [
    "the", "cat", "sat", "on", "a", "mat", "dog", "ran", "to", "big", "red", "box", "we", "see", "it",
    "sun",
];
const HARD_WORDS: [&str; 12] = [
    "communication",
    "infrastructure",
    "approximately",
    "heterogeneous",
    "probability",
    "representation",
    "significantly",
    "optimization",
    "interpretation",
    "organization",
    "regularization",
    "individuality",
];

fn split_name(rank: usize, n: usize) -> &'static str {
    if rank * 10 < n * 6 {
        "train"
    } else if rank * 10 < n * 8 {
        "val"
    } else {
        "test"
    }
}

fn sentence(rng: &mut ChaCha8Rng, hard_share: f64) -> String {
    let len = rng.gen_range(4..16);
    let words: Vec<&str> = (0..len)
        .map(|_| {
            if rng.gen::<f64>() < hard_share {
                HARD_WORDS[rng.gen_range(0..HARD_WORDS.len())]
            } else {
                EASY_WORDS[rng.gen_range(0..EASY_WORDS.len())]
            }
        })
        .collect();
    let mut s = words.join(" ");
    if let Some(first) = s.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    s.push('.');
    s
}

pub fn generate(p: &SynthParams) -> Result<SynthData> {
    if p.nodes < 10 || p.blocks == 0 || p.blocks > p.nodes || p.dim == 0 {
        return Err(Error::Config("synth needs >= 10 nodes, 1..=nodes blocks and dim >= 1".into()));
    }
    for prob in [p.p_in, p.p_out] {
        if !(0.0..=1.0).contains(&prob) {
            return Err(Error::Config(format!("edge probability {prob} outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let block = |v: usize| v * p.blocks / p.nodes;

    let mut edges = format!("# nodes: {}\n", p.nodes);
    let mut edge_list = Vec::new();
    for u in 0..p.nodes {
        for v in u + 1..p.nodes {
            let prob = if block(u) == block(v) { p.p_in } else { p.p_out };
            if rng.gen::<f64>() < prob {
                edges.push_str(&format!("{u} {v}\n"));
                edge_list.push((u, v));
            }
        }
    }

    let centroids: Vec<Vec<f64>> = (0..p.blocks)
        .map(|_| {
            (0..p.dim)
                .map(|_| if rng.gen::<bool>() { p.signal } else { -p.signal })
                .collect()
        })
        .collect();
    let mut features = String::from("node");
    for d in 0..p.dim {
        features.push_str(&format!(",f{d}"));
    }
    features.push('\n');
    for v in 0..p.nodes {
        features.push_str(&v.to_string());
        for c in &centroids[block(v)] {
            let noise: f64 = rng.sample(StandardNormal);
            features.push_str(&format!(",{:.6}", c + noise));
        }
        features.push('\n');
    }

    let labels: String = (0..p.nodes).map(|v| format!("{v} {}\n", block(v))).collect();

    let mut texts = String::new();
    for v in 0..p.nodes {
        let hard_share = rng.gen::<f64>() * 0.5;
        let count = rng.gen_range(1..5);
        let body: Vec<String> = (0..count).map(|_| sentence(&mut rng, hard_share)).collect();
        texts.push_str(&format!("{v}\t{}\n", body.join(" ")));
    }

    let mut order: Vec<usize> = (0..p.nodes).collect();
    order.shuffle(&mut rng);
    let mut split_of = vec![""; p.nodes];
    for (rank, &v) in order.iter().enumerate() {
        split_of[v] = split_name(rank, p.nodes);
    }
    let splits: String = (0..p.nodes).map(|v| format!("{} {v}\n", split_of[v])).collect();

    let mut negatives = Vec::with_capacity(edge_list.len());
    let mut taken: std::collections::HashSet<(usize, usize)> = edge_list.iter().copied().collect();
    let max_pairs = p.nodes * (p.nodes - 1) / 2;
    while negatives.len() < edge_list.len() && taken.len() < max_pairs {
        let (a, b) = (rng.gen_range(0..p.nodes), rng.gen_range(0..p.nodes));
        let (u, v) = (a.min(b), a.max(b));
        if u != v && taken.insert((u, v)) {
            negatives.push((u, v));
        }
    }
    let mut links: Vec<(usize, usize, u8)> = edge_list
        .iter()
        .map(|&(u, v)| (u, v, 1))
        .chain(negatives.iter().map(|&(u, v)| (u, v, 0)))
        .collect();
    links.shuffle(&mut rng);
    let n_links = links.len();
    let link_splits: String = links
        .iter()
        .enumerate()
        .map(|(rank, (u, v, y))| format!("{} {u} {v} {y}\n", split_name(rank, n_links)))
        .collect();

    Ok(SynthData {
        edges,
        features,
        labels,
        texts,
        splits,
        link_splits,
    })
}

impl SynthData {
    fn contents(&self) -> [&str; 6] {
        [
            &self.edges,
            &self.features,
            &self.labels,
            &self.texts,
            &self.splits,
            &self.link_splits,
        ]
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, body) in FILE_NAMES.iter().zip(self.contents()) {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }

    /// Parses the generated files exactly as they would load from disk.
    pub fn dataset(&self, task: Task) -> Result<Dataset> {
        let p = |name: &str| Path::new(name).to_path_buf();
        let mut g = parse_edge_list(&p(FILE_NAMES[0]), &self.edges)?;
        g.features = Some(parse_features(&p(FILE_NAMES[1]), &self.features, g.node_count())?);
        g.labels = Some(parse_labels(&p(FILE_NAMES[2]), &self.labels, g.node_count())?);
        let texts = parse_texts(&p(FILE_NAMES[3]), &self.texts, g.node_count())?;
        let (name, body) = match task {
            Task::NodeClassification => (FILE_NAMES[4], &self.splits),
            Task::LinkPrediction => (FILE_NAMES[5], &self.link_splits),
        };
        let samples = parse_samples(&p(name), body, &g, task)?;
        Dataset::new(g, samples, Some(texts), task)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Split;

    #[test]
    fn deterministic_and_loadable() {
        let p = SynthParams {
            nodes: 60,
            ..SynthParams::default()
        };
        let a = generate(&p).unwrap();
        assert_eq!(a, generate(&p).unwrap());
        let node = a.dataset(Task::NodeClassification).unwrap();
        assert_eq!(node.samples.len(), 60);
        assert_eq!(node.ids_in(Split::Train).len(), 36);
        assert_eq!(node.class_count(), 2);
        let link = a.dataset(Task::LinkPrediction).unwrap();
        let positives = link.samples.iter().filter(|s| s.label == 1).count();
        assert_eq!(positives, node.graph.edges().len());
        let other = generate(&SynthParams { seed: 8, ..p }).unwrap();
        assert_ne!(a.edges, other.edges);
    }
}
