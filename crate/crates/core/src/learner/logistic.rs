use std::fs;
use std::path::Path;

use crate::dataset::{Dataset, Task};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::Learner;

/// `[own features || mean of neighbor features]`; isolated nodes get a zero
/// second half.
pub fn neighbor_features(g: &Graph, node: usize) -> Result<Vec<f64>> {
    let features = g
        .features
        .as_ref()
        .ok_or_else(|| Error::Config("the learner needs node features".into()))?;
    if node >= g.node_count() {
        return Err(Error::Domain(format!("node {node} not in graph")));
    }
    let mut out = features.row(node).to_vec();
    let mut mean = vec![0.0; features.dim];
    let nb = g.neighbors(node);
    for &w in nb {
        for (m, v) in mean.iter_mut().zip(features.row(w)) {
            *m += v;
        }
    }
    if !nb.is_empty() {
        for m in &mut mean {
            *m /= nb.len() as f64;
        }
    }
    out.extend(mean);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            learning_rate: 0.2,
            batch_size: 32,
            seed: 0,
        }
    }
}

/// Logistic model over one round of mean neighbor aggregation.
///
/// Node samples use a softmax over `classes x (dim + 1)` weights (last column
/// is the bias). Link samples score `sigmoid(h_u^T M h_v + b)` with a
/// `dim x dim` matrix `M` followed by the scalar `b`. Parameters start at
/// zero, so an untrained model is uniform.
#[derive(Debug, Clone)]
pub struct NeighborLogisticLearner {
    task: Task,
    reps: Vec<Vec<f64>>,
    targets: Vec<Vec<usize>>,
    labels: Vec<usize>,
    classes: usize,
    dim: usize,
    params: Vec<f64>,
    config: LearnerConfig,
}

fn log_sum_exp(z: &[f64]) -> f64 {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + z.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl NeighborLogisticLearner {
    pub fn new(data: &Dataset, config: LearnerConfig) -> Result<Self> {
        if config.batch_size == 0 || !config.learning_rate.is_finite() || config.learning_rate <= 0.0 {
            return Err(Error::Config("learner needs batch_size > 0 and learning_rate > 0".into()));
        }
        let reps = (0..data.graph.node_count())
            .map(|v| neighbor_features(&data.graph, v))
            .collect::<Result<Vec<_>>>()?;
        let dim = reps.first().map_or(0, Vec::len);
        let classes = data.class_count().max(2);
        let n_params = match data.task {
            Task::NodeClassification => classes * (dim + 1),
            Task::LinkPrediction => dim * dim + 1,
        };
        Ok(NeighborLogisticLearner {
            task: data.task,
            reps,
            targets: data.samples.iter().map(|s| s.targets.clone()).collect(),
            labels: data.samples.iter().map(|s| s.label).collect(),
            classes,
            dim,
            params: vec![0.0; n_params],
            config,
        })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn input_dim(&self) -> usize {
        self.dim
    }

    pub fn config(&self) -> &LearnerConfig {
        &self.config
    }

    fn check(&self, id: usize) -> Result<()> {
        if id < self.labels.len() {
            Ok(())
        } else {
            Err(Error::Learner(format!("unknown sample id {id}")))
        }
    }

    fn node_logits(&self, id: usize) -> Vec<f64> {
        let x = &self.reps[self.targets[id][0]];
        let w = self.dim + 1;
        (0..self.classes)
            .map(|c| {
                let row = &self.params[c * w..(c + 1) * w];
                row[..self.dim].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + row[self.dim]
            })
            .collect()
    }

    fn link_score(&self, id: usize) -> f64 {
        let (hu, hv) = (&self.reps[self.targets[id][0]], &self.reps[self.targets[id][1]]);
        let mut s = self.params[self.dim * self.dim];
        for (i, a) in hu.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            let row = &self.params[i * self.dim..(i + 1) * self.dim];
            s += a * row.iter().zip(hv).map(|(m, b)| m * b).sum::<f64>();
        }
        s
    }

    /// Full predictive distribution of one sample.
    pub fn class_probabilities(&self, id: usize) -> Result<Vec<f64>> {
        self.check(id)?;
        Ok(match self.task {
            Task::NodeClassification => {
                let z = self.node_logits(id);
                let lse = log_sum_exp(&z);
                z.iter().map(|v| (v - lse).exp()).collect()
            }
            Task::LinkPrediction => {
                let p = sigmoid(self.link_score(id));
                vec![1.0 - p, p]
            }
        })
    }

    fn sample_loss(&self, id: usize) -> f64 {
        let y = self.labels[id];
        match self.task {
            Task::NodeClassification => {
                let z = self.node_logits(id);
                log_sum_exp(&z) - z[y]
            }
            Task::LinkPrediction => {
                let s = self.link_score(id);
                softplus(s) - if y == 1 { s } else { 0.0 }
            }
        }
    }

    fn predict(&self, id: usize) -> usize {
        match self.task {
            Task::NodeClassification => {
                let z = self.node_logits(id);
                // first maximum wins
                (1..z.len()).fold(0, |best, c| if z[c] > z[best] { c } else { best })
            }
            Task::LinkPrediction => usize::from(self.link_score(id) >= 0.0),
        }
    }

    /// Mean loss over `ids`.
    pub fn objective(&self, ids: &[usize]) -> Result<f64> {
        if ids.is_empty() {
            return Ok(0.0);
        }
        let losses = self.loss_of(ids)?;
        Ok(losses.iter().sum::<f64>() / ids.len() as f64)
    }

    /// Gradient of [`objective`](Self::objective) in parameter order.
    pub fn gradient(&self, ids: &[usize]) -> Result<Vec<f64>> {
        let mut g = vec![0.0; self.params.len()];
        if ids.is_empty() {
            return Ok(g);
        }
        let scale = 1.0 / ids.len() as f64;
        for &id in ids {
            self.check(id)?;
            let y = self.labels[id];
            match self.task {
                Task::NodeClassification => {
                    let x = &self.reps[self.targets[id][0]];
                    let p = self.class_probabilities(id)?;
                    let w = self.dim + 1;
                    for c in 0..self.classes {
                        let err = (p[c] - f64::from(u8::from(c == y))) * scale;
                        let row = &mut g[c * w..(c + 1) * w];
                        for (gj, xj) in row.iter_mut().zip(x) {
                            *gj += err * xj;
                        }
                        row[self.dim] += err;
                    }
                }
                Task::LinkPrediction => {
                    let (hu, hv) = (&self.reps[self.targets[id][0]], &self.reps[self.targets[id][1]]);
                    let err = (sigmoid(self.link_score(id)) - y as f64) * scale;
                    for (i, a) in hu.iter().enumerate() {
                        let row = &mut g[i * self.dim..(i + 1) * self.dim];
                        for (gj, b) in row.iter_mut().zip(hv) {
                            *gj += err * a * b;
                        }
                    }
                    g[self.dim * self.dim] += err;
                }
            }
        }
        Ok(g)
    }

    /// Writes `dims,classes,seed,task` then one parameter per line.
    pub fn save_checkpoint(&self, path: &Path) -> Result<()> {
        let task = match self.task {
            Task::NodeClassification => "node",
            Task::LinkPrediction => "link",
        };
        let mut out = format!(
            "dims,classes,seed,task\n{},{},{},{task}\nparam\n",
            self.dim, self.classes, self.config.seed
        );
        for p in &self.params {
            out.push_str(&format!("{p}\n"));
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn load_checkpoint(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines();
        let meta = lines.nth(1).ok_or_else(|| Error::parse(path, 2, "missing header values"))?;
        let f: Vec<&str> = meta.split(',').collect();
        if f.len() != 4 || f[0] != self.dim.to_string() || f[1] != self.classes.to_string() {
            return Err(Error::Schema(format!(
                "{}: checkpoint shape {meta:?} does not match this learner",
                path.display()
            )));
        }
        let params = lines
            .skip(1)
            .enumerate()
            .map(|(i, l)| {
                l.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(path, i + 4, format!("invalid parameter {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.restore(&params)
    }
}

impl Learner for NeighborLogisticLearner {
    fn train_on(&mut self, ids: &[usize]) -> Result<()> {
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        for batch in sorted.chunks(self.config.batch_size) {
            let g = self.gradient(batch)?;
            for (p, gi) in self.params.iter_mut().zip(g) {
                *p -= self.config.learning_rate * gi;
            }
        }
        Ok(())
    }

    fn loss_of(&self, ids: &[usize]) -> Result<Vec<f64>> {
        ids.iter()
            .map(|&id| self.check(id).map(|_| self.sample_loss(id)))
            .collect()
    }

    fn proba_of(&self, ids: &[usize]) -> Result<Vec<f64>> {
        ids.iter()
            .map(|&id| {
                let p = self.class_probabilities(id)?;
                Ok(p[self.labels[id]])
            })
            .collect()
    }

    fn eval_on(&self, ids: &[usize]) -> Result<f64> {
        if ids.is_empty() {
            return Err(Error::Domain("cannot evaluate on an empty sample set".into()));
        }
        for &id in ids {
            self.check(id)?;
        }
        match self.task {
            Task::NodeClassification => {
                let correct = ids.iter().filter(|&&id| self.predict(id) == self.labels[id]).count();
                Ok(correct as f64 / ids.len() as f64)
            }
            Task::LinkPrediction => {
                let (mut tp, mut fp, mut fneg) = (0usize, 0usize, 0usize);
                for &id in ids {
                    match (self.predict(id), self.labels[id]) {
                        (1, 1) => tp += 1,
                        (1, _) => fp += 1,
                        (_, 1) => fneg += 1,
                        _ => {}
                    }
                }
                let denom = 2 * tp + fp + fneg;
                // no positives predicted or present: nothing was missed
                Ok(if denom == 0 { 1.0 } else { 2.0 * tp as f64 / denom as f64 })
            }
        }
    }

    fn snapshot(&self) -> Vec<f64> {
        self.params.clone()
    }

    fn restore(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.params.len() {
            return Err(Error::Learner(format!(
                "expected {} parameters, got {}",
                self.params.len(),
                params.len()
            )));
        }
        self.params.copy_from_slice(params);
        Ok(())
    }
}
