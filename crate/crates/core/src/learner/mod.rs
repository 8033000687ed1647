//! The learner contract, the built-in desk-scale learner, and the two
//! reference schedules (standard training and competence-only curricula).

mod logistic;

pub use logistic::{neighbor_features, LearnerConfig, NeighborLogisticLearner};

use crate::competence::{active_count, CompetenceParams};
use crate::error::{Error, Result};
use crate::pipeline::RankingTable;

/// What a scheduler needs from a model. Sample ids index the dataset's sample
/// table. `loss_of`, `proba_of` and `eval_on` must not change parameters.
pub trait Learner {
    /// One optimization pass over `ids`.
    fn train_on(&mut self, ids: &[usize]) -> Result<()>;
    fn loss_of(&self, ids: &[usize]) -> Result<Vec<f64>>;
    /// Probability assigned to each sample's correct class.
    fn proba_of(&self, ids: &[usize]) -> Result<Vec<f64>>;
    /// Accuracy for classification, F1 for links.
    fn eval_on(&self, ids: &[usize]) -> Result<f64>;
    fn snapshot(&self) -> Vec<f64>;
    fn restore(&mut self, params: &[f64]) -> Result<()>;
}

/// Per-epoch training selections and validation scores of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Sorted, deduplicated sample ids presented at each epoch.
    pub trace: Vec<Vec<usize>>,
    /// Full-validation performance after each epoch.
    pub val_history: Vec<f64>,
    pub best_epoch: usize,
    pub best_val: f64,
}

impl RunOutcome {
    pub fn presented(&self) -> usize {
        self.trace.iter().map(Vec::len).sum()
    }
}

/// Tracks the best full-validation checkpoint; ties keep the earliest epoch.
pub(crate) struct BestCheckpoint {
    best: Option<(usize, f64, Vec<f64>)>,
    history: Vec<f64>,
}

impl BestCheckpoint {
    pub(crate) fn new() -> Self {
        BestCheckpoint {
            best: None,
            history: Vec::new(),
        }
    }

    pub(crate) fn observe<L: Learner + ?Sized>(&mut self, epoch: usize, learner: &L, val_ids: &[usize]) -> Result<f64> {
        let v = learner.eval_on(val_ids)?;
        if self.best.as_ref().is_none_or(|(_, b, _)| v > *b) {
            self.best = Some((epoch, v, learner.snapshot()));
        }
        self.history.push(v);
        Ok(v)
    }

    pub(crate) fn finish<L: Learner + ?Sized>(self, learner: &mut L, trace: Vec<Vec<usize>>) -> Result<RunOutcome> {
        let (best_epoch, best_val, params) = self
            .best
            .ok_or_else(|| Error::Config("a run needs at least one epoch".into()))?;
        learner.restore(&params)?;
        Ok(RunOutcome {
            trace,
            val_history: self.history,
            best_epoch,
            best_val,
        })
    }
}

pub(crate) fn sorted_unique(ids: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = ids.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Trains one pass per batch (or a single pass over their union when
/// `dedup` is set) and returns the sorted union.
pub(crate) fn train_selections<L: Learner + ?Sized>(
    learner: &mut L,
    batches: &[Vec<usize>],
    dedup: bool,
) -> Result<Vec<usize>> {
    let union = sorted_unique(batches.iter().flatten().copied());
    if dedup {
        learner.train_on(&union)?;
    } else {
        for batch in batches {
            learner.train_on(batch)?;
        }
    }
    Ok(union)
}

/// Standard training: every training sample at every epoch.
pub fn baseline_nocl<L: Learner + ?Sized>(
    learner: &mut L,
    train_ids: &[usize],
    val_ids: &[usize],
    epochs: usize,
) -> Result<RunOutcome> {
    if train_ids.is_empty() {
        return Err(Error::Domain("empty training split".into()));
    }
    let all = sorted_unique(train_ids.iter().copied());
    let mut best = BestCheckpoint::new();
    let mut trace = Vec::with_capacity(epochs);
    for epoch in 0..epochs {
        learner.train_on(&all)?;
        trace.push(all.clone());
        best.observe(epoch, learner, val_ids)?;
    }
    best.finish(learner, trace)
}

/// Competence-only curriculum: the top `n * c(t)` of one fixed ranking.
pub fn baseline_ccl<L: Learner + ?Sized>(
    learner: &mut L,
    ranking: &RankingTable,
    val_ids: &[usize],
    competence: &CompetenceParams,
) -> Result<RunOutcome> {
    competence.validate()?;
    let n = ranking.train_order.len();
    if n == 0 {
        return Err(Error::Domain("empty training split".into()));
    }
    let mut best = BestCheckpoint::new();
    let mut trace = Vec::with_capacity(competence.epochs);
    for epoch in 0..competence.epochs {
        let count = active_count(epoch, n, competence);
        let selection = sorted_unique(ranking.train_order[..count].iter().copied());
        learner.train_on(&selection)?;
        trace.push(selection);
        best.observe(epoch, learner, val_ids)?;
    }
    best.finish(learner, trace)
}
