//! Spaced-repetition scheduling over (index, order) pairs.
//!
//! Every pair carries a real-valued delay. At each epoch the pairs with delay
//! at most 1 are *current*: the learner trains one pass on each current
//! pair's top `n * c(t)` training samples, and the pair's delay is then
//! re-estimated from the learner's losses on its top `m * c(t)` validation
//! samples. Pairs with a larger delay are skipped and count down by one.
//!
//! [`Scheduler`] exposes this as a plan/report step API so that an external
//! training loop can drive it; [`run_training`] is the native loop built on
//! the same two calls.

mod kernel;

pub use kernel::{
    compute_delay, fit_tau, kernel_eval, kernel_eval_with, scaled_difficulty, solve_delay_x,
    solve_delay_x_with, KernelKind, RecallSample, TauBounds, GAMMA_FLOOR, LOSS_EPS,
};

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::competence::{competence, count_for, CompetenceParams};
use crate::error::{Error, Result};
use crate::learner::{sorted_unique, train_selections, BestCheckpoint, Learner, RunOutcome};
use crate::pipeline::RankingTable;
use crate::records::{CurriculumRecord, RecordEntry, RecordHeader, RECORD_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayPolicy {
    /// Delays estimated from the learner's losses.
    Spaced,
    /// Every pair stays current every epoch.
    Pinned,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchedulerConfig {
    pub kernel: KernelKind,
    /// Recall threshold in (0, 1).
    pub eta: f64,
    pub competence: CompetenceParams,
    pub tau_bounds: TauBounds,
    pub delay_policy: DelayPolicy,
    /// Train once on the union of current selections instead of once per pair.
    pub dedup_training: bool,
    pub literal_cosine: bool,
    /// Run seed, carried into the record.
    pub seed: u64,
}

impl SchedulerConfig {
    pub fn new(kernel: KernelKind, eta: f64, competence: CompetenceParams) -> Self {
        SchedulerConfig {
            kernel,
            eta,
            competence,
            tau_bounds: TauBounds::default(),
            delay_policy: DelayPolicy::Spaced,
            dedup_training: false,
            literal_cosine: false,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::Config(format!("eta {} outside (0, 1)", self.eta)));
        }
        let b = self.tau_bounds;
        if !(b.min > 0.0 && b.min < b.max && b.max.is_finite()) {
            return Err(Error::Config(format!("tau bounds [{}, {}] invalid", b.min, b.max)));
        }
        self.competence.validate()
    }
}

/// What a pair looked like at its last activation.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub sample_ids: Vec<usize>,
    pub losses: Vec<f64>,
    pub gamma: f64,
    pub epoch: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    pub name: String,
    pub delay: f64,
    pub tau: f64,
    pub snapshot: Option<Snapshot>,
}

/// Selections for one epoch. `current`, `train_batches` and `val_batches`
/// are aligned and follow pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochPlan {
    pub epoch: usize,
    pub competence: f64,
    pub current: Vec<usize>,
    pub delayed: Vec<usize>,
    pub train_batches: Vec<Vec<usize>>,
    pub val_batches: Vec<Vec<usize>>,
    /// Sorted union of the training batches.
    pub train_selection: Vec<usize>,
}

/// Learner outputs on one current pair's validation batch.
#[derive(Debug, Clone, PartialEq)]
pub struct PairEval {
    pub losses: Vec<f64>,
    pub probas: Vec<f64>,
    pub performance: f64,
}

#[derive(Debug, Clone)]
pub struct Scheduler {
    config: SchedulerConfig,
    pairs: Vec<RankingTable>,
    states: Vec<PairState>,
    epoch: usize,
    entries: Vec<RecordEntry>,
}

fn same_members(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && sorted_unique(a.iter().copied()) == sorted_unique(b.iter().copied())
}

impl Scheduler {
    pub fn new(config: SchedulerConfig, pairs: Vec<RankingTable>) -> Result<Self> {
        config.validate()?;
        let first = pairs
            .first()
            .ok_or_else(|| Error::Config("the scheduler needs at least one pair".into()))?;
        if first.train_order.is_empty() || first.val_order.is_empty() {
            return Err(Error::Domain("rankings need train and validation samples".into()));
        }
        let mut names = HashSet::new();
        for p in &pairs {
            if !names.insert(p.name()) {
                return Err(Error::Config(format!("duplicate pair {}", p.name())));
            }
            let unique = sorted_unique(p.train_order.iter().copied()).len() == p.train_order.len()
                && sorted_unique(p.val_order.iter().copied()).len() == p.val_order.len();
            if !unique
                || !same_members(&p.train_order, &first.train_order)
                || !same_members(&p.val_order, &first.val_order)
            {
                return Err(Error::Config(format!(
                    "ranking {} does not cover the splits exactly once",
                    p.name()
                )));
            }
        }
        let states = pairs
            .iter()
            .map(|p| PairState {
                name: p.name(),
                delay: 1.0,
                tau: 1.0,
                snapshot: None,
            })
            .collect();
        Ok(Scheduler {
            config,
            pairs,
            states,
            epoch: 0,
            entries: Vec::new(),
        })
    }

    pub fn config(&self) -> &SchedulerConfig {
        &self.config
    }

    pub fn pairs(&self) -> &[RankingTable] {
        &self.pairs
    }

    pub fn states(&self) -> &[PairState] {
        &self.states
    }

    /// Index of the next epoch to plan.
    pub fn epoch(&self) -> usize {
        self.epoch
    }

    pub fn is_finished(&self) -> bool {
        self.epoch >= self.config.competence.epochs
    }

    pub fn entries(&self) -> &[RecordEntry] {
        &self.entries
    }

    /// The selections of the next epoch. Calling it repeatedly without a
    /// report returns the same plan.
    pub fn plan(&self) -> Result<EpochPlan> {
        if self.is_finished() {
            return Err(Error::Protocol(format!(
                "all {} epochs have been reported",
                self.config.competence.epochs
            )));
        }
        let p = &self.config.competence;
        let c = competence(p.epoch_time(self.epoch), p)?;
        let (current, delayed): (Vec<usize>, Vec<usize>) =
            (0..self.pairs.len()).partition(|&i| self.states[i].delay <= 1.0);
        let top = |order: &[usize]| order[..count_for(c, order.len())].to_vec();
        let train_batches: Vec<Vec<usize>> =
            current.iter().map(|&i| top(&self.pairs[i].train_order)).collect();
        let val_batches = current.iter().map(|&i| top(&self.pairs[i].val_order)).collect();
        let train_selection = sorted_unique(train_batches.iter().flatten().copied());
        Ok(EpochPlan {
            epoch: self.epoch,
            competence: c,
            current,
            delayed,
            train_batches,
            val_batches,
            train_selection,
        })
    }

    /// Applies the learner's outputs for the planned epoch and advances.
    /// `evals` aligns with the plan's current pairs; `validation` is the
    /// full-validation score to log, if any. Nothing changes on error.
    pub fn report(&mut self, evals: &[PairEval], validation: Option<f64>) -> Result<&RecordEntry> {
        let plan = self.plan()?;
        if evals.len() != plan.current.len() {
            return Err(Error::Protocol(format!(
                "expected evaluations for {} current pairs, got {}",
                plan.current.len(),
                evals.len()
            )));
        }
        for ((ev, batch), &i) in evals.iter().zip(&plan.val_batches).zip(&plan.current) {
            let name = &self.states[i].name;
            if ev.losses.len() != batch.len() || ev.probas.len() != batch.len() {
                return Err(Error::Protocol(format!(
                    "{name}: expected {} losses and probabilities, got {} and {}",
                    batch.len(),
                    ev.losses.len(),
                    ev.probas.len()
                )));
            }
            let bad_loss = ev.losses.iter().any(|d| !(d.is_finite() && *d >= 0.0));
            let bad_p = ev.probas.iter().any(|p| !(0.0..=1.0).contains(p));
            if bad_loss || bad_p || !ev.performance.is_finite() {
                return Err(Error::Learner(format!("{name}: non-finite or out-of-range outputs")));
            }
        }
        let cfg = &self.config;
        let remaining = cfg.competence.epochs.saturating_sub(plan.epoch + 1).max(1) as f64;
        let updates: Vec<(f64, f64, Snapshot)> = plan
            .current
            .par_iter()
            .zip(evals.par_iter())
            .zip(plan.val_batches.par_iter())
            .map(|((&i, ev), batch)| self.update_pair(&self.states[i], ev, batch, plan.epoch, remaining))
            .collect();
        for &i in &plan.delayed {
            let s = &mut self.states[i];
            s.delay = (s.delay - 1.0).max(0.0);
        }
        for (&i, (tau, delay, snap)) in plan.current.iter().zip(updates) {
            let s = &mut self.states[i];
            s.tau = tau;
            s.delay = delay;
            s.snapshot = Some(snap);
        }
        let mut used = vec![false; self.pairs.len()];
        for &i in &plan.current {
            used[i] = true;
        }
        self.entries.push(RecordEntry {
            epoch: plan.epoch,
            competence: plan.competence,
            current: plan.current.iter().map(|&i| self.states[i].name.clone()).collect(),
            delays: self.states.iter().map(|s| s.delay).collect(),
            used,
            presented: plan.train_selection.len(),
            val_perf: validation,
        });
        self.epoch += 1;
        Ok(self.entries.last().expect("just pushed"))
    }

    /// New (tau, delay, snapshot) for a pair that was just trained.
    fn update_pair(
        &self,
        state: &PairState,
        ev: &PairEval,
        batch: &[usize],
        epoch: usize,
        remaining: f64,
    ) -> (f64, f64, Snapshot) {
        let cfg = &self.config;
        let gamma = ev.performance.max(GAMMA_FLOOR);
        let mut tau = state.tau;
        if let Some(snap) = &state.snapshot {
            let old: HashMap<usize, f64> =
                snap.sample_ids.iter().copied().zip(snap.losses.iter().copied()).collect();
            let dt = (epoch - snap.epoch) as f64;
            let samples: Vec<RecallSample> = batch
                .iter()
                .zip(&ev.probas)
                .filter_map(|(id, &p)| {
                    old.get(id).map(|&d| RecallSample {
                        x: scaled_difficulty(d, dt, snap.gamma),
                        p,
                    })
                })
                .collect();
            if let Some(t) = fit_tau(cfg.kernel, &samples, cfg.eta, cfg.tau_bounds, cfg.literal_cosine) {
                tau = t;
            }
        }
        let delay = match cfg.delay_policy {
            DelayPolicy::Pinned => 1.0,
            DelayPolicy::Spaced => {
                let x_star = solve_delay_x_with(cfg.kernel, cfg.eta, tau, cfg.literal_cosine);
                compute_delay(x_star, gamma, &ev.losses, remaining)
            }
        };
        let snapshot = Snapshot {
            sample_ids: batch.to_vec(),
            losses: ev.losses.clone(),
            gamma,
            epoch,
        };
        (tau, delay, snapshot)
    }

    /// Hex SHA-256 over the configuration and pair list.
    pub fn config_hash(&self) -> String {
        let names: Vec<&str> = self.states.iter().map(|s| s.name.as_str()).collect();
        let canonical = serde_json::to_string(&(&self.config, names)).expect("config serializes");
        Sha256::digest(canonical.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Header plus the entries reported so far.
    pub fn record(&self) -> CurriculumRecord {
        let c = &self.config;
        CurriculumRecord {
            header: RecordHeader {
                version: RECORD_VERSION,
                config_hash: self.config_hash(),
                seed: c.seed,
                pairs: self.states.iter().map(|s| s.name.clone()).collect(),
                epochs: c.competence.epochs,
                c0: c.competence.c0,
                alpha: c.competence.alpha,
                kernel: c.kernel,
                eta: c.eta,
                n_train: self.pairs[0].train_order.len(),
                n_val: self.pairs[0].val_order.len(),
                dedup_training: c.dedup_training,
            },
            entries: self.entries.clone(),
        }
    }
}

/// Scores each current pair's validation batch with the learner.
pub fn evaluate_plan<L: Learner + ?Sized>(learner: &L, plan: &EpochPlan) -> Result<Vec<PairEval>> {
    plan.val_batches
        .iter()
        .map(|batch| {
            Ok(PairEval {
                losses: learner.loss_of(batch)?,
                probas: learner.proba_of(batch)?,
                performance: learner.eval_on(batch)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingRun {
    pub outcome: RunOutcome,
    pub record: CurriculumRecord,
    /// Pair delays after every epoch.
    pub delays: Vec<Vec<f64>>,
}

/// The native epoch loop: plan, train, evaluate, report. The learner ends
/// at its best full-validation checkpoint.
pub fn run_training<L: Learner + ?Sized>(
    config: SchedulerConfig,
    pairs: Vec<RankingTable>,
    learner: &mut L,
    val_ids: &[usize],
) -> Result<TrainingRun> {
    let mut scheduler = Scheduler::new(config, pairs)?;
    let mut best = BestCheckpoint::new();
    let mut trace = Vec::with_capacity(config.competence.epochs);
    let mut delays = Vec::with_capacity(config.competence.epochs);
    while !scheduler.is_finished() {
        let plan = scheduler.plan()?;
        let selection = train_selections(learner, &plan.train_batches, config.dedup_training)?;
        let evals = evaluate_plan(learner, &plan)?;
        let v = best.observe(plan.epoch, learner, val_ids)?;
        let entry = scheduler.report(&evals, Some(v))?;
        log::debug!(
            "epoch {}: c={:.3} current={} presented={} val={v:.4}",
            entry.epoch,
            entry.competence,
            entry.current.len(),
            entry.presented
        );
        delays.push(entry.delays.clone());
        trace.push(selection);
    }
    let record = scheduler.record();
    Ok(TrainingRun {
        outcome: best.finish(learner, trace)?,
        record,
        delays,
    })
}
