//! Curriculum records: persistence as JSON lines, replay onto other data,
//! and usage reports.
//!
//! The first line holds a [`RecordHeader`]; every following line holds one
//! [`RecordEntry`]. See `docs/record-format.md` for the field list.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::competence::count_for;
use crate::error::{Error, Result};
use crate::learner::{train_selections, BestCheckpoint, Learner, RunOutcome};
use crate::pipeline::{parse_pair_name, IndexKind, RankingTable, SUMMED_INDEX};
use crate::scheduler::KernelKind;

pub const RECORD_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordHeader {
    pub version: u32,
    /// Hex SHA-256 of the scheduler configuration.
    pub config_hash: String,
    pub seed: u64,
    pub pairs: Vec<String>,
    pub epochs: usize,
    pub c0: f64,
    pub alpha: f64,
    pub kernel: KernelKind,
    pub eta: f64,
    pub n_train: usize,
    pub n_val: usize,
    pub dedup_training: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub epoch: usize,
    pub competence: f64,
    /// Pairs trained this epoch, in header order.
    pub current: Vec<String>,
    /// Delay of every header pair after this epoch's update.
    pub delays: Vec<f64>,
    /// Whether each header pair was trained this epoch.
    pub used: Vec<bool>,
    /// Distinct training samples presented.
    pub presented: usize,
    /// Full-validation performance after the epoch, when known.
    pub val_perf: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurriculumRecord {
    pub header: RecordHeader,
    pub entries: Vec<RecordEntry>,
}

impl CurriculumRecord {
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Schema("record: missing header".into()))?;
        let header: RecordHeader = serde_json::from_str(first)
            .map_err(|e| Error::Schema(format!("record header: {e}")))?;
        if header.version != RECORD_VERSION {
            return Err(Error::Schema(format!(
                "record version {} not supported (expected {RECORD_VERSION})",
                header.version
            )));
        }
        let entries = lines
            .enumerate()
            .map(|(i, l)| {
                serde_json::from_str::<RecordEntry>(l)
                    .map_err(|e| Error::Schema(format!("record entry {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let record = CurriculumRecord { header, entries };
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.header;
        if self.entries.len() != h.epochs {
            return Err(Error::Schema(format!(
                "record has {} entries but declares {} epochs",
                self.entries.len(),
                h.epochs
            )));
        }
        let mut prev = 0.0;
        for (i, e) in self.entries.iter().enumerate() {
            let bad = |msg: String| Err(Error::Schema(format!("record entry {i}: {msg}")));
            if e.epoch != i {
                return bad(format!("epoch {} out of sequence", e.epoch));
            }
            if e.delays.len() != h.pairs.len() || e.used.len() != h.pairs.len() {
                return bad("delays/used do not match the pair list".into());
            }
            if !(0.0..=1.0).contains(&e.competence) || e.competence < prev {
                return bad(format!("competence {} invalid or decreasing", e.competence));
            }
            prev = e.competence;
            let flagged: Vec<&String> = h.pairs.iter().zip(&e.used).filter(|(_, &u)| u).map(|(p, _)| p).collect();
            if flagged.len() != e.current.len() || flagged.iter().zip(&e.current).any(|(a, b)| *a != b) {
                return bad("current pairs disagree with usage flags".into());
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_jsonl()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_jsonl(&text).map_err(|e| match e {
            Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

/// Replays the recorded competence and current pairs onto `pairs`, which
/// may come from another dataset: each epoch trains on the top
/// `n_target * c` samples of exactly the recorded pairs. No delays are
/// computed.
pub fn replay<L: Learner + ?Sized>(
    record: &CurriculumRecord,
    pairs: &[RankingTable],
    learner: &mut L,
    val_ids: &[usize],
) -> Result<RunOutcome> {
    record.validate()?;
    let by_name: HashMap<String, &RankingTable> = pairs.iter().map(|p| (p.name(), p)).collect();
    let missing: Vec<String> = record
        .header
        .pairs
        .iter()
        .filter(|p| !by_name.contains_key(*p))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::Transfer { missing });
    }
    let mut best = BestCheckpoint::new();
    let mut trace = Vec::with_capacity(record.entries.len());
    for entry in &record.entries {
        let batches: Vec<Vec<usize>> = entry
            .current
            .iter()
            .map(|name| {
                let table = by_name[name];
                let n = count_for(entry.competence, table.train_order.len());
                table.train_order[..n].to_vec()
            })
            .collect();
        trace.push(train_selections(learner, &batches, record.header.dedup_training)?);
        best.observe(entry.epoch, learner, val_ids)?;
    }
    best.finish(learner, trace)
}

/// Activation counts per phase for one group (an index, category or order).
#[derive(Debug, Clone, PartialEq)]
pub struct UsageRow {
    pub key: String,
    pub per_phase: Vec<usize>,
}

impl UsageRow {
    pub fn total(&self) -> usize {
        self.per_phase.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntrospectionReport {
    pub phases: usize,
    pub by_index: Vec<UsageRow>,
    pub by_category: Vec<UsageRow>,
    pub by_order: Vec<UsageRow>,
    /// Fraction of pairs trained at each epoch.
    pub active_fraction: Vec<f64>,
    pub presented: Vec<usize>,
    pub n_train: usize,
}

/// Phase of `epoch` when `epochs` are cut into `phases` equal spans.
pub fn phase_of(epoch: usize, epochs: usize, phases: usize) -> usize {
    (epoch * phases / epochs.max(1)).min(phases - 1)
}

fn category_of(index: &str) -> String {
    match index.parse::<IndexKind>() {
        Ok(k) => k.category(),
        Err(_) if index == SUMMED_INDEX => SUMMED_INDEX.to_string(),
        Err(_) => "other".to_string(),
    }
}

fn tally(rows: &mut Vec<UsageRow>, key: String, phase: usize, phases: usize) {
    match rows.iter_mut().find(|r| r.key == key) {
        Some(r) => r.per_phase[phase] += 1,
        None => {
            let mut per_phase = vec![0; phases];
            per_phase[phase] = 1;
            rows.push(UsageRow { key, per_phase });
        }
    }
}

pub fn introspect(record: &CurriculumRecord, phases: usize) -> Result<IntrospectionReport> {
    if phases == 0 {
        return Err(Error::Config("phase count must be at least 1".into()));
    }
    record.validate()?;
    let h = &record.header;
    let parsed = h
        .pairs
        .iter()
        .map(|p| parse_pair_name(p).map(|(i, o)| (i.to_string(), o)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = IntrospectionReport {
        phases,
        by_index: Vec::new(),
        by_category: Vec::new(),
        by_order: Vec::new(),
        active_fraction: Vec::with_capacity(record.entries.len()),
        presented: Vec::with_capacity(record.entries.len()),
        n_train: h.n_train,
    };
    // every group appears, even when never used
    for (index, order) in &parsed {
        for (rows, key) in [
            (&mut report.by_index, index.clone()),
            (&mut report.by_category, category_of(index)),
            (&mut report.by_order, order.to_string()),
        ] {
            if !rows.iter().any(|r| r.key == key) {
                rows.push(UsageRow { key, per_phase: vec![0; phases] });
            }
        }
    }
    for e in &record.entries {
        let phase = phase_of(e.epoch, h.epochs, phases);
        for ((index, order), _) in parsed.iter().zip(&e.used).filter(|(_, &u)| u) {
            tally(&mut report.by_index, index.clone(), phase, phases);
            tally(&mut report.by_category, category_of(index), phase, phases);
            tally(&mut report.by_order, order.to_string(), phase, phases);
        }
        let active = e.used.iter().filter(|&&u| u).count();
        report.active_fraction.push(active as f64 / h.pairs.len().max(1) as f64);
        report.presented.push(e.presented);
    }
    Ok(report)
}

fn usage_csv(label: &str, rows: &[UsageRow], phases: usize) -> String {
    let mut out = label.to_string();
    for p in 1..=phases {
        out.push_str(&format!(",phase_{p}"));
    }
    out.push_str(",total\n");
    for r in rows {
        out.push_str(&r.key);
        for c in &r.per_phase {
            out.push_str(&format!(",{c}"));
        }
        out.push_str(&format!(",{}\n", r.total()));
    }
    out
}

impl IntrospectionReport {
    /// CSV file names and contents.
    pub fn csv_files(&self) -> Vec<(&'static str, String)> {
        let mut fraction = String::from("epoch,active_fraction\n");
        for (e, f) in self.active_fraction.iter().enumerate() {
            fraction.push_str(&format!("{e},{f}\n"));
        }
        let mut cumulative = String::from("epoch,presented,cumulative,nocl_cumulative\n");
        let mut total = 0;
        for (e, &p) in self.presented.iter().enumerate() {
            total += p;
            cumulative.push_str(&format!("{e},{p},{total},{}\n", self.n_train * (e + 1)));
        }
        vec![
            ("usage_by_index.csv", usage_csv("index", &self.by_index, self.phases)),
            ("usage_by_category.csv", usage_csv("category", &self.by_category, self.phases)),
            ("usage_by_order.csv", usage_csv("order", &self.by_order, self.phases)),
            ("active_fraction.csv", fraction),
            ("cumulative_presented.csv", cumulative),
        ]
    }

    pub fn write_csvs(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, body) in self.csv_files() {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
