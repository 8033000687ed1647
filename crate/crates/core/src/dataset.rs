//! Samples, splits, and the node text table.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "val" | "valid" | "validation" => Ok(Split::Validation),
            "test" => Ok(Split::Test),
            other => Err(Error::Domain(format!("unknown split {other:?}"))),
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Validation => "val",
            Split::Test => "test",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    NodeClassification,
    LinkPrediction,
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "node" | "node_classification" => Ok(Task::NodeClassification),
            "link" | "link_prediction" => Ok(Task::LinkPrediction),
            other => Err(Error::Config(format!("unknown task {other:?}"))),
        }
    }
}

/// One training instance: a node (classification) or a node pair (link).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub id: usize,
    pub targets: Vec<usize>,
    pub label: usize,
    pub split: Split,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub graph: Graph,
    pub samples: Vec<Sample>,
    /// Per-node text; missing entries are empty strings.
    pub texts: Option<Vec<String>>,
    pub task: Task,
}

impl Dataset {
    pub fn new(graph: Graph, samples: Vec<Sample>, texts: Option<Vec<String>>, task: Task) -> Result<Self> {
        let arity = match task {
            Task::NodeClassification => 1,
            Task::LinkPrediction => 2,
        };
        for (i, s) in samples.iter().enumerate() {
            if s.id != i {
                return Err(Error::Schema(format!("sample {i} carries id {}", s.id)));
            }
            if s.targets.len() != arity {
                return Err(Error::Config(format!(
                    "sample {i} has {} targets but the task needs {arity}",
                    s.targets.len()
                )));
            }
            if let Some(&t) = s.targets.iter().find(|&&t| t >= graph.node_count()) {
                return Err(Error::Schema(format!("sample {i} targets unknown node {t}")));
            }
            if task == Task::LinkPrediction && s.targets[0] == s.targets[1] {
                return Err(Error::Schema(format!("sample {i} links node {} to itself", s.targets[0])));
            }
            if task == Task::LinkPrediction && s.label > 1 {
                return Err(Error::Schema(format!("sample {i} link label {} not 0/1", s.label)));
            }
        }
        if let Some(t) = &texts {
            if t.len() != graph.node_count() {
                return Err(Error::Schema("text table length differs from node count".into()));
            }
        }
        Ok(Dataset {
            graph,
            samples,
            texts,
            task,
        })
    }

    pub fn ids_in(&self, split: Split) -> Vec<usize> {
        self.samples
            .iter()
            .filter(|s| s.split == split)
            .map(|s| s.id)
            .collect()
    }

    pub fn class_count(&self) -> usize {
        match self.task {
            Task::LinkPrediction => 2,
            Task::NodeClassification => self.samples.iter().map(|s| s.label + 1).max().unwrap_or(0),
        }
    }

    pub fn text_of(&self, node: usize) -> &str {
        self.texts.as_ref().map_or("", |t| t[node].as_str())
    }
}

/// Parses a splits file. Node tasks use `split node` lines (labels come from
/// the graph's label table); link tasks use `split u v label`. Sample ids are
/// assigned in file order.
pub fn parse_samples(path: &Path, text: &str, graph: &Graph, task: Task) -> Result<Vec<Sample>> {
    let mut samples = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let split: Split = fields[0]
            .parse()
            .map_err(|_| Error::parse(path, line_no, format!("unknown split {:?}", fields[0])))?;
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(path, line_no, format!("invalid integer {s:?}")))
        };
        let (targets, label) = match (task, fields.len()) {
            (Task::NodeClassification, 2) => {
                let node = num(fields[1])?;
                if node >= graph.node_count() {
                    return Err(Error::Schema(format!(
                        "{}:{line_no}: unknown node id {node}",
                        path.display()
                    )));
                }
                let label = graph
                    .labels
                    .as_ref()
                    .and_then(|l| l[node])
                    .ok_or_else(|| Error::Schema(format!("node {node} has no label")))?;
                (vec![node], label)
            }
            (Task::LinkPrediction, 4) => (
                vec![num(fields[1])?, num(fields[2])?],
                num(fields[3])?,
            ),
            (Task::NodeClassification, _) => {
                return Err(Error::parse(path, line_no, "expected `split node`"))
            }
            (Task::LinkPrediction, _) => {
                return Err(Error::parse(path, line_no, "expected `split u v label`"))
            }
        };
        samples.push(Sample {
            id: samples.len(),
            targets,
            label,
            split,
        });
    }
    Ok(samples)
}

/// Parses `node_id<TAB>text` lines into a per-node table.
pub fn parse_texts(path: &Path, text: &str, node_count: usize) -> Result<Vec<String>> {
    let mut table = vec![String::new(); node_count];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (id, body) = raw
            .split_once('\t')
            .ok_or_else(|| Error::parse(path, line_no, "expected `node_id<TAB>text`"))?;
        let node = id
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(path, line_no, format!("invalid node id {id:?}")))?;
        if node >= node_count {
            return Err(Error::Schema(format!(
                "{}:{line_no}: unknown node id {node}",
                path.display()
            )));
        }
        table[node] = body.to_string();
    }
    Ok(table)
}

pub fn load_samples(path: &Path, graph: &Graph, task: Task) -> Result<Vec<Sample>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_samples(path, &text, graph, task)
}

pub fn load_texts(path: &Path, node_count: usize) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_texts(path, &text, node_count)
}
