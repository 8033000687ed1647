//! Curriculum scheduling for text-graph training data.
//!
//! Samples (nodes or node pairs) are scored by graph-topology and text
//! readability complexity indices computed on their ego subgraphs and texts.
//! Each (index, sort order) pair becomes a ranking of the training data, and a
//! spaced-repetition scheduler decides at every epoch which rankings the
//! learner trains on, gated by a competence function that grows the
//! accessible fraction of each ranking over time.
//!
//! Module map:
//! - [`graph`]: graph storage, dataset loading, ego-subgraph extraction
//! - [`graph_indices`]: the 26 topology indices
//! - [`text_indices`]: readability formulas and shallow text features
//! - [`pipeline`]: normalization, aggregation, index selection, rankings
//! - [`competence`]: the competence schedule
//! - [`scheduler`]: kernels, delay estimation, tau fitting, the epoch loop
//! - [`learner`]: learner contract, built-in logistic learner, baselines
//! - [`records`]: curriculum records, replay, introspection
//! - [`synth`]: seeded planted-partition datasets

pub mod competence;
pub mod dataset;
pub mod error;
pub mod graph;
pub mod graph_indices;
pub mod learner;
pub mod pipeline;
pub mod records;
pub mod scheduler;
pub mod synth;
pub mod text_indices;

pub use error::{Error, Result};
