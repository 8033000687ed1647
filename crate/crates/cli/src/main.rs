use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curriculum_core::competence::CompetenceParams;
use curriculum_core::dataset::{load_samples, load_texts, Dataset, Split, Task};
use curriculum_core::graph::load_dataset;
use curriculum_core::graph_indices::GraphIndexKind;
use curriculum_core::learner::{baseline_ccl, baseline_nocl, Learner, LearnerConfig, NeighborLogisticLearner, RunOutcome};
use curriculum_core::pipeline::{
    build_index_matrix, build_pairs, parse_pair_name, select_indices, summed_ranking, IndexConfig, IndexKind,
    IndexMatrix, Selection, SortOrder,
};
use curriculum_core::records::{introspect, replay, CurriculumRecord};
use curriculum_core::scheduler::{run_training, KernelKind, SchedulerConfig};
use curriculum_core::synth::{generate, SynthParams};
use curriculum_core::{Error, Result};

#[derive(Parser)]
#[command(name = "curriculum", version, about = "Complexity-indexed spaced-repetition curricula for graph data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded planted-partition dataset
    Synth(SynthArgs),
    /// Compute the normalized index matrix
    Index(IndexCmd),
    /// Cluster indices by correlation and keep one per cluster
    Select(SelectCmd),
    /// Train with a curriculum (or a baseline) and write record, checkpoint and metrics
    Train(TrainCmd),
    /// Replay a recorded curriculum on a dataset
    Replay(ReplayCmd),
    /// Write usage reports for a record
    Introspect(IntrospectCmd),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 400)]
    nodes: usize,
    #[arg(long, default_value_t = 2)]
    blocks: usize,
    #[arg(long, default_value_t = 0.05)]
    p_in: f64,
    #[arg(long, default_value_t = 0.005)]
    p_out: f64,
    #[arg(long, default_value_t = 16)]
    dim: usize,
    #[arg(long, default_value_t = 0.3)]
    signal: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    Node,
    Link,
}

impl From<TaskArg> for Task {
    fn from(t: TaskArg) -> Task {
        match t {
            TaskArg::Node => Task::NodeClassification,
            TaskArg::Link => Task::LinkPrediction,
        }
    }
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Directory holding edges.txt, features.csv, labels.txt, texts.tsv and
    /// splits.txt (link_splits.txt for links); explicit paths override it
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long)]
    features: Option<PathBuf>,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    texts: Option<PathBuf>,
    #[arg(long)]
    splits: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TaskArg::Node)]
    task: TaskArg,
}

#[derive(Args, Clone)]
struct IndexArgs {
    #[arg(long, default_value_t = 1)]
    hops: usize,
    #[arg(long, default_value_t = 256)]
    node_cap: usize,
    /// Worker threads for index computation (0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Use e / (v (v - 1)) for density
    #[arg(long)]
    literal_density: bool,
    /// Comma-separated index names (default: all applicable)
    #[arg(long, value_delimiter = ',')]
    indices: Vec<String>,
}

#[derive(Args)]
struct IndexCmd {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    index: IndexArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SelectCmd {
    #[command(flatten)]
    data: DataArgs,
    /// Index matrix CSV written by `index`
    #[arg(long)]
    matrix: PathBuf,
    /// Restrict clustering to these indices
    #[arg(long, value_delimiter = ',')]
    indices: Vec<String>,
    #[arg(long, default_value_t = 10)]
    clusters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Baseline {
    Tgcl,
    Nocl,
    Ccl,
}

#[derive(Args, Clone)]
struct LearnArgs {
    #[arg(long, default_value_t = 0.2)]
    lr: f64,
    #[arg(long, default_value_t = 32)]
    batch_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TrainCmd {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    index: IndexArgs,
    #[command(flatten)]
    learn: LearnArgs,
    /// Precomputed index matrix (computed when absent)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Selected index list (selection runs when absent)
    #[arg(long)]
    selection: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Baseline::Tgcl)]
    baseline: Baseline,
    #[arg(long, default_value = "lap")]
    kernel: String,
    #[arg(long, default_value_t = 0.8)]
    eta: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    c0: f64,
    /// Default 500 for node tasks, 100 for link tasks
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "ascending,descending,medium_ascending,medium_descending")]
    orders: Vec<String>,
    #[arg(long, default_value_t = 10)]
    clusters: usize,
    /// Train once per epoch on the union of current selections
    #[arg(long)]
    dedup_training: bool,
    /// Use cos(tau*pi*x)/2 + 1 for the cosine kernel
    #[arg(long)]
    literal_cosine: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReplayCmd {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    index: IndexArgs,
    #[command(flatten)]
    learn: LearnArgs,
    #[arg(long)]
    record: PathBuf,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IntrospectCmd {
    #[arg(long)]
    record: PathBuf,
    #[arg(long, default_value_t = 3)]
    phases: usize,
    #[arg(long)]
    out: PathBuf,
}

fn resolve(explicit: &Option<PathBuf>, dir: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| dir.as_ref().map(|d| d.join(name)).filter(|p| p.exists()))
}

/// Like `resolve`, but a file missing from `--data` is still returned so the
/// read reports it.
fn resolve_required(explicit: &Option<PathBuf>, dir: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| dir.as_ref().map(|d| d.join(name)))
}

fn load_data(args: &DataArgs) -> Result<Dataset> {
    let task: Task = args.task.into();
    let edges = resolve_required(&args.edges, &args.data, "edges.txt")
        .ok_or_else(|| Error::Config("no edge list: pass --edges or --data".into()))?;
    let features = resolve(&args.features, &args.data, "features.csv");
    let labels = resolve(&args.labels, &args.data, "labels.txt");
    let texts = resolve(&args.texts, &args.data, "texts.tsv");
    let split_name = match task {
        Task::NodeClassification => "splits.txt",
        Task::LinkPrediction => "link_splits.txt",
    };
    let splits = resolve_required(&args.splits, &args.data, split_name)
        .ok_or_else(|| Error::Config("no splits file: pass --splits or --data".into()))?;
    let graph = load_dataset(&edges, features.as_deref(), labels.as_deref())?;
    let texts = texts.map(|p| load_texts(&p, graph.node_count())).transpose()?;
    let samples = load_samples(&splits, &graph, task)?;
    Dataset::new(graph, samples, texts, task)
}

fn index_config(args: &IndexArgs, task: Task) -> Result<IndexConfig> {
    let mut cfg = IndexConfig::all_for(task);
    cfg.hops = args.hops;
    cfg.node_cap = args.node_cap;
    cfg.threads = args.threads;
    cfg.options.literal_density = args.literal_density;
    if !args.indices.is_empty() {
        restrict(&mut cfg, &args.indices)?;
    }
    Ok(cfg)
}

fn restrict(cfg: &mut IndexConfig, names: &[String]) -> Result<()> {
    cfg.graph_kinds.clear();
    cfg.text_kinds.clear();
    for name in names {
        match name.parse::<IndexKind>()? {
            IndexKind::Graph(k) => cfg.graph_kinds.push(k),
            IndexKind::Text(k) => cfg.text_kinds.push(k),
        }
    }
    Ok(())
}

fn matrix_for(data: &Dataset, path: &Option<PathBuf>, args: &IndexArgs) -> Result<IndexMatrix> {
    match path {
        Some(p) => IndexMatrix::load(p, &data.samples),
        None => build_index_matrix(data, &index_config(args, data.task)?),
    }
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let data = generate(&SynthParams {
        nodes: a.nodes,
        blocks: a.blocks,
        p_in: a.p_in,
        p_out: a.p_out,
        dim: a.dim,
        signal: a.signal,
        seed: a.seed,
    })?;
    data.write(&a.out)?;
    println!("wrote synthetic dataset to {}", a.out.display());
    Ok(())
}

fn cmd_index(a: &IndexCmd) -> Result<()> {
    let data = load_data(&a.data)?;
    let m = build_index_matrix(&data, &index_config(&a.index, data.task)?)?;
    create_dir(&a.out)?;
    let path = a.out.join("index_matrix.csv");
    m.save(&path)?;
    let constant: Vec<&str> = m
        .index_names
        .iter()
        .zip(&m.constant)
        .filter(|(_, &c)| c)
        .map(|(n, _)| n.as_str())
        .collect();
    if !constant.is_empty() {
        log::warn!("constant on the training split: {}", constant.join(", "));
    }
    println!("{} samples x {} indices -> {}", m.rows(), m.cols(), path.display());
    Ok(())
}

fn keep_columns(m: &IndexMatrix, names: &[String]) -> Result<IndexMatrix> {
    let cols = names
        .iter()
        .map(|n| m.column_of(n).ok_or_else(|| Error::Config(format!("index {n:?} not in matrix"))))
        .collect::<Result<Vec<_>>>()?;
    let pick = |src: &[f64]| -> Vec<f64> {
        (0..m.rows())
            .flat_map(|r| cols.iter().map(move |&c| src[r * m.cols() + c]))
            .collect()
    };
    Ok(IndexMatrix {
        sample_ids: m.sample_ids.clone(),
        splits: m.splits.clone(),
        index_names: names.to_vec(),
        raw: pick(&m.raw),
        normalized: pick(&m.normalized),
        constant: cols.iter().map(|&c| m.constant[c]).collect(),
    })
}

fn cmd_select(a: &SelectCmd) -> Result<()> {
    let data = load_data(&a.data)?;
    let mut m = IndexMatrix::load(&a.matrix, &data.samples)?;
    if !a.indices.is_empty() {
        m = keep_columns(&m, &a.indices)?;
    }
    let sel = select_indices(&m, a.clusters, a.seed)?;
    create_dir(&a.out)?;
    let path = a.out.join("selected.txt");
    write(&path, &sel.to_text())?;
    for name in &sel.selected {
        println!("{name}");
    }
    Ok(())
}

fn parse_orders(names: &[String]) -> Result<Vec<SortOrder>> {
    names.iter().map(|o| o.parse()).collect()
}

fn default_epochs(task: Task) -> usize {
    match task {
        Task::NodeClassification => 500,
        Task::LinkPrediction => 100,
    }
}

fn learner(data: &Dataset, a: &LearnArgs) -> Result<NeighborLogisticLearner> {
    NeighborLogisticLearner::new(
        data,
        LearnerConfig {
            learning_rate: a.lr,
            batch_size: a.batch_size,
            seed: a.seed,
        },
    )
}

fn metrics_json(label: &str, outcome: &RunOutcome, test: Option<f64>, n_train: usize) -> String {
    let epochs = outcome.trace.len();
    let v = serde_json::json!({
        "schedule": label,
        "best_epoch": outcome.best_epoch,
        "val": outcome.best_val,
        "test": test,
        "presented": outcome.presented(),
        "nocl_presented": n_train * epochs,
        "epochs": epochs,
    });
    serde_json::to_string_pretty(&v).expect("metrics serialize") + "\n"
}

fn finish_run(
    data: &Dataset,
    learner: &NeighborLogisticLearner,
    outcome: &RunOutcome,
    label: &str,
    out: &Path,
    metrics_name: &str,
) -> Result<()> {
    let test_ids = data.ids_in(Split::Test);
    let test = if test_ids.is_empty() {
        None
    } else {
        Some(learner.eval_on(&test_ids)?)
    };
    let n_train = data.ids_in(Split::Train).len();
    write(&out.join(metrics_name), &metrics_json(label, outcome, test, n_train))?;
    learner.save_checkpoint(&out.join("checkpoint.csv"))?;
    let test_text = test.map_or("n/a".to_string(), |t| format!("{t:.4}"));
    println!(
        "{label}: val={:.4} test={test_text} presented={} (no-curriculum {}) best_epoch={}",
        outcome.best_val,
        outcome.presented(),
        n_train * outcome.trace.len(),
        outcome.best_epoch
    );
    Ok(())
}

fn cmd_train(a: &TrainCmd) -> Result<()> {
    let data = load_data(&a.data)?;
    let epochs = a.epochs.unwrap_or_else(|| default_epochs(data.task));
    let competence = CompetenceParams::new(a.c0, a.alpha, epochs)?;
    let kernel: KernelKind = a.kernel.parse()?;
    let orders = parse_orders(&a.orders)?;
    create_dir(&a.out)?;
    let val_ids = data.ids_in(Split::Validation);
    let mut model = learner(&data, &a.learn)?;
    if a.baseline == Baseline::Nocl {
        let outcome = baseline_nocl(&mut model, &data.ids_in(Split::Train), &val_ids, epochs)?;
        return finish_run(&data, &model, &outcome, "nocl", &a.out, "metrics.json");
    }
    let m = matrix_for(&data, &a.matrix, &a.index)?;
    let selected = match &a.selection {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.clone(),
                source: e,
            })?;
            Selection::names_from_text(&text)
        }
        None => select_indices(&m, a.clusters, a.learn.seed)?.selected,
    };
    log::info!("indices: {}", selected.join(", "));
    if a.baseline == Baseline::Ccl {
        let ranking = summed_ranking(&m, &selected)?;
        let outcome = baseline_ccl(&mut model, &ranking, &val_ids, &competence)?;
        return finish_run(&data, &model, &outcome, "ccl", &a.out, "metrics.json");
    }
    let mut cfg = SchedulerConfig::new(kernel, a.eta, competence);
    cfg.dedup_training = a.dedup_training;
    cfg.literal_cosine = a.literal_cosine;
    cfg.seed = a.learn.seed;
    let pairs = build_pairs(&m, &selected, &orders)?;
    let run = run_training(cfg, pairs, &mut model, &val_ids)?;
    run.record.save(&a.out.join("record.jsonl"))?;
    finish_run(&data, &model, &run.outcome, "tgcl", &a.out, "metrics.json")
}

fn cmd_replay(a: &ReplayCmd) -> Result<()> {
    let record = CurriculumRecord::load(&a.record)?;
    let data = load_data(&a.data)?;
    let mut needed: Vec<String> = Vec::new();
    let mut orders: Vec<SortOrder> = Vec::new();
    for pair in &record.header.pairs {
        let (index, order) = parse_pair_name(pair)?;
        if !needed.iter().any(|n| n == index) {
            needed.push(index.to_string());
        }
        if !orders.contains(&order) {
            orders.push(order);
        }
    }
    let m = match &a.matrix {
        Some(p) => IndexMatrix::load(p, &data.samples)?,
        None => {
            let mut cfg = index_config(&a.index, data.task)?;
            let known: Vec<String> = needed.iter().filter(|n| n.parse::<IndexKind>().is_ok()).cloned().collect();
            restrict(&mut cfg, &known)?;
            if data.task == Task::NodeClassification {
                cfg.graph_kinds.retain(|k: &GraphIndexKind| !k.is_pairwise());
            }
            build_index_matrix(&data, &cfg)?
        }
    };
    let available: Vec<String> = needed.iter().filter(|n| m.column_of(n).is_some()).cloned().collect();
    let pairs = build_pairs(&m, &available, &orders)?;
    let mut model = learner(&data, &a.learn)?;
    let outcome = replay(&record, &pairs, &mut model, &data.ids_in(Split::Validation))?;
    create_dir(&a.out)?;
    finish_run(&data, &model, &outcome, "replay", &a.out, "replay_metrics.json")
}

fn cmd_introspect(a: &IntrospectCmd) -> Result<()> {
    let record = CurriculumRecord::load(&a.record)?;
    let report = introspect(&record, a.phases)?;
    report.write_csvs(&a.out)?;
    for (name, _) in report.csv_files() {
        println!("{}", a.out.join(name).display());
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        Error::Parse { .. } | Error::Schema(_) | Error::Io { .. } => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Index(a) => cmd_index(a),
        Command::Select(a) => cmd_select(a),
        Command::Train(a) => cmd_train(a),
        Command::Replay(a) => cmd_replay(a),
        Command::Introspect(a) => cmd_introspect(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
