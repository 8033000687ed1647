mod common;

use std::path::Path;

use curriculum_core::competence::{count_for, CompetenceParams};
use curriculum_core::dataset::{parse_samples, Dataset, Split, Task};
use curriculum_core::graph::{parse_edge_list, parse_features, parse_labels};
use curriculum_core::learner::*;
use curriculum_core::pipeline::{RankingTable, SortOrder};
use curriculum_core::Error;
use rand::Rng;

fn dataset(edges: &str, features: &str, labels: &str, splits: &str, task: Task) -> Dataset {
    let p = Path::new("inline");
    let mut g = parse_edge_list(p, edges).unwrap();
    g.features = Some(parse_features(p, features, g.node_count()).unwrap());
    g.labels = Some(parse_labels(p, labels, g.node_count()).unwrap());
    let samples = parse_samples(p, splits, &g, task).unwrap();
    Dataset::new(g, samples, None, task).unwrap()
}

/// Path 0-1-2 plus isolated node 3; classes follow the sign of f0.
fn path_nodes() -> Dataset {
    dataset(
        "# nodes: 4\n0 1\n1 2\n",
        "node,f0,f1\n0,1,0\n1,0,2\n2,4,4\n3,-1,1\n",
        "0 1\n1 0\n2 1\n3 0\n",
        "train 0\ntrain 1\nval 2\ntest 3\n",
        Task::NodeClassification,
    )
}

fn learner(data: &Dataset) -> NeighborLogisticLearner {
    NeighborLogisticLearner::new(data, LearnerConfig::default()).unwrap()
}

#[test]
fn neighbor_features_concatenate_own_and_mean() {
    let d = path_nodes();
    assert_eq!(neighbor_features(&d.graph, 0).unwrap(), vec![1.0, 0.0, 0.0, 2.0]);
    assert_eq!(neighbor_features(&d.graph, 1).unwrap(), vec![0.0, 2.0, 2.5, 2.0]);
    assert_eq!(neighbor_features(&d.graph, 3).unwrap(), vec![-1.0, 1.0, 0.0, 0.0]);
    assert!(neighbor_features(&d.graph, 4).is_err());
    let mut bare = d.graph.clone();
    bare.features = None;
    assert!(matches!(neighbor_features(&bare, 0), Err(Error::Config(_))));
}

#[test]
fn zero_init_is_uniform() {
    let d = path_nodes();
    let l = learner(&d);
    assert_eq!(l.input_dim(), 4);
    assert_eq!(l.proba_of(&[0, 1, 2]).unwrap(), vec![0.5; 3]);
    for loss in l.loss_of(&[0, 1, 2, 3]).unwrap() {
        assert!((loss - 2f64.ln()).abs() < 1e-15);
    }
    let links = common::fixture_links(40);
    let l = learner(&links);
    let ids: Vec<usize> = (0..links.samples.len()).collect();
    assert!(l.proba_of(&ids).unwrap().iter().all(|&p| p == 0.5));
}

#[test]
fn probabilities_form_a_distribution() {
    let d = dataset(
        "0 1\n1 2\n",
        "node,a\n0,1\n1,-2\n2,0.5\n",
        "0 0\n1 1\n2 2\n",
        "train 0\ntrain 1\nval 2\n",
        Task::NodeClassification,
    );
    let mut l = learner(&d);
    assert_eq!(l.classes(), 3);
    let mut r = common::rng(5);
    let params: Vec<f64> = l.snapshot().iter().map(|_| r.gen_range(-2.0..2.0)).collect();
    l.restore(&params).unwrap();
    for id in 0..3 {
        let p = l.class_probabilities(id).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&v| v > 0.0));
        assert_eq!(l.proba_of(&[id]).unwrap()[0], p[d.samples[id].label]);
    }
}

#[test]
fn analytic_gradient_matches_finite_differences() {
    for data in [path_nodes(), common::fixture_links(40)] {
        let mut l = learner(&data);
        let mut r = common::rng(9);
        let params: Vec<f64> = l.snapshot().iter().map(|_| r.gen_range(-0.5..0.5)).collect();
        l.restore(&params).unwrap();
        let ids: Vec<usize> = (0..data.samples.len()).collect();
        let g = l.gradient(&ids).unwrap();
        let h = 1e-5;
        for i in 0..params.len() {
            let mut p = params.clone();
            p[i] += h;
            l.restore(&p).unwrap();
            let up = l.objective(&ids).unwrap();
            p[i] -= 2.0 * h;
            l.restore(&p).unwrap();
            let down = l.objective(&ids).unwrap();
            assert!(((up - down) / (2.0 * h) - g[i]).abs() < 1e-6, "param {i}");
        }
    }
}

#[test]
fn learns_separable_nodes() {
    let n = 40;
    let edges: String = (0..n - 2).map(|v| format!("{v} {}\n", v + 2)).collect();
    let mut features = String::from("node,x,y\n");
    let mut labels = String::new();
    let mut splits = String::new();
    for v in 0..n {
        let class = v % 2;
        let x = if class == 1 { 1.0 } else { -1.0 };
        features.push_str(&format!("{v},{x},{}\n", (v % 5) as f64 * 0.1));
        labels.push_str(&format!("{v} {class}\n"));
        splits.push_str(&format!("{} {v}\n", if v < 30 { "train" } else { "val" }));
    }
    let d = dataset(&edges, &features, &labels, &splits, Task::NodeClassification);
    let mut l = learner(&d);
    let train = d.ids_in(Split::Train);
    let val = d.ids_in(Split::Validation);
    let before = l.objective(&train).unwrap();
    let run = baseline_nocl(&mut l, &train, &val, 30).unwrap();
    assert_eq!(run.best_val, 1.0);
    assert_eq!(l.eval_on(&train).unwrap(), 1.0);
    assert!(l.objective(&train).unwrap() < before);
}

#[test]
fn evaluation_does_not_touch_parameters() {
    let d = common::fixture_links(40);
    let mut l = learner(&d);
    let ids: Vec<usize> = (0..d.samples.len()).collect();
    l.train_on(&ids).unwrap();
    let before = l.snapshot();
    l.loss_of(&ids).unwrap();
    l.proba_of(&ids).unwrap();
    l.eval_on(&ids).unwrap();
    l.gradient(&ids).unwrap();
    assert_eq!(before, l.snapshot());
}

#[test]
fn training_ignores_id_order() {
    let d = common::fixture_links(40);
    let ids: Vec<usize> = (0..d.samples.len()).collect();
    let mut reversed = ids.clone();
    reversed.reverse();
    let mut a = learner(&d);
    let mut b = learner(&d);
    a.train_on(&ids).unwrap();
    b.train_on(&reversed).unwrap();
    assert_eq!(a.snapshot(), b.snapshot());
}

#[test]
fn link_f1_with_nothing_to_find_is_one() {
    let d = common::fixture_links(40);
    let mut l = learner(&d);
    let negatives: Vec<usize> = d.samples.iter().filter(|s| s.label == 0).map(|s| s.id).collect();
    let mut params = l.snapshot();
    *params.last_mut().unwrap() = -10.0;
    l.restore(&params).unwrap();
    assert_eq!(l.eval_on(&negatives).unwrap(), 1.0);
    // all predicted negative: every positive is missed
    let positives: Vec<usize> = d.samples.iter().filter(|s| s.label == 1).map(|s| s.id).collect();
    assert_eq!(l.eval_on(&positives).unwrap(), 0.0);
}

#[test]
fn bad_inputs_are_reported() {
    let d = path_nodes();
    let mut l = learner(&d);
    assert!(matches!(l.loss_of(&[99]), Err(Error::Learner(_))));
    assert!(matches!(l.restore(&[1.0]), Err(Error::Learner(_))));
    assert!(matches!(l.eval_on(&[]), Err(Error::Domain(_))));
    let cfg = LearnerConfig { batch_size: 0, ..LearnerConfig::default() };
    assert!(NeighborLogisticLearner::new(&d, cfg).is_err());
    assert!(matches!(baseline_nocl(&mut l, &[], &[2], 3), Err(Error::Domain(_))));
}

#[test]
fn checkpoint_round_trip() {
    let d = path_nodes();
    let mut l = learner(&d);
    l.train_on(&[0, 1]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("checkpoint.csv");
    l.save_checkpoint(&path).unwrap();
    let mut fresh = learner(&d);
    fresh.load_checkpoint(&path).unwrap();
    assert_eq!(fresh.snapshot(), l.snapshot());
    let links = common::fixture_links(40);
    let mut other = learner(&links);
    assert!(matches!(other.load_checkpoint(&path), Err(Error::Schema(_))));
}

#[test]
fn nocl_presents_every_sample_every_epoch() {
    let d = path_nodes();
    let mut l = learner(&d);
    let run = baseline_nocl(&mut l, &[1, 0], &[2], 7).unwrap();
    assert_eq!(run.presented(), 2 * 7);
    assert!(run.trace.iter().all(|t| t == &vec![0, 1]));
    assert_eq!(run.val_history.len(), 7);
    let first_best = run.val_history.iter().position(|&v| v == run.best_val).unwrap();
    assert_eq!(run.best_epoch, first_best);
}

#[test]
fn ccl_takes_growing_prefixes_of_one_ranking() {
    let d = common::fixture_links(60);
    let train = d.ids_in(Split::Train);
    let val = d.ids_in(Split::Validation);
    let mut order = train.clone();
    order.reverse();
    let ranking = RankingTable {
        index: "summed".into(),
        order: SortOrder::Ascending,
        train_order: order.clone(),
        val_order: val.clone(),
    };
    let comp = CompetenceParams::new(0.25, 1.0, 5).unwrap();
    let mut l = learner(&d);
    let run = baseline_ccl(&mut l, &ranking, &val, &comp).unwrap();
    let n = train.len();
    for (epoch, sel) in run.trace.iter().enumerate() {
        let c = 0.25 + 0.75 * epoch as f64 / 4.0;
        let mut want = order[..count_for(c, n)].to_vec();
        want.sort_unstable();
        assert_eq!(sel, &want, "epoch {epoch}");
    }
    assert_eq!(run.trace.last().unwrap().len(), n);
}
