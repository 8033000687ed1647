mod common;

use common::{fixture, Fixture};
use curriculum_core::competence::CompetenceParams;
use curriculum_core::dataset::{Split, Task};
use curriculum_core::learner::{baseline_nocl, LearnerConfig, NeighborLogisticLearner};
use curriculum_core::pipeline::{parse_pair_name, RankingTable};
use curriculum_core::records::*;
use curriculum_core::scheduler::{run_training, DelayPolicy, KernelKind, SchedulerConfig, TrainingRun};
use curriculum_core::synth::SynthParams;
use curriculum_core::Error;

fn small() -> Fixture {
    fixture(SynthParams { nodes: 120, ..SynthParams::default() }, Task::NodeClassification)
}

fn train(fx: &Fixture, epochs: usize, policy: DelayPolicy) -> TrainingRun {
    let mut cfg = SchedulerConfig::new(KernelKind::Lap, 0.8, CompetenceParams::new(0.1, 1.0, epochs).unwrap());
    cfg.delay_policy = policy;
    cfg.seed = 7;
    let mut l = NeighborLogisticLearner::new(&fx.data, LearnerConfig::default()).unwrap();
    run_training(cfg, fx.pairs.clone(), &mut l, &fx.data.ids_in(Split::Validation)).unwrap()
}

#[test]
fn save_load_round_trip_and_self_replay() {
    let fx = small();
    let run = train(&fx, 15, DelayPolicy::Spaced);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("record.jsonl");
    run.record.save(&path).unwrap();
    let loaded = CurriculumRecord::load(&path).unwrap();
    assert_eq!(loaded, run.record);
    assert_eq!(loaded.to_jsonl(), std::fs::read_to_string(&path).unwrap());

    let val = fx.data.ids_in(Split::Validation);
    let mut l = NeighborLogisticLearner::new(&fx.data, LearnerConfig::default()).unwrap();
    let replayed = replay(&loaded, &fx.pairs, &mut l, &val).unwrap();
    assert_eq!(replayed, run.outcome);
    let presented: Vec<usize> = loaded.entries.iter().map(|e| e.presented).collect();
    let lens: Vec<usize> = replayed.trace.iter().map(Vec::len).collect();
    assert_eq!(presented, lens);
}

#[test]
fn corrupt_records_are_schema_errors() {
    let fx = small();
    let text = train(&fx, 4, DelayPolicy::Spaced).record.to_jsonl();
    let lines: Vec<&str> = text.lines().collect();

    let truncated = lines[..lines.len() - 1].join("\n");
    assert!(matches!(CurriculumRecord::from_jsonl(&truncated), Err(Error::Schema(_))));

    let mut garbled = lines.clone();
    garbled[3] = "{\"epoch\": \"two\"}";
    match CurriculumRecord::from_jsonl(&garbled.join("\n")) {
        Err(Error::Schema(msg)) => assert!(msg.contains("entry 2"), "{msg}"),
        other => panic!("expected a schema error, got {other:?}"),
    }

    let bumped = text.replacen("\"version\":1", "\"version\":99", 1);
    assert_ne!(bumped, text);
    assert!(matches!(CurriculumRecord::from_jsonl(&bumped), Err(Error::Schema(_))));

    assert!(matches!(CurriculumRecord::from_jsonl(""), Err(Error::Schema(_))));
    let missing = std::path::Path::new("/nonexistent/record.jsonl");
    assert!(matches!(CurriculumRecord::load(missing), Err(Error::Io { .. })));

    let mut rec = CurriculumRecord::from_jsonl(&text).unwrap();
    rec.entries[1].used[0] = !rec.entries[1].used[0];
    assert!(matches!(rec.validate(), Err(Error::Schema(_))));
}

#[test]
fn replay_onto_pairs_lacking_an_index_names_them() {
    let fx = small();
    let run = train(&fx, 3, DelayPolicy::Spaced);
    let dropped = fx.pairs[0].index.clone();
    let target: Vec<RankingTable> = fx.pairs.iter().filter(|p| p.index != dropped).cloned().collect();
    let mut l = NeighborLogisticLearner::new(&fx.data, LearnerConfig::default()).unwrap();
    match replay(&run.record, &target, &mut l, &fx.data.ids_in(Split::Validation)) {
        Err(Error::Transfer { missing }) => {
            assert_eq!(missing.len(), 4);
            assert!(missing.iter().all(|m| m.starts_with(&format!("{dropped}/"))));
        }
        other => panic!("expected a transfer error, got {other:?}"),
    }
}

#[test]
fn cross_dataset_replay_uses_at_most_nocl_presentations() {
    let a = small();
    let run = train(&a, 12, DelayPolicy::Spaced);
    let b = fixture(SynthParams { nodes: 150, seed: 21, ..SynthParams::default() }, Task::NodeClassification);
    let pairs = curriculum_core::pipeline::build_pairs(
        &b.matrix,
        &a.selected,
        &curriculum_core::pipeline::SortOrder::ALL,
    )
    .unwrap();
    let (train_b, val_b) = (b.data.ids_in(Split::Train), b.data.ids_in(Split::Validation));
    let mut l = NeighborLogisticLearner::new(&b.data, LearnerConfig::default()).unwrap();
    let out = replay(&run.record, &pairs, &mut l, &val_b).unwrap();
    let mut l = NeighborLogisticLearner::new(&b.data, LearnerConfig::default()).unwrap();
    let nocl = baseline_nocl(&mut l, &train_b, &val_b, 12).unwrap();
    assert_eq!(out.trace.len(), 12);
    assert!(out.presented() <= nocl.presented());
}

#[test]
fn introspection_tallies_agree() {
    let fx = small();
    let run = train(&fx, 20, DelayPolicy::Spaced);
    let rec = &run.record;
    let report = introspect(rec, 3).unwrap();
    let activations: usize = rec.entries.iter().map(|e| e.current.len()).sum();
    for rows in [&report.by_index, &report.by_category, &report.by_order] {
        assert_eq!(rows.iter().map(|r| r.total()).sum::<usize>(), activations);
    }
    for phase in 0..3 {
        let want: usize = rec
            .entries
            .iter()
            .filter(|e| phase_of(e.epoch, 20, 3) == phase)
            .map(|e| e.current.len())
            .sum();
        assert_eq!(report.by_index.iter().map(|r| r.per_phase[phase]).sum::<usize>(), want);
    }
    assert_eq!(report.by_index.len(), fx.selected.len());
    assert_eq!(report.by_order.len(), 4);
    for (e, f) in rec.entries.iter().zip(&report.active_fraction) {
        assert_eq!(*f, e.current.len() as f64 / rec.header.pairs.len() as f64);
    }

    let files = report.csv_files();
    let names: Vec<&str> = files.iter().map(|f| f.0).collect();
    assert_eq!(
        names,
        [
            "usage_by_index.csv",
            "usage_by_category.csv",
            "usage_by_order.csv",
            "active_fraction.csv",
            "cumulative_presented.csv"
        ]
    );
    let cumulative = &files[4].1;
    let last = cumulative.lines().last().unwrap();
    let total: usize = rec.entries.iter().map(|e| e.presented).sum();
    assert_eq!(last, format!("19,{},{total},{}", rec.entries[19].presented, rec.header.n_train * 20));
    assert_eq!(total, run.outcome.presented());

    let dir = tempfile::tempdir().unwrap();
    report.write_csvs(dir.path()).unwrap();
    for (name, body) in files {
        assert_eq!(std::fs::read_to_string(dir.path().join(name)).unwrap(), body);
    }
}

#[test]
fn pinned_record_uses_every_pair_uniformly() {
    let fx = small();
    let run = train(&fx, 8, DelayPolicy::Pinned);
    let report = introspect(&run.record, 2).unwrap();
    assert!(report.active_fraction.iter().all(|&f| f == 1.0));
    for row in &report.by_index {
        assert_eq!(row.per_phase, vec![4 * 4, 4 * 4], "{}", row.key);
    }
    for row in &report.by_order {
        assert_eq!(row.per_phase, vec![4 * fx.selected.len(); 2]);
    }
    let categories: usize = report.by_category.iter().map(|r| r.total()).sum();
    assert_eq!(categories, 8 * run.record.header.pairs.len());
    for pair in &run.record.header.pairs {
        parse_pair_name(pair).unwrap();
    }
    assert!(introspect(&run.record, 0).is_err());
}
