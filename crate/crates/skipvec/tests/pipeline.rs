//! Integration tests of the file-to-file commands across learners and
//! failure modes.

use std::fs;
use std::path::Path;

use skipvec::cli::{cmd_evaluate, cmd_extract, CliError};
use skipvec::config::RunConfig;
use skipvec::pipeline::PipelineError;
use skipvec::synthetic::{generate, BenchmarkConfig};

fn write_benchmark(dir: &Path, resources_per_class: usize) -> RunConfig {
    let (g, labels) = generate(&BenchmarkConfig {
        resources_per_class,
        ..BenchmarkConfig::default()
    });
    let graph_path = dir.join("bench.nt");
    let labels_path = dir.join("bench.tsv");
    fs::write(&graph_path, g.to_ntriples()).unwrap();
    let mut tsv = String::new();
    for (resource, label) in labels.iter() {
        tsv.push_str(&format!("{resource}\t{label}\n"));
    }
    fs::write(&labels_path, tsv).unwrap();
    RunConfig {
        graph_path: Some(graph_path),
        labels_path: Some(labels_path),
        out_dir: dir.join("out"),
        seed: 7,
        ..RunConfig::default()
    }
}

#[test]
fn every_learner_solves_the_planted_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = write_benchmark(dir.path(), 30);
    config.folds = 5;
    config.trees = 20;
    config.rounds = 10;
    config.weak_depth = 2;
    for learner in ["knn", "tree", "rf", "ada"] {
        config.set("learner", learner).unwrap();
        let summary = cmd_evaluate(&config).unwrap();
        assert!(
            summary.mean >= 0.95,
            "{learner} scored only {}",
            summary.mean
        );
    }
}

#[test]
fn too_many_folds_error_names_the_class() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = write_benchmark(dir.path(), 5);
    config.folds = 11;
    let err = cmd_evaluate(&config).unwrap_err();
    let text = format!("{err}");
    assert!(text.contains("fewer folds"), "{text}");
    match err {
        CliError::Pipeline(PipelineError::ClassTooSmall { label, size, folds }) => {
            assert!(label == "pos" || label == "neg");
            assert_eq!(size, 5);
            assert_eq!(folds, 11);
        }
        other => panic!("unexpected error: {other}"),
    }
}

#[test]
fn split_mode_reports_a_single_accuracy() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = write_benchmark(dir.path(), 25);
    config.split = Some(0.8);
    let summary = cmd_evaluate(&config).unwrap();
    assert_eq!(summary.per_fold.len(), 1);
    assert!(summary.mean >= 0.95);
    let report = fs::read_to_string(config.out_dir.join("evaluation.tsv")).unwrap();
    assert!(report.contains("split\t0.8"));
    assert!(report.contains("train\t40"));
    assert!(report.contains("test\t10"));
}

#[test]
fn evaluation_report_is_stable_across_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_benchmark(dir.path(), 20);
    cmd_evaluate(&config).unwrap();
    let first = fs::read(config.out_dir.join("evaluation.tsv")).unwrap();
    cmd_evaluate(&config).unwrap();
    assert_eq!(first, fs::read(config.out_dir.join("evaluation.tsv")).unwrap());
}

#[test]
fn extract_surfaces_parse_errors_with_paths() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("broken.nt");
    fs::write(&graph_path, "<a> <p>\n").unwrap();
    let labels_path = dir.path().join("l.tsv");
    fs::write(&labels_path, "<a>\tx\n<b>\ty\n").unwrap();
    let config = RunConfig {
        graph_path: Some(graph_path.clone()),
        labels_path: Some(labels_path),
        out_dir: dir.path().join("out"),
        ..RunConfig::default()
    };
    let err = cmd_extract(&config).unwrap_err();
    let text = format!("{err}");
    assert!(text.contains("broken.nt"), "{text}");
    match err {
        CliError::Parse { source, .. } => {
            assert!(format!("{source}").contains("line 1"));
        }
        other => panic!("unexpected error: {other}"),
    }
}

#[test]
fn config_file_drives_a_full_run() {
    let dir = tempfile::tempdir().unwrap();
    let base = write_benchmark(dir.path(), 20);
    let config_path = dir.path().join("run.conf");
    fs::write(
        &config_path,
        format!(
            "graph = {}\nlabels = {}\nout_dir = {}\nfolds = 4\nlearner = knn\nk = 3\nseed = 9\n",
            base.graph_path.as_ref().unwrap().display(),
            base.labels_path.as_ref().unwrap().display(),
            dir.path().join("confout").display()
        ),
    )
    .unwrap();
    let mut config = RunConfig::default();
    config
        .apply_file(&fs::read_to_string(&config_path).unwrap())
        .unwrap();
    let summary = cmd_evaluate(&config).unwrap();
    assert_eq!(summary.per_fold.len(), 4);
    assert!(dir.path().join("confout").join("evaluation.tsv").exists());
}
