//! The five file-to-file commands behind the `skipvec` binary: extract,
//! select, vectorize, evaluate, and oracle-check.
//!
//! Every command is a pure function of (input files, config, seed): output
//! files are written with sorted, canonically formatted content so that
//! repeated runs are byte-identical.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use crate::config::{ConfigError, RunConfig};
use crate::extract::extract_union;
use crate::infogain::RankedFeature;
use crate::oracle::{bounds, oracle_count, skip_oracle_features, OracleFamily};
use crate::pattern::{pattern_census, SkipPattern};
use crate::pipeline::{
    build_cache, cross_validate, evaluate_split, select_for_rows, rows_from_cache, PipelineError,
};
use crate::rdf::{
    load_labels, parse_ntriples, Graph, LabelError, LabeledResources, ParseError, Term,
};
use crate::synthetic::random_graph;
use crate::vector::{export_rows, write_dictionary, write_label_map, SparseRow, VectorError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("missing required option: {0}")]
    MissingOption(&'static str),
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Labels {
        path: PathBuf,
        #[source]
        source: LabelError,
    },
    #[error("no labeled resources in {0}")]
    EmptyLabels(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Vector(#[from] VectorError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Loads graph and labels, applying label-leak deletion when leak
/// predicates are configured.
pub fn load_inputs(config: &RunConfig) -> Result<(Graph, LabeledResources), CliError> {
    let graph_path = config
        .graph_path
        .as_deref()
        .ok_or(CliError::MissingOption("--graph"))?;
    let labels_path = config
        .labels_path
        .as_deref()
        .ok_or(CliError::MissingOption("--labels"))?;
    let file = fs::File::open(graph_path).map_err(io_err(graph_path))?;
    let graph = parse_ntriples(BufReader::new(file)).map_err(|source| CliError::Parse {
        path: graph_path.to_path_buf(),
        source,
    })?;
    let file = fs::File::open(labels_path).map_err(io_err(labels_path))?;
    let labels = load_labels(BufReader::new(file)).map_err(|source| CliError::Labels {
        path: labels_path.to_path_buf(),
        source,
    })?;
    if labels.is_empty() {
        return Err(CliError::EmptyLabels(labels_path.to_path_buf()));
    }
    let leak = config.leak_predicate_terms();
    let graph = if leak.is_empty() {
        graph
    } else {
        graph.remove_label_leak_triples(&labels, &leak)
    };
    Ok((graph, labels))
}

fn ensure_out_dir(config: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&config.out_dir).map_err(io_err(&config.out_dir))
}

fn write_out(config: &RunConfig, name: &str, content: &[u8]) -> Result<PathBuf, CliError> {
    let path = config.out_dir.join(name);
    fs::write(&path, content).map_err(io_err(&path))?;
    Ok(path)
}

/// Per-pattern feature counts plus the path of the written feature list.
#[derive(Debug)]
pub struct ExtractSummary {
    pub counts: Vec<(SkipPattern, usize)>,
    pub report_path: PathBuf,
}

/// Extracts the configured patterns for all labeled resources and writes
/// `features.tsv` (`pattern \t feature \t occurrence`, sorted).
pub fn cmd_extract(config: &RunConfig) -> Result<ExtractSummary, CliError> {
    config.validate()?;
    let (graph, labels) = load_inputs(config)?;
    ensure_out_dir(config)?;
    let resources: Vec<Term> = labels.resources().cloned().collect();

    let mut counts = Vec::new();
    let mut report = String::new();
    for &sp in &config.patterns {
        let union = extract_union(&graph, &resources, sp);
        counts.push((sp, union.len()));
        for f in union.features_sorted(&graph) {
            let occurrence = union.occurrence(&f);
            report.push_str(&format!(
                "{}\t{}\t{}\n",
                sp.tag(),
                f.canonical(&graph),
                occurrence
            ));
        }
    }
    let report_path = write_out(config, "features.tsv", report.as_bytes())?;
    Ok(ExtractSummary {
        counts,
        report_path,
    })
}

#[derive(Debug)]
pub struct SelectSummary {
    pub selected: Vec<(SkipPattern, usize)>,
    pub total_dim: u32,
    pub report_path: PathBuf,
    pub warning: Option<String>,
}

fn ranking_lines(ranked: &[(SkipPattern, Vec<RankedFeature>)]) -> String {
    let mut out = String::new();
    for (sp, features) in ranked {
        for r in features {
            out.push_str(&format!(
                "{}\t{}\t{:.9}\t{}\n",
                sp.tag(),
                r.canonical,
                r.gain_ratio,
                r.occurrence
            ));
        }
    }
    out
}

/// Scores and ranks features on all labeled resources and writes
/// `ranking.tsv` (`pattern \t feature \t gain_ratio \t occurrence`).
pub fn cmd_select(config: &RunConfig) -> Result<SelectSummary, CliError> {
    config.validate()?;
    let (graph, labels) = load_inputs(config)?;
    ensure_out_dir(config)?;
    let cache = build_cache(&graph, &labels, &config.patterns)?;
    let all_rows: Vec<usize> = (0..cache.resources.len()).collect();
    let selection = select_for_rows(&graph, &cache, &all_rows, config.top_n, config.min_count)?;

    let report_path = write_out(config, "ranking.tsv", ranking_lines(&selection.ranked).as_bytes())?;
    let selected: Vec<(SkipPattern, usize)> = selection
        .ranked
        .iter()
        .map(|(sp, v)| (*sp, v.len()))
        .collect();
    let total_dim = selection.index.total_dim();
    let warning = if total_dim == 0 {
        Some(if config.top_n == 0 {
            "top_n is 0: selection is empty".to_string()
        } else {
            format!(
                "no feature occurs in at least {} training resources: selection is empty",
                config.min_count
            )
        })
    } else {
        None
    };
    Ok(SelectSummary {
        selected,
        total_dim,
        report_path,
        warning,
    })
}

#[derive(Debug)]
pub struct VectorizeSummary {
    pub rows: usize,
    pub total_dim: u32,
    pub dataset_path: PathBuf,
    pub dictionary_path: PathBuf,
    pub label_map_path: PathBuf,
}

/// Selects on all labeled resources, vectorizes them with λ, and writes
/// `dataset.txt`, `dictionary.tsv`, and `label_map.tsv`.
pub fn cmd_vectorize(config: &RunConfig) -> Result<VectorizeSummary, CliError> {
    config.validate()?;
    let (graph, labels) = load_inputs(config)?;
    ensure_out_dir(config)?;
    let cache = build_cache(&graph, &labels, &config.patterns)?;
    let all_rows: Vec<usize> = (0..cache.resources.len()).collect();
    let selection = select_for_rows(&graph, &cache, &all_rows, config.top_n, config.min_count)?;

    let sparse = rows_from_cache(&cache, &selection, config.lambda, &all_rows);
    let rows: Vec<SparseRow> = sparse
        .into_iter()
        .zip(&cache.classes)
        .map(|(row, &class)| (class, row.into_iter().collect()))
        .collect();

    let mut dataset = Vec::new();
    export_rows(&rows, &mut dataset)?;
    let dataset_path = write_out(config, "dataset.txt", &dataset)?;

    let mut dictionary = Vec::new();
    write_dictionary(&graph, &selection.index, &mut dictionary)?;
    let dictionary_path = write_out(config, "dictionary.tsv", &dictionary)?;

    let mut label_map = Vec::new();
    write_label_map(&labels, &mut label_map)?;
    let label_map_path = write_out(config, "label_map.tsv", &label_map)?;

    Ok(VectorizeSummary {
        rows: rows.len(),
        total_dim: selection.index.total_dim(),
        dataset_path,
        dictionary_path,
        label_map_path,
    })
}

#[derive(Debug)]
pub struct EvaluateSummary {
    pub per_fold: Vec<f64>,
    pub mean: f64,
    pub stddev: f64,
    pub report_path: PathBuf,
}

/// Runs the full in-fold pipeline under k-fold CV (or one train/test
/// split when `split` is set) and writes `evaluation.tsv`.
pub fn cmd_evaluate(config: &RunConfig) -> Result<EvaluateSummary, CliError> {
    config.validate()?;
    let (graph, labels) = load_inputs(config)?;
    ensure_out_dir(config)?;
    let pipeline = config.pipeline_config();

    let (per_fold, mean, stddev, mut report) = if let Some(fraction) = config.split {
        let r = evaluate_split(&graph, &labels, fraction, &pipeline, config.seed)?;
        let report = format!(
            "split\t{}\ntrain\t{}\ntest\t{}\naccuracy\t{:.6}\n",
            fraction,
            r.train_rows.len(),
            r.test_rows.len(),
            r.accuracy
        );
        (vec![r.accuracy], r.accuracy, 0.0, report)
    } else {
        let r = cross_validate(&graph, &labels, config.folds, &pipeline, config.seed)?;
        let mut report = String::new();
        for fold in &r.folds {
            report.push_str(&format!("fold{}\t{:.6}\n", fold.fold, fold.accuracy));
        }
        report.push_str(&format!("mean\t{:.6}\nstddev\t{:.6}\n", r.mean, r.stddev));
        (
            r.folds.iter().map(|f| f.accuracy).collect(),
            r.mean,
            r.stddev,
            report,
        )
    };
    report.insert_str(
        0,
        &format!("learner\t{}\nseed\t{}\n", config.learner.name(), config.seed),
    );
    let report_path = write_out(config, "evaluation.tsv", report.as_bytes())?;
    Ok(EvaluateSummary {
        per_fold,
        mean,
        stddev,
        report_path,
    })
}

/// One oracle-check line: a named invariant and whether it held.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug)]
pub struct OracleCheckReport {
    pub checks: Vec<Check>,
    pub report_path: Option<PathBuf>,
}

impl OracleCheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Extraction-vs-oracle equivalence, census counts, and complexity-bound
/// checks over seeded random graphs. `inject_fault` deliberately breaks
/// one census figure so tests can confirm the harness reports failures.
pub fn run_oracle_checks(config: &RunConfig, inject_fault: bool) -> Result<OracleCheckReport, CliError> {
    config.validate()?;
    let mut checks = Vec::new();

    // Pattern census: totals per depth and the nine depth <= 2 tags.
    for d in 1..=4u32 {
        let mut total: usize = pattern_census(d).iter().map(Vec::len).sum();
        if inject_fault && d == 2 {
            total += 1;
        }
        let expected = 3 * 2usize.pow(d) - 3;
        checks.push(Check {
            name: format!("census total depth<={d}"),
            passed: total == expected,
            detail: format!("{total} patterns, expected {expected}"),
        });
    }
    let census_tags: std::collections::BTreeSet<String> = pattern_census(2)
        .iter()
        .flatten()
        .map(|p| p.abbreviation())
        .collect();
    let expected_tags: std::collections::BTreeSet<String> = SkipPattern::ALL
        .iter()
        .map(|p| p.tag().to_string())
        .collect();
    checks.push(Check {
        name: "census depth<=2 tags".to_string(),
        passed: census_tags == expected_tags,
        detail: census_tags.iter().cloned().collect::<Vec<_>>().join(","),
    });

    // Random-graph equivalence and bounds.
    let mut equiv_violations = 0usize;
    let mut bound_violations = 0usize;
    let mut subjects_checked = 0usize;
    for gi in 0..config.oracle_graphs {
        let g = random_graph(crate::learn::subseed(config.seed, gi as u64), 30, 5);
        let m = g.predicate_count() as u64;
        let n = g.object_count() as u64;
        let subjects: Vec<Term> = {
            let mut s: Vec<Term> = g.triples().map(|t| t.subject().clone()).collect();
            s.sort();
            s.dedup();
            s
        };
        for subject in subjects {
            subjects_checked += 1;
            let oracle_sets = skip_oracle_features(&g, &subject);
            for sp in SkipPattern::ALL {
                let direct = crate::extract::extract(&g, &subject, sp);
                if direct.features != oracle_sets[&sp] {
                    equiv_violations += 1;
                }
            }
            let walk = oracle_count(&g, &subject, OracleFamily::Walk, config.oracle_depth)
                .expect("depth is validated");
            for (&d, &count) in &walk {
                if u128::from(count) > bounds::walk_per_depth(m, n, d) {
                    bound_violations += 1;
                }
            }
            let pro = oracle_count(&g, &subject, OracleFamily::Pro, config.oracle_depth)
                .expect("depth is validated");
            for (&d, &count) in &pro {
                if u128::from(count) > bounds::pro_per_depth(m, n, d) {
                    bound_violations += 1;
                }
            }
            let skip = oracle_count(&g, &subject, OracleFamily::Skip, config.oracle_depth)
                .expect("depth is validated");
            let cumulative: u64 = skip.values().sum();
            if u128::from(cumulative) > bounds::skip_cumulative(m, n, config.oracle_depth) {
                bound_violations += 1;
            }
        }
    }
    checks.push(Check {
        name: format!(
            "extract == skip oracle on {} graphs ({} subjects)",
            config.oracle_graphs, subjects_checked
        ),
        passed: equiv_violations == 0,
        detail: format!("{equiv_violations} violations"),
    });
    checks.push(Check {
        name: format!("walk/pro/skip bounds at depth<={}", config.oracle_depth),
        passed: bound_violations == 0,
        detail: format!("{bound_violations} violations"),
    });

    let mut report = String::new();
    for c in &checks {
        report.push_str(&format!(
            "{}\t{}\t{}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    ensure_out_dir(config)?;
    let report_path = write_out(config, "oracle_check.tsv", report.as_bytes())?;
    Ok(OracleCheckReport {
        checks,
        report_path: Some(report_path),
    })
}

pub fn cmd_oracle_check(config: &RunConfig) -> Result<OracleCheckReport, CliError> {
    run_oracle_checks(config, false)
}
