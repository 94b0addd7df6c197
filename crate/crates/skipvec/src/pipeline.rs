//! End-to-end pipeline: extract → filter → score → select → vectorize →
//! train → test, with stratified cross-validation or a single split.
//!
//! Extraction is done once per resource (label-independent) and cached;
//! everything that sees labels — occurrence filtering, gain-ratio scoring,
//! top-n selection — re-runs inside each fold on that fold's training
//! resources only, unless the global-selection variant is requested. Each
//! fold records the resource sets it used so that leak-freedom is
//! checkable after the fact.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::extract::{extract, Feature, UnionFeatures};
use crate::infogain::{score_features, select_top_n, InfoGainError, RankedFeature};
use crate::learn::{
    accuracy, adaboost_train, forest_train, knn_predict, mean_stddev, stratified_folds,
    train_test_split, tree_train, AdaBoostConfig, Dataset, ForestConfig, LearnError, Subsample,
    TreeConfig,
};
use crate::pattern::SkipPattern;
use crate::rdf::{Graph, LabeledResources, Term};
use crate::vector::{build_index, VectorError, VectorIndex};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("need at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("class \"{label}\" has {size} members, fewer than {folds} folds; use fewer folds")]
    ClassTooSmall {
        label: String,
        size: usize,
        folds: usize,
    },
    #[error("class \"{label}\" has {size} members, too few to split")]
    DegenerateClass { label: String, size: usize },
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    InfoGain(#[from] InfoGainError),
}

/// Classifier choice plus hyperparameters.
#[derive(Debug, Clone)]
pub enum Learner {
    Knn { k: usize },
    Tree { max_depth: Option<u32>, min_leaf: usize },
    Forest {
        n_trees: usize,
        max_depth: Option<u32>,
        min_leaf: usize,
    },
    AdaBoost { weak_depth: u32, rounds: usize },
}

impl Default for Learner {
    fn default() -> Self {
        Learner::Knn { k: 5 }
    }
}

/// Pipeline-level settings shared by all commands.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Patterns to extract, in canonical order.
    pub patterns: Vec<SkipPattern>,
    /// Features kept per pattern after ranking.
    pub top_n: usize,
    /// Depth discount in (0, 1].
    pub lambda: f64,
    /// Minimum training occurrence; 2 drops singleton noise.
    pub min_count: usize,
    /// Select once on all resources instead of per fold.
    pub global_selection: bool,
    pub learner: Learner,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            patterns: SkipPattern::ALL.to_vec(),
            top_n: 100,
            lambda: 1.0,
            min_count: 2,
            global_selection: false,
            learner: Learner::default(),
        }
    }
}

/// Label-independent extraction results over the labeled resources.
pub struct ExtractionCache {
    pub resources: Vec<Term>,
    /// Class index per resource, aligned with `resources`.
    pub classes: Vec<usize>,
    pub n_classes: usize,
    pub patterns: Vec<SkipPattern>,
    /// Per pattern: feature → ascending resource indices possessing it.
    pub membership: Vec<HashMap<Feature, Vec<usize>>>,
}

/// Extracts the requested patterns for every labeled resource, in
/// parallel, and merges the per-resource sets into membership maps.
pub fn build_cache(
    g: &Graph,
    labels: &LabeledResources,
    patterns: &[SkipPattern],
) -> Result<ExtractionCache, PipelineError> {
    if labels.classes().len() < 2 {
        return Err(PipelineError::TooFewClasses(labels.classes().len()));
    }
    let resources: Vec<Term> = labels.resources().cloned().collect();
    let classes: Vec<usize> = resources
        .iter()
        .map(|r| labels.class_index(r).expect("resource is labeled"))
        .collect();
    let per_resource: Vec<Vec<std::collections::HashSet<Feature>>> = resources
        .par_iter()
        .map(|r| patterns.iter().map(|&sp| extract(g, r, sp).features).collect())
        .collect();

    let mut membership: Vec<HashMap<Feature, Vec<usize>>> =
        patterns.iter().map(|_| HashMap::new()).collect();
    for (row, sets) in per_resource.into_iter().enumerate() {
        for (pi, set) in sets.into_iter().enumerate() {
            for f in set {
                membership[pi].entry(f).or_default().push(row);
            }
        }
    }
    Ok(ExtractionCache {
        resources,
        classes,
        n_classes: labels.classes().len(),
        patterns: patterns.to_vec(),
        membership,
    })
}

/// Per-pattern ranked features for one training subset.
pub struct Selection {
    pub index: VectorIndex,
    pub ranked: Vec<(SkipPattern, Vec<RankedFeature>)>,
}

/// Filters by training occurrence, scores by gain ratio, and keeps the
/// top n per pattern, all restricted to `train_rows`.
pub fn select_for_rows(
    g: &Graph,
    cache: &ExtractionCache,
    train_rows: &[usize],
    top_n: usize,
    min_count: usize,
) -> Result<Selection, PipelineError> {
    let mut row_pos = vec![usize::MAX; cache.resources.len()];
    for (i, &r) in train_rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let train_classes: Vec<usize> = train_rows.iter().map(|&r| cache.classes[r]).collect();
    let mut class_totals = vec![0u64; cache.n_classes];
    for &c in &train_classes {
        class_totals[c] += 1;
    }

    let mut ranked_per_pattern = Vec::new();
    let mut selected = Vec::new();
    for (pi, &sp) in cache.patterns.iter().enumerate() {
        let mut train_membership: HashMap<Feature, Vec<usize>> = HashMap::new();
        for (f, rows) in &cache.membership[pi] {
            let local: Vec<usize> = rows
                .iter()
                .filter(|&&r| row_pos[r] != usize::MAX).map(|&r| row_pos[r])
                .collect();
            if !local.is_empty() {
                train_membership.insert(f.clone(), local);
            }
        }
        let union = UnionFeatures {
            pattern: sp,
            membership: train_membership,
        };
        let scored = score_features(g, &union, &train_classes, &class_totals, min_count)?;
        let ranked = select_top_n(scored, top_n);
        selected.push((sp, ranked.iter().map(|r| r.feature.clone()).collect()));
        ranked_per_pattern.push((sp, ranked));
    }
    let index = build_index(g, selected)?;
    Ok(Selection {
        index,
        ranked: ranked_per_pattern,
    })
}

/// Builds sparse rows for `rows` (global resource indices) over the
/// selection, using the cached membership. Values carry λ^(d-1).
pub fn rows_from_cache(
    cache: &ExtractionCache,
    selection: &Selection,
    lambda: f64,
    rows: &[usize],
) -> Vec<crate::learn::Row> {
    let mut row_pos = vec![usize::MAX; cache.resources.len()];
    for (i, &r) in rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let mut out: Vec<crate::learn::Row> = vec![Vec::new(); rows.len()];
    for seg in selection.index.segments() {
        let pi = cache
            .patterns
            .iter()
            .position(|&p| p == seg.pattern)
            .expect("selection pattern comes from the cache");
        let discount = lambda.powi(seg.pattern.depth() as i32 - 1);
        for (i, f) in seg.ordered_features.iter().enumerate() {
            let coord = seg.offset + i as u32;
            if let Some(members) = cache.membership[pi].get(f) {
                for &r in members {
                    if row_pos[r] != usize::MAX {
                        out[row_pos[r]].push((coord, discount));
                    }
                }
            }
        }
    }
    for row in &mut out {
        row.sort_unstable_by_key(|&(c, _)| c);
    }
    out
}

fn dataset_for_rows(
    cache: &ExtractionCache,
    selection: &Selection,
    lambda: f64,
    rows: &[usize],
) -> Result<Dataset, LearnError> {
    let vecs = rows_from_cache(cache, selection, lambda, rows);
    let labels: Vec<usize> = rows.iter().map(|&r| cache.classes[r]).collect();
    Dataset::new(
        vecs,
        labels,
        selection.index.total_dim().max(1),
        cache.n_classes,
    )
}

fn run_learner(
    train: &Dataset,
    test: &Dataset,
    learner: &Learner,
    seed: u64,
) -> Result<Vec<usize>, LearnError> {
    match learner {
        Learner::Knn { k } => (0..test.len())
            .map(|i| knn_predict(train, test.row(i), *k))
            .collect(),
        Learner::Tree {
            max_depth,
            min_leaf,
        } => {
            let cfg = TreeConfig {
                max_depth: *max_depth,
                min_leaf: *min_leaf,
                feature_subsample: None,
            };
            let tree = tree_train(train, &cfg, seed)?;
            Ok((0..test.len()).map(|i| tree.predict(test.row(i))).collect())
        }
        Learner::Forest {
            n_trees,
            max_depth,
            min_leaf,
        } => {
            let cfg = ForestConfig {
                n_trees: *n_trees,
                max_depth: *max_depth,
                min_leaf: *min_leaf,
                subsample: Subsample::Sqrt,
            };
            let forest = forest_train(train, &cfg, seed)?;
            Ok((0..test.len())
                .map(|i| forest.predict(test.row(i)))
                .collect())
        }
        Learner::AdaBoost { weak_depth, rounds } => {
            let cfg = AdaBoostConfig {
                weak_depth: *weak_depth,
                rounds: *rounds,
            };
            let model = adaboost_train(train, &cfg, seed)?;
            Ok((0..test.len()).map(|i| model.predict(test.row(i))).collect())
        }
    }
}

/// One fold's outcome, including the resource sets that fed selection and
/// testing so leak-freedom can be asserted.
#[derive(Debug, Clone)]
pub struct FoldReport {
    pub fold: usize,
    pub accuracy: f64,
    pub selection_rows: Vec<usize>,
    pub train_rows: Vec<usize>,
    pub test_rows: Vec<usize>,
    pub total_dim: u32,
}

#[derive(Debug, Clone)]
pub struct CvReport {
    pub folds: Vec<FoldReport>,
    pub mean: f64,
    pub stddev: f64,
}

fn map_fold_error(e: LearnError, labels: &LabeledResources) -> PipelineError {
    match e {
        LearnError::ClassTooSmall { class, size, folds } => PipelineError::ClassTooSmall {
            label: labels.classes()[class].clone(),
            size,
            folds,
        },
        LearnError::DegenerateClass { class, size } => PipelineError::DegenerateClass {
            label: labels.classes()[class].clone(),
            size,
        },
        other => PipelineError::Learn(other),
    }
}

/// Stratified k-fold cross-validation of the full in-fold pipeline.
pub fn cross_validate(
    g: &Graph,
    labels: &LabeledResources,
    folds: usize,
    config: &PipelineConfig,
    seed: u64,
) -> Result<CvReport, PipelineError> {
    crate::threads::configure_from_env();
    let cache = build_cache(g, labels, &config.patterns)?;
    let fold_sets =
        stratified_folds(&cache.classes, folds, seed).map_err(|e| map_fold_error(e, labels))?;
    let all_rows: Vec<usize> = (0..cache.resources.len()).collect();

    let mut reports = Vec::new();
    for (fi, test_rows) in fold_sets.iter().enumerate() {
        let in_test: Vec<bool> = {
            let mut v = vec![false; cache.resources.len()];
            for &r in test_rows {
                v[r] = true;
            }
            v
        };
        let train_rows: Vec<usize> = all_rows.iter().copied().filter(|&r| !in_test[r]).collect();
        let selection_rows: &[usize] = if config.global_selection {
            &all_rows
        } else {
            &train_rows
        };
        let selection =
            select_for_rows(g, &cache, selection_rows, config.top_n, config.min_count)?;
        let train_ds = dataset_for_rows(&cache, &selection, config.lambda, &train_rows)?;
        let test_ds = dataset_for_rows(&cache, &selection, config.lambda, test_rows)?;
        let preds = run_learner(
            &train_ds,
            &test_ds,
            &config.learner,
            crate::learn::subseed(seed, fi as u64),
        )?;
        reports.push(FoldReport {
            fold: fi,
            accuracy: accuracy(&preds, test_ds.labels()),
            selection_rows: selection_rows.to_vec(),
            train_rows,
            test_rows: test_rows.clone(),
            total_dim: selection.index.total_dim(),
        });
    }
    let accs: Vec<f64> = reports.iter().map(|r| r.accuracy).collect();
    let (mean, stddev) = mean_stddev(&accs);
    Ok(CvReport {
        folds: reports,
        mean,
        stddev,
    })
}

#[derive(Debug, Clone)]
pub struct SplitReport {
    pub accuracy: f64,
    pub train_rows: Vec<usize>,
    pub test_rows: Vec<usize>,
    pub total_dim: u32,
}

/// Single stratified train/test split of the full pipeline.
pub fn evaluate_split(
    g: &Graph,
    labels: &LabeledResources,
    train_fraction: f64,
    config: &PipelineConfig,
    seed: u64,
) -> Result<SplitReport, PipelineError> {
    crate::threads::configure_from_env();
    let cache = build_cache(g, labels, &config.patterns)?;
    let (train_rows, test_rows) = train_test_split(&cache.classes, train_fraction, seed)
        .map_err(|e| map_fold_error(e, labels))?;
    let selection_rows: Vec<usize> = if config.global_selection {
        (0..cache.resources.len()).collect()
    } else {
        train_rows.clone()
    };
    let selection = select_for_rows(g, &cache, &selection_rows, config.top_n, config.min_count)?;
    let train_ds = dataset_for_rows(&cache, &selection, config.lambda, &train_rows)?;
    let test_ds = dataset_for_rows(&cache, &selection, config.lambda, &test_rows)?;
    let preds = run_learner(&train_ds, &test_ds, &config.learner, seed)?;
    Ok(SplitReport {
        accuracy: accuracy(&preds, test_ds.labels()),
        train_rows,
        test_rows,
        total_dim: selection.index.total_dim(),
    })
}
