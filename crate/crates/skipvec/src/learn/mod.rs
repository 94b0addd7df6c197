//! Built-in classifiers and evaluation utilities.
//!
//! Everything here is a deterministic function of (data, config, seed):
//! parallel work derives an independent sub-seed per worker and results
//! merge in a fixed order.

mod adaboost;
mod eval;
mod forest;
mod knn;
mod tree;

pub use adaboost::{adaboost_train, AdaBoost, AdaBoostConfig};
pub use eval::{accuracy, mean_stddev, stratified_folds, train_test_split};
pub use forest::{forest_train, ForestConfig, RandomForest, Subsample};
pub use knn::knn_predict;
pub use tree::{tree_train, DecisionTree, TreeConfig};

use crate::vector::SparseRow;

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("training set is empty")]
    EmptyTrainSet,
    #[error("k must be in 1..=|train|, got k={k} with {train} training rows")]
    KRange { k: usize, train: usize },
    #[error("coordinate {coord} out of range for dimension {dim}")]
    CoordRange { coord: u32, dim: u32 },
    #[error("label {label} out of range for {classes} classes")]
    LabelRange { label: usize, classes: usize },
    #[error("class {class} has {size} members, fewer than {folds} folds; use fewer folds")]
    ClassTooSmall {
        class: usize,
        size: usize,
        folds: usize,
    },
    #[error("class {class} has {size} members, too few to split")]
    DegenerateClass { class: usize, size: usize },
    #[error("{0}")]
    BadConfig(String),
}

/// Sparse row: `(coordinate, value)` pairs sorted by coordinate.
pub type Row = Vec<(u32, f64)>;

/// A vectorized, labeled dataset.
#[derive(Debug, Clone)]
pub struct Dataset {
    rows: Vec<Row>,
    labels: Vec<usize>,
    dim: u32,
    n_classes: usize,
}

impl Dataset {
    pub fn new(
        rows: Vec<Row>,
        labels: Vec<usize>,
        dim: u32,
        n_classes: usize,
    ) -> Result<Dataset, LearnError> {
        assert_eq!(rows.len(), labels.len());
        for row in &rows {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            if let Some(&(coord, _)) = row.last() {
                if coord >= dim {
                    return Err(LearnError::CoordRange { coord, dim });
                }
            }
        }
        for &label in &labels {
            if label >= n_classes {
                return Err(LearnError::LabelRange {
                    label,
                    classes: n_classes,
                });
            }
        }
        Ok(Dataset {
            rows,
            labels,
            dim,
            n_classes,
        })
    }

    pub fn from_sparse_rows(
        rows: &[SparseRow],
        dim: u32,
        n_classes: usize,
    ) -> Result<Dataset, LearnError> {
        let labels: Vec<usize> = rows.iter().map(|(l, _)| *l).collect();
        let rows: Vec<Row> = rows
            .iter()
            .map(|(_, values)| values.iter().map(|(&c, &v)| (c, v)).collect())
            .collect();
        Dataset::new(rows, labels, dim, n_classes)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn row(&self, i: usize) -> &Row {
        &self.rows[i]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Value at (row, coordinate), 0 when absent.
    pub fn value(&self, row: usize, coord: u32) -> f64 {
        lookup(&self.rows[row], coord)
    }

    /// Row subset in the given index order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            dim: self.dim,
            n_classes: self.n_classes,
        }
    }
}

pub(crate) fn lookup(row: &Row, coord: u32) -> f64 {
    match row.binary_search_by_key(&coord, |&(c, _)| c) {
        Ok(i) => row[i].1,
        Err(_) => 0.0,
    }
}

/// Squared Euclidean distance between two sparse rows.
pub(crate) fn sq_distance(a: &Row, b: &Row) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut acc = 0.0;
    while i < a.len() && j < b.len() {
        let (ca, va) = a[i];
        let (cb, vb) = b[j];
        match ca.cmp(&cb) {
            std::cmp::Ordering::Less => {
                acc += va * va;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                acc += vb * vb;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let d = va - vb;
                acc += d * d;
                i += 1;
                j += 1;
            }
        }
    }
    for &(_, v) in &a[i..] {
        acc += v * v;
    }
    for &(_, v) in &b[j..] {
        acc += v * v;
    }
    acc
}

/// Deterministic sub-seed for worker `stream` of a run seeded with `seed`
/// (splitmix64 finalizer).
pub fn subseed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
