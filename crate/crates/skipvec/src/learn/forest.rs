use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::tree::{tree_train_weighted, DecisionTree, TreeConfig};
use super::{subseed, Dataset, LearnError, Row};

/// Per-node coordinate subsampling policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsample {
    /// ⌈√dim⌉ coordinates per node (the usual forest default).
    Sqrt,
    /// Every coordinate: each tree degenerates to a bootstrapped CART tree.
    All,
    Fixed(usize),
}

#[derive(Debug, Clone)]
pub struct ForestConfig {
    pub n_trees: usize,
    pub max_depth: Option<u32>,
    pub min_leaf: usize,
    pub subsample: Subsample,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            n_trees: 100,
            max_depth: None,
            min_leaf: 1,
            subsample: Subsample::Sqrt,
        }
    }
}

/// Bootstrap-aggregated Gini trees with per-node coordinate subsampling.
#[derive(Debug, Clone)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
    n_classes: usize,
}

/// Trains `n_trees` trees on bootstrap samples. Tree t derives its own
/// rng from `subseed(seed, t)`, so training is deterministic and trees
/// may build in parallel.
pub fn forest_train(
    train: &Dataset,
    config: &ForestConfig,
    seed: u64,
) -> Result<RandomForest, LearnError> {
    if train.is_empty() {
        return Err(LearnError::EmptyTrainSet);
    }
    if config.n_trees == 0 {
        return Err(LearnError::BadConfig("n_trees must be at least 1".into()));
    }
    let feature_subsample = match config.subsample {
        Subsample::Sqrt => Some((train.dim() as f64).sqrt().ceil() as usize),
        Subsample::All => None,
        Subsample::Fixed(k) => Some(k),
    };
    let tree_cfg = TreeConfig {
        max_depth: config.max_depth,
        min_leaf: config.min_leaf,
        feature_subsample,
    };
    let trees: Result<Vec<DecisionTree>, LearnError> = (0..config.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, t as u64));
            let sample: Vec<usize> = (0..train.len())
                .map(|_| rng.gen_range(0..train.len()))
                .collect();
            let boot = train.subset(&sample);
            let weights = vec![1.0; boot.len()];
            tree_train_weighted(&boot, &weights, &tree_cfg, &mut rng)
        })
        .collect();
    Ok(RandomForest {
        trees: trees?,
        n_classes: train.n_classes(),
    })
}

impl RandomForest {
    /// Majority vote over trees; ties go to the smallest class index.
    pub fn predict(&self, row: &Row) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for tree in &self.trees {
            votes[tree.predict(row)] += 1;
        }
        let best = votes.iter().max().copied().unwrap_or(0);
        votes.iter().position(|&v| v == best).unwrap_or(0)
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }
}
