use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Dataset, LearnError, Row};

/// CART-style decision tree with Gini impurity splitting. Thresholds sit
/// at midpoints of consecutive distinct observed values, so every internal
/// node's threshold lies strictly between two data points.
#[derive(Debug, Clone)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    n_classes: usize,
}

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        counts: Vec<f64>,
    },
    Split {
        coord: u32,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone)]
pub struct TreeConfig {
    /// None grows until purity or min_leaf.
    pub max_depth: Option<u32>,
    /// Minimum samples on each side of a split.
    pub min_leaf: usize,
    /// Coordinates examined per node: all, or a random subset of this size.
    pub feature_subsample: Option<usize>,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: None,
            min_leaf: 1,
            feature_subsample: None,
        }
    }
}

/// Trains on the full dataset with uniform weights. Deterministic given
/// seed and input order; the seed only matters when feature subsampling
/// is enabled.
pub fn tree_train(train: &Dataset, config: &TreeConfig, seed: u64) -> Result<DecisionTree, LearnError> {
    let weights = vec![1.0; train.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tree_train_weighted(train, &weights, config, &mut rng)
}

/// Weighted training core, shared with boosting and forests.
pub(crate) fn tree_train_weighted(
    train: &Dataset,
    weights: &[f64],
    config: &TreeConfig,
    rng: &mut ChaCha8Rng,
) -> Result<DecisionTree, LearnError> {
    if train.is_empty() {
        return Err(LearnError::EmptyTrainSet);
    }
    if config.min_leaf == 0 {
        return Err(LearnError::BadConfig("min_leaf must be at least 1".into()));
    }
    let mut tree = DecisionTree {
        nodes: Vec::new(),
        n_classes: train.n_classes(),
    };
    let rows: Vec<usize> = (0..train.len()).collect();
    build_node(train, weights, &rows, config, 0, rng, &mut tree.nodes);
    Ok(tree)
}

fn class_counts(train: &Dataset, weights: &[f64], rows: &[usize]) -> Vec<f64> {
    let mut counts = vec![0.0; train.n_classes()];
    for &r in rows {
        counts[train.label(r)] += weights[r];
    }
    counts
}

fn gini(counts: &[f64]) -> f64 {
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    1.0 - counts.iter().map(|&c| (c / total) * (c / total)).sum::<f64>()
}

struct BestSplit {
    coord: u32,
    threshold: f64,
    decrease: f64,
}

fn build_node(
    train: &Dataset,
    weights: &[f64],
    rows: &[usize],
    config: &TreeConfig,
    depth: u32,
    rng: &mut ChaCha8Rng,
    nodes: &mut Vec<Node>,
) -> usize {
    let counts = class_counts(train, weights, rows);
    let node_gini = gini(&counts);
    let at_depth_limit = config.max_depth.map(|d| depth >= d).unwrap_or(false);
    if at_depth_limit || node_gini == 0.0 || rows.len() < 2 * config.min_leaf {
        nodes.push(Node::Leaf { counts });
        return nodes.len() - 1;
    }

    let candidates = candidate_coords(train.dim(), config.feature_subsample, rng);
    let best = find_best_split(train, weights, rows, node_gini, &candidates, config.min_leaf);
    let Some(best) = best else {
        nodes.push(Node::Leaf { counts });
        return nodes.len() - 1;
    };

    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &r in rows {
        if train.value(r, best.coord) <= best.threshold {
            left.push(r);
        } else {
            right.push(r);
        }
    }
    let slot = nodes.len();
    nodes.push(Node::Leaf { counts: Vec::new() }); // placeholder
    let left_id = build_node(train, weights, &left, config, depth + 1, rng, nodes);
    let right_id = build_node(train, weights, &right, config, depth + 1, rng, nodes);
    nodes[slot] = Node::Split {
        coord: best.coord,
        threshold: best.threshold,
        left: left_id,
        right: right_id,
    };
    slot
}

fn candidate_coords(dim: u32, subsample: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let all: Vec<u32> = (0..dim).collect();
    match subsample {
        Some(k) if (k as u32) < dim => {
            let mut picked: Vec<u32> = all
                .choose_multiple(rng, k)
                .copied()
                .collect();
            picked.sort_unstable();
            picked
        }
        _ => all,
    }
}

fn find_best_split(
    train: &Dataset,
    weights: &[f64],
    rows: &[usize],
    node_gini: f64,
    coords: &[u32],
    min_leaf: usize,
) -> Option<BestSplit> {
    let total_counts = class_counts(train, weights, rows);
    let total_weight: f64 = total_counts.iter().sum();
    let mut best: Option<BestSplit> = None;

    for &coord in coords {
        let mut values: Vec<(f64, usize)> =
            rows.iter().map(|&r| (train.value(r, coord), r)).collect();
        values.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut left_counts = vec![0.0; train.n_classes()];
        let mut left_weight = 0.0;
        for i in 0..values.len() - 1 {
            let (v, r) = values[i];
            left_counts[train.label(r)] += weights[r];
            left_weight += weights[r];
            let next = values[i + 1].0;
            if v == next {
                continue;
            }
            let left_n = i + 1;
            let right_n = values.len() - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let right_counts: Vec<f64> = total_counts
                .iter()
                .zip(&left_counts)
                .map(|(t, l)| t - l)
                .collect();
            let right_weight = total_weight - left_weight;
            let weighted = (left_weight * gini(&left_counts) + right_weight * gini(&right_counts))
                / total_weight;
            // Zero-decrease splits are admissible: recursion keeps going
            // until purity, depth, or min_leaf stops it, and both sides of
            // a midpoint threshold are always non-empty.
            let decrease = node_gini - weighted;
            if best.as_ref().map(|b| decrease > b.decrease).unwrap_or(true) {
                best = Some(BestSplit {
                    coord,
                    threshold: (v + next) / 2.0,
                    decrease,
                });
            }
        }
    }
    best
}

impl DecisionTree {
    pub fn predict(&self, row: &Row) -> usize {
        let counts = self.leaf_counts(row);
        let best = counts.iter().cloned().fold(f64::MIN, f64::max);
        counts.iter().position(|&c| c == best).unwrap_or(0)
    }

    pub(crate) fn leaf_counts(&self, row: &Row) -> &[f64] {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { counts } => return counts,
                Node::Split {
                    coord,
                    threshold,
                    left,
                    right,
                } => {
                    at = if super::lookup(row, *coord) <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn depth(&self) -> u32 {
        fn walk(nodes: &[Node], at: usize) -> u32 {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// (coord, threshold) of every internal node.
    #[cfg(test)]
    pub(crate) fn splits(&self) -> Vec<(u32, f64)> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Split {
                    coord, threshold, ..
                } => Some((*coord, *threshold)),
                Node::Leaf { .. } => None,
            })
            .collect()
    }
}
