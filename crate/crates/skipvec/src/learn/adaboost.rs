use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::{tree_train_weighted, DecisionTree, TreeConfig};
use super::{Dataset, LearnError, Row};

#[derive(Debug, Clone)]
pub struct AdaBoostConfig {
    /// Maximum depth of the weak trees (1..=10).
    pub weak_depth: u32,
    pub rounds: usize,
}

impl Default for AdaBoostConfig {
    fn default() -> Self {
        AdaBoostConfig {
            weak_depth: 1,
            rounds: 50,
        }
    }
}

/// Stagewise multiclass exponential-loss boosting over depth-limited Gini
/// trees (SAMME). Binary labels are the two-class special case.
#[derive(Debug, Clone)]
pub struct AdaBoost {
    stages: Vec<(f64, DecisionTree)>,
    n_classes: usize,
}

pub fn adaboost_train(
    train: &Dataset,
    config: &AdaBoostConfig,
    seed: u64,
) -> Result<AdaBoost, LearnError> {
    if train.is_empty() {
        return Err(LearnError::EmptyTrainSet);
    }
    if !(1..=10).contains(&config.weak_depth) {
        return Err(LearnError::BadConfig(format!(
            "weak_depth must be in 1..=10, got {}",
            config.weak_depth
        )));
    }
    if config.rounds == 0 {
        return Err(LearnError::BadConfig("rounds must be at least 1".into()));
    }

    let n = train.len();
    let k = train.n_classes() as f64;
    let tree_cfg = TreeConfig {
        max_depth: Some(config.weak_depth),
        min_leaf: 1,
        feature_subsample: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![1.0 / n as f64; n];
    let mut stages = Vec::new();

    for _ in 0..config.rounds {
        let tree = tree_train_weighted(train, &weights, &tree_cfg, &mut rng)?;
        let misses: Vec<bool> = (0..n)
            .map(|i| tree.predict(train.row(i)) != train.label(i))
            .collect();
        let err: f64 = misses
            .iter()
            .zip(&weights)
            .filter(|(m, _)| **m)
            .map(|(_, w)| w)
            .sum();

        if err >= 1.0 - 1.0 / k {
            // No better than chance: stop boosting early.
            break;
        }
        if err < 1e-12 {
            // A perfect weak learner caps the ensemble.
            stages.push((((1.0 - 1e-12) / 1e-12f64).ln() + (k - 1.0).ln(), tree));
            break;
        }

        let alpha = ((1.0 - err) / err).ln() + (k - 1.0).ln();
        for (w, &miss) in weights.iter_mut().zip(&misses) {
            if miss {
                *w *= alpha.exp();
            }
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        stages.push((alpha, tree));
    }

    if stages.is_empty() {
        // Even the first weak learner failed the SAMME condition; keep it
        // unweighted so prediction still returns the majority class.
        let tree = tree_train_weighted(train, &weights, &tree_cfg, &mut rng)?;
        stages.push((1.0, tree));
    }

    Ok(AdaBoost {
        stages,
        n_classes: train.n_classes(),
    })
}

impl AdaBoost {
    pub fn predict(&self, row: &Row) -> usize {
        let mut scores = vec![0.0; self.n_classes];
        for (alpha, tree) in &self.stages {
            scores[tree.predict(row)] += alpha;
        }
        let best = scores.iter().cloned().fold(f64::MIN, f64::max);
        scores.iter().position(|&s| s == best).unwrap_or(0)
    }

    pub fn rounds(&self) -> usize {
        self.stages.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(values: &[f64]) -> Row {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32, *v))
            .collect()
    }

    fn train_err(model: &AdaBoost, data: &Dataset) -> f64 {
        let misses = (0..data.len())
            .filter(|&i| model.predict(data.row(i)) != data.label(i))
            .count();
        misses as f64 / data.len() as f64
    }

    #[test]
    fn stumps_fit_linearly_separable_data() {
        let rows: Vec<Row> = (0..20).map(|i| dense(&[i as f64])).collect();
        let labels: Vec<usize> = (0..20).map(|i| usize::from(i >= 10)).collect();
        let d = Dataset::new(rows, labels, 1, 2).unwrap();
        let cfg = AdaBoostConfig {
            weak_depth: 1,
            rounds: 10,
        };
        let model = adaboost_train(&d, &cfg, 0).unwrap();
        assert_eq!(train_err(&model, &d), 0.0);
        assert!(model.rounds() <= 10);
    }

    #[test]
    fn one_round_is_one_weighted_tree() {
        let rows = vec![dense(&[0.0]), dense(&[1.0]), dense(&[2.0]), dense(&[3.0])];
        let d = Dataset::new(rows, vec![0, 0, 1, 1], 1, 2).unwrap();
        let cfg = AdaBoostConfig {
            weak_depth: 2,
            rounds: 1,
        };
        let model = adaboost_train(&d, &cfg, 0).unwrap();
        assert_eq!(model.rounds(), 1);
        assert_eq!(train_err(&model, &d), 0.0);
    }

    #[test]
    fn pure_data_trains_one_trivial_round() {
        let rows = vec![dense(&[1.0]), dense(&[2.0])];
        let d = Dataset::new(rows, vec![1, 1], 1, 2).unwrap();
        let model = adaboost_train(&d, &AdaBoostConfig::default(), 0).unwrap();
        assert_eq!(model.rounds(), 1);
        assert_eq!(model.predict(&dense(&[5.0])), 1);
    }

    #[test]
    fn training_error_is_non_increasing_on_xor() {
        let rows = vec![
            dense(&[0.0, 0.0]),
            dense(&[0.0, 1.0]),
            dense(&[1.0, 0.0]),
            dense(&[1.0, 1.0]),
        ];
        let d = Dataset::new(rows, vec![0, 1, 1, 0], 2, 2).unwrap();
        let mut last = f64::INFINITY;
        for rounds in [1, 2, 4, 8, 16] {
            let cfg = AdaBoostConfig {
                weak_depth: 2,
                rounds,
            };
            let model = adaboost_train(&d, &cfg, 0).unwrap();
            let err = train_err(&model, &d);
            assert!(err <= last + 1e-12);
            last = err;
        }
        assert_eq!(last, 0.0);
    }

    #[test]
    fn multiclass_boosting_learns_three_bands() {
        let rows: Vec<Row> = (0..30).map(|i| dense(&[i as f64])).collect();
        let labels: Vec<usize> = (0..30).map(|i| i / 10).collect();
        let d = Dataset::new(rows, labels, 1, 3).unwrap();
        let cfg = AdaBoostConfig {
            weak_depth: 2,
            rounds: 20,
        };
        let model = adaboost_train(&d, &cfg, 1).unwrap();
        assert_eq!(train_err(&model, &d), 0.0);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let d = Dataset::new(vec![dense(&[0.0])], vec![0], 1, 2).unwrap();
        for weak_depth in [0, 11] {
            let cfg = AdaBoostConfig {
                weak_depth,
                rounds: 5,
            };
            assert!(adaboost_train(&d, &cfg, 0).is_err());
        }
    }
}
