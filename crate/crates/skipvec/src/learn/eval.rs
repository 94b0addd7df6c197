use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LearnError;

/// Stratified fold assignment: within each class, members are shuffled
/// and dealt round-robin, so every fold holds each class's share ±1.
/// Errors when any class has fewer members than folds.
pub fn stratified_folds(
    labels: &[usize],
    folds: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>, LearnError> {
    if folds < 2 {
        return Err(LearnError::BadConfig(format!(
            "need at least 2 folds, got {folds}"
        )));
    }
    let n_classes = labels.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Vec::new(); folds];
    for class in 0..n_classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < folds {
            return Err(LearnError::ClassTooSmall {
                class,
                size: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for (j, &idx) in members.iter().enumerate() {
            out[j % folds].push(idx);
        }
    }
    for fold in &mut out {
        fold.sort_unstable();
    }
    Ok(out)
}

/// Stratified train/test split: within each class, round(fraction · size)
/// members train, clamped so both sides stay non-empty. Errors when a
/// class is too small to appear on both sides.
pub fn train_test_split(
    labels: &[usize],
    train_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), LearnError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(LearnError::BadConfig(format!(
            "train fraction must be in (0, 1), got {train_fraction}"
        )));
    }
    let n_classes = labels.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in 0..n_classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < 2 {
            return Err(LearnError::DegenerateClass {
                class,
                size: members.len(),
            });
        }
        members.shuffle(&mut rng);
        let want = (train_fraction * members.len() as f64).round() as usize;
        let n_train = want.clamp(1, members.len() - 1);
        train.extend_from_slice(&members[..n_train]);
        test.extend_from_slice(&members[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

pub fn accuracy(predictions: &[usize], truth: &[usize]) -> f64 {
    assert_eq!(predictions.len(), truth.len());
    if truth.is_empty() {
        return 0.0;
    }
    let hits = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    hits as f64 / truth.len() as f64
}

/// Mean and population standard deviation.
pub fn mean_stddev(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
    (mean, var.sqrt())
}
