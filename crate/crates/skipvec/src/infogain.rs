//! Information-gain-ratio scoring and top-n feature selection.
//!
//! Features are binary splits over the training resources: a feature
//! partitions them into possessors and non-possessors, and its gain ratio
//! is the entropy decrease of that split normalized by the split's own
//! entropy. Features splitting nothing (possessed by all or none) score 0.
//! All statistics are computed on training resources only.

use std::collections::HashMap;

use crate::extract::{Feature, UnionFeatures};
use crate::rdf::Graph;

#[derive(Debug, thiserror::Error)]
pub enum InfoGainError {
    #[error("entropy of an empty resource set is undefined")]
    EmptySet,
}

/// Shannon entropy in bits of a class-count table. Zero counts contribute
/// nothing; an all-zero table is an error.
pub fn entropy(class_counts: &[u64]) -> Result<f64, InfoGainError> {
    let total: u64 = class_counts.iter().sum();
    if total == 0 {
        return Err(InfoGainError::EmptySet);
    }
    let total = total as f64;
    let mut h = 0.0;
    for &k in class_counts {
        if k == 0 {
            continue;
        }
        let p = k as f64 / total;
        h -= p * p.log2();
    }
    Ok(h)
}

/// Per-feature class-count table over the training resources, split by
/// possession of the feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureStats {
    pub with_counts: Vec<u64>,
    pub without_counts: Vec<u64>,
}

impl FeatureStats {
    pub fn new(with_counts: Vec<u64>, without_counts: Vec<u64>) -> FeatureStats {
        assert_eq!(with_counts.len(), without_counts.len());
        FeatureStats {
            with_counts,
            without_counts,
        }
    }

    pub fn possessing(&self) -> u64 {
        self.with_counts.iter().sum()
    }

    pub fn lacking(&self) -> u64 {
        self.without_counts.iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.possessing() + self.lacking()
    }
}

/// Entropy remaining after splitting by the feature: the size-weighted
/// average of the two sides' entropies. An empty side contributes 0.
pub fn conditional_entropy(stats: &FeatureStats) -> Result<f64, InfoGainError> {
    let total = stats.total();
    if total == 0 {
        return Err(InfoGainError::EmptySet);
    }
    let mut h = 0.0;
    for (side, count) in [
        (&stats.with_counts, stats.possessing()),
        (&stats.without_counts, stats.lacking()),
    ] {
        if count > 0 {
            h += (count as f64 / total as f64) * entropy(side)?;
        }
    }
    Ok(h)
}

/// Entropy of the two-way partition sizes themselves, i.e. with the
/// feature acting as the class label.
pub fn split_info(stats: &FeatureStats) -> Result<f64, InfoGainError> {
    entropy(&[stats.possessing(), stats.lacking()])
}

/// Information gain ratio of a feature. `base_entropy` is the entropy of
/// the whole training set. Returns 0 when the split information is 0: a
/// feature possessed by all or no resources carries no class signal.
pub fn gain_ratio(stats: &FeatureStats, base_entropy: f64) -> Result<f64, InfoGainError> {
    let split = split_info(stats)?;
    if split == 0.0 {
        return Ok(0.0);
    }
    let gain = (base_entropy - conditional_entropy(stats)?).max(0.0);
    Ok(gain / split)
}

/// A scored feature, ready for ranking.
#[derive(Debug, Clone)]
pub struct RankedFeature {
    pub feature: Feature,
    /// Canonical string form, used for reports and as the final tie-break.
    pub canonical: String,
    pub gain_ratio: f64,
    /// Number of training resources possessing the feature.
    pub occurrence: usize,
}

/// Drops features occurring in fewer than `min_count` training resources.
/// The default of 2 removes singleton noise.
pub fn filter_singletons(
    membership: &HashMap<Feature, Vec<usize>>,
    min_count: usize,
) -> impl Iterator<Item = (&Feature, &Vec<usize>)> {
    membership
        .iter()
        .filter(move |(_, rows)| rows.len() >= min_count)
}

/// Scores one pattern's features over the training resources.
///
/// `membership` rows index into `train_classes`; `class_totals` are the
/// per-class sizes of the training set. Output order is unspecified; use
/// [`select_top_n`] to rank.
pub fn score_features(
    g: &Graph,
    union: &UnionFeatures,
    train_classes: &[usize],
    class_totals: &[u64],
    min_count: usize,
) -> Result<Vec<RankedFeature>, InfoGainError> {
    let base = entropy(class_totals)?;
    let mut out = Vec::new();
    for (feature, rows) in filter_singletons(&union.membership, min_count) {
        let mut with_counts = vec![0u64; class_totals.len()];
        for &row in rows {
            with_counts[train_classes[row]] += 1;
        }
        let without_counts: Vec<u64> = class_totals
            .iter()
            .zip(&with_counts)
            .map(|(&t, &w)| t - w)
            .collect();
        let stats = FeatureStats::new(with_counts, without_counts);
        out.push(RankedFeature {
            canonical: feature.canonical(g),
            feature: feature.clone(),
            gain_ratio: gain_ratio(&stats, base)?,
            occurrence: rows.len(),
        });
    }
    Ok(out)
}

/// Sorts by gain ratio descending, breaking ties by occurrence descending
/// then canonical string ascending, and keeps the first min(n, len). The
/// resulting order defines the vector's coordinate sequence.
pub fn select_top_n(mut ranked: Vec<RankedFeature>, n: usize) -> Vec<RankedFeature> {
    ranked.sort_by(|a, b| {
        b.gain_ratio
            .total_cmp(&a.gain_ratio)
            .then(b.occurrence.cmp(&a.occurrence))
            .then(a.canonical.cmp(&b.canonical))
    });
    ranked.truncate(n);
    ranked
}
