use super::{sq_distance, Dataset, LearnError, Row};

/// k-nearest-neighbor prediction under Euclidean distance on sparse rows.
///
/// Distance ties break by training-row order; vote ties break toward the
/// smallest class index.
pub fn knn_predict(train: &Dataset, query: &Row, k: usize) -> Result<usize, LearnError> {
    if train.is_empty() {
        return Err(LearnError::EmptyTrainSet);
    }
    if k == 0 || k > train.len() {
        return Err(LearnError::KRange {
            k,
            train: train.len(),
        });
    }
    let mut scored: Vec<(f64, usize)> = (0..train.len())
        .map(|i| (sq_distance(train.row(i), query), i))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut votes = vec![0usize; train.n_classes()];
    for &(_, i) in &scored[..k] {
        votes[train.label(i)] += 1;
    }
    let best = votes.iter().max().copied().unwrap_or(0);
    Ok(votes.iter().position(|&v| v == best).unwrap())
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

    fn toy() -> Dataset {
        let rows = vec![
            dense(&[0.0]),
            dense(&[1.0]),
            dense(&[2.0]),
            dense(&[10.0]),
            dense(&[11.0]),
        ];
        Dataset::new(rows, vec![0, 0, 0, 1, 1], 1, 2).unwrap()
    }

    #[test]
    fn exact_match_wins_at_k1() {
        let d = toy();
        assert_eq!(knn_predict(&d, &dense(&[10.0]), 1).unwrap(), 1);
        assert_eq!(knn_predict(&d, &dense(&[1.0]), 1).unwrap(), 0);
    }

    #[test]
    fn majority_of_three_beats_two_at_k5() {
        // Class 0 at distances {1,1,1}, class 1 at {2,2}.
        let rows = vec![
            dense(&[1.0, 0.0]),
            dense(&[0.0, 1.0]),
            dense(&[-1.0, 0.0]),
            dense(&[2.0, 0.0]),
            dense(&[0.0, 2.0]),
        ];
        let d = Dataset::new(rows, vec![0, 0, 0, 1, 1], 2, 2).unwrap();
        assert_eq!(knn_predict(&d, &dense(&[0.0, 0.0]), 5).unwrap(), 0);
    }

    #[test]
    fn full_vote_on_balanced_data_ties_to_class_zero() {
        let rows = vec![dense(&[0.0]), dense(&[1.0]), dense(&[2.0]), dense(&[3.0])];
        let d = Dataset::new(rows, vec![1, 0, 1, 0], 1, 2).unwrap();
        assert_eq!(knn_predict(&d, &dense(&[1.5]), 4).unwrap(), 0);
    }

    #[test]
    fn bad_k_and_empty_train_error() {
        let d = toy();
        assert!(knn_predict(&d, &dense(&[0.0]), 0).is_err());
        assert!(knn_predict(&d, &dense(&[0.0]), 6).is_err());
        let empty = Dataset::new(vec![], vec![], 1, 2).unwrap();
        assert!(knn_predict(&empty, &dense(&[0.0]), 1).is_err());
    }

    #[test]
    fn distance_ties_prefer_earlier_rows() {
        // Rows 0 and 1 are equidistant from the query; row 0 has class 1.
        let rows = vec![dense(&[-1.0]), dense(&[1.0]), dense(&[5.0])];
        let d = Dataset::new(rows, vec![1, 0, 0], 1, 2).unwrap();
        assert_eq!(knn_predict(&d, &dense(&[0.0]), 1).unwrap(), 1);
    }
}
