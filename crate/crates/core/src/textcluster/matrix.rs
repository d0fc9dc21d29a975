//! Pairwise distance and similarity matrices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ClusterError;

/// Symmetric n×n non-negative distance matrix with zero diagonal and item
/// ids in fixed order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
    ids: Vec<String>,
}

impl DistanceMatrix {
    /// Validates symmetry, zero diagonal, finiteness, and non-negativity.
    pub fn new(ids: Vec<String>, d: Vec<f64>) -> Result<Self, ClusterError> {
        let n = ids.len();
        if d.len() != n * n {
            return Err(ClusterError::InvalidMatrix(format!(
                "expected {} entries for {} items, got {}",
                n * n,
                n,
                d.len()
            )));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(ClusterError::InvalidMatrix(format!(
                    "nonzero diagonal at {i}"
                )));
            }
            for j in 0..n {
                let v = d[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(ClusterError::InvalidMatrix(format!(
                        "entry ({i},{j}) = {v} is not a finite non-negative value"
                    )));
                }
                if v != d[j * n + i] {
                    return Err(ClusterError::InvalidMatrix(format!(
                        "asymmetry at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { n, d, ids })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn max_entry(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }
}

/// Symmetric similarity matrix (diagonal meaningful only to affinity
/// propagation, which overwrites it with the preference).
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    s: Vec<f64>,
    ids: Vec<String>,
}

impl SimilarityMatrix {
    pub fn new(ids: Vec<String>, s: Vec<f64>) -> Result<Self, ClusterError> {
        let n = ids.len();
        if s.len() != n * n {
            return Err(ClusterError::InvalidMatrix(format!(
                "expected {} entries for {} items, got {}",
                n * n,
                n,
                s.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = s[i * n + j];
                if !v.is_finite() {
                    return Err(ClusterError::InvalidMatrix(format!(
                        "entry ({i},{j}) is not finite"
                    )));
                }
                if v != s[j * n + i] {
                    return Err(ClusterError::InvalidMatrix(format!(
                        "asymmetry at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { n, s, ids })
    }

    /// `s = 1 - d`; intended for distances already normalized into [0, 1]
    /// (e.g. normalized Levenshtein).
    pub fn from_distances(d: &DistanceMatrix) -> Self {
        let s = d.d.iter().map(|&v| 1.0 - v).collect();
        Self {
            n: d.n,
            s,
            ids: d.ids.clone(),
        }
    }

    /// `s = 1 - d / max(d)`; for unbounded metrics such as WMD. A zero
    /// matrix maps to all-ones similarities.
    pub fn from_distances_normalized(d: &DistanceMatrix) -> Self {
        let max = d.max_entry();
        let s = if max > 0.0 {
            d.d.iter().map(|&v| 1.0 - v / max).collect()
        } else {
            vec![1.0; d.d.len()]
        };
        Self {
            n: d.n,
            s,
            ids: d.ids.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.s[i * self.n + j]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Median of the off-diagonal entries (each unordered pair counted
    /// once), the usual affinity-propagation preference default.
    pub fn median_off_diagonal(&self) -> f64 {
        let mut values = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                values.push(self.get(i, j));
            }
        }
        if values.is_empty() {
            return 0.0;
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let m = values.len();
        if m % 2 == 1 {
            values[m / 2]
        } else {
            (values[m / 2 - 1] + values[m / 2]) / 2.0
        }
    }
}

/// Fills the upper triangle in parallel, mirrors it, and zeroes the
/// diagonal. A metric failure reports the offending pair by id.
pub fn pairwise_distance_matrix<T, F>(
    ids: Vec<String>,
    items: &[T],
    metric: F,
) -> Result<DistanceMatrix, ClusterError>
where
    T: Sync,
    F: Fn(&T, &T) -> Result<f64, String> + Sync,
{
    assert_eq!(ids.len(), items.len(), "one id per item");
    let n = items.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    type Computed = Result<Vec<((usize, usize), f64)>, ClusterError>;
    let computed: Computed = pairs
        .par_iter()
        .map(|&(i, j)| {
            metric(&items[i], &items[j])
                .map(|v| ((i, j), v))
                .map_err(|message| ClusterError::MetricFailure {
                    a: ids[i].clone(),
                    b: ids[j].clone(),
                    message,
                })
        })
        .collect();
    let mut d = vec![0.0; n * n];
    for ((i, j), v) in computed? {
        d[i * n + j] = v;
        d[j * n + i] = v;
    }
    DistanceMatrix::new(ids, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_items_zero_matrix() {
        let items = vec![1, 1, 1];
        let ids = vec!["a".into(), "b".into(), "c".into()];
        let d = pairwise_distance_matrix(ids, &items, |a, b| {
            Ok((a - b) as f64)
        })
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn two_items_symmetric() {
        let items = vec![0.0f64, 3.0];
        let d = pairwise_distance_matrix(vec!["x".into(), "y".into()], &items, |a, b| {
            Ok((a - b).abs())
        })
        .unwrap();
        assert_eq!(d.get(0, 1), 3.0);
        assert_eq!(d.get(1, 0), 3.0);
        assert_eq!(d.get(0, 0), 0.0);
    }

    #[test]
    fn five_item_fixture_matches_double_loop() {
        let items: Vec<f64> = vec![0.0, 1.5, 4.0, 9.25, 16.0];
        let ids: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let d = pairwise_distance_matrix(ids, &items, |a, b| Ok((a - b).abs())).unwrap();
        // Independent serial double loop.
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d.get(i, j), (items[i] - items[j]).abs());
            }
        }
    }

    #[test]
    fn metric_failure_names_pair() {
        let items = vec![1, 2];
        let err = pairwise_distance_matrix(
            vec!["first".into(), "second".into()],
            &items,
            |_, _| Err::<f64, String>("boom".into()),
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("first") && msg.contains("second"));
    }

    #[test]
    fn validation_rejects_asymmetry() {
        let err = DistanceMatrix::new(
            vec!["a".into(), "b".into()],
            vec![0.0, 1.0, 2.0, 0.0],
        )
        .unwrap_err();
        assert!(err.to_string().contains("asymmetry"));
    }

    #[test]
    fn median_off_diagonal_even_and_odd() {
        let s = SimilarityMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![1.0, 0.1, 0.3, 0.1, 1.0, 0.5, 0.3, 0.5, 1.0],
        )
        .unwrap();
        assert_eq!(s.median_off_diagonal(), 0.3);
        let s2 = SimilarityMatrix::new(
            vec!["a".into(), "b".into()],
            vec![1.0, 0.4, 0.4, 1.0],
        )
        .unwrap();
        assert_eq!(s2.median_off_diagonal(), 0.4);
    }
}
