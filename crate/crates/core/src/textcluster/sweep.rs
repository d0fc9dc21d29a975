//! Parameter sweeps: run a clustering algorithm over a grid, score each
//! setting with the silhouette coefficient, and keep the argmax.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    affinity_propagation, agglomerative_dendrogram, silhouette_score, ApParams,
    ClusterAssignment, ClusterError, ClusterParams, DistanceMatrix, SimilarityMatrix,
};

/// What to sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// Cluster counts for average-linkage agglomerative clustering; values
    /// above n are clipped away.
    Agglomerative { ks: Vec<usize> },
    /// Damping factors for affinity propagation over `1 - d` similarities
    /// (the distances must already be normalized into [0, 1]).
    AffinityPropagation { dampings: Vec<f64>, base: ApParams },
}

/// Default agglomerative grid: 25, 27, …, 225.
pub fn default_k_grid() -> Vec<usize> {
    (25..=225).step_by(2).collect()
}

/// Default damping grid: 0.50, 0.51, …, 0.99. The endpoint 1.0 is excluded
/// because it freezes the messages.
pub fn default_damping_grid() -> Vec<f64> {
    (50..=99).map(|i| i as f64 / 100.0).collect()
}

/// One scored grid point. `silhouette` is None when the setting produced an
/// unscoreable clustering (fewer than two clusters).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub setting: String,
    pub clusters: usize,
    pub silhouette: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub best: ClusterAssignment,
    pub best_score: f64,
    pub table: Vec<SweepEntry>,
}

/// Runs every grid setting (in parallel), scores it, and returns the argmax
/// with the full score table. Ties keep the earlier grid entry, so ascending
/// grids prefer the smaller k or damping.
pub fn sweep_clustering(
    d: &DistanceMatrix,
    spec: &SweepSpec,
) -> Result<SweepResult, ClusterError> {
    let n = d.len();
    let runs: Vec<(String, Result<ClusterAssignment, ClusterError>)> = match spec {
        SweepSpec::Agglomerative { ks } => {
            let ks: Vec<usize> = ks.iter().copied().filter(|&k| k <= n && k >= 1).collect();
            if ks.is_empty() {
                return Err(ClusterError::EmptySweep { n });
            }
            let dendrogram = agglomerative_dendrogram(d);
            ks.par_iter()
                .map(|&k| {
                    let run = dendrogram.assignments(k).map(|labels| ClusterAssignment {
                        labels,
                        exemplars: None,
                        params: ClusterParams::Agglomerative { k },
                        converged: true,
                    });
                    (format!("k={k}"), run)
                })
                .collect()
        }
        SweepSpec::AffinityPropagation { dampings, base } => {
            if dampings.is_empty() {
                return Err(ClusterError::EmptySweep { n });
            }
            let s = SimilarityMatrix::from_distances(d);
            dampings
                .par_iter()
                .map(|&damping| {
                    let params = ApParams { damping, ..*base };
                    (
                        format!("damping={damping:.2}"),
                        affinity_propagation(&s, &params),
                    )
                })
                .collect()
        }
    };

    let mut table = Vec::with_capacity(runs.len());
    let mut best: Option<(f64, ClusterAssignment)> = None;
    for (setting, run) in runs {
        let assignment = run?;
        let clusters = assignment.cluster_count();
        let score = if clusters >= 2 {
            Some(silhouette_score(d, &assignment.labels)?)
        } else {
            None
        };
        table.push(SweepEntry {
            setting,
            clusters,
            silhouette: score,
        });
        if let Some(score) = score {
            let better = best.as_ref().is_none_or(|(b, _)| score > *b);
            if better {
                best = Some((score, assignment));
            }
        }
    }
    let (best_score, best) = best.ok_or(ClusterError::EmptySweep { n })?;
    Ok(SweepResult {
        best,
        best_score,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triples() -> DistanceMatrix {
        let points: [f64; 6] = [0.0, 0.1, 0.2, 10.0, 10.1, 10.2];
        let n = points.len();
        let ids = (0..n).map(|i| i.to_string()).collect();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = (points[i] - points[j]).abs();
            }
        }
        DistanceMatrix::new(ids, d).unwrap()
    }

    #[test]
    fn grid_of_two_picks_two_triples() {
        let d = two_triples();
        let result = sweep_clustering(&d, &SweepSpec::Agglomerative { ks: vec![2, 3] }).unwrap();
        assert_eq!(result.best.labels, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(result.table.len(), 2);
        let s2 = result.table[0].silhouette.unwrap();
        let s3 = result.table[1].silhouette.unwrap();
        assert!(s2 > s3);
        assert_eq!(result.best_score, s2);
    }

    #[test]
    fn singleton_grid_returns_that_setting() {
        let d = two_triples();
        let result = sweep_clustering(&d, &SweepSpec::Agglomerative { ks: vec![3] }).unwrap();
        assert!(matches!(
            result.best.params,
            ClusterParams::Agglomerative { k: 3 }
        ));
    }

    #[test]
    fn oversized_grid_is_clipped_then_errors_when_empty() {
        let d = two_triples();
        let err = sweep_clustering(
            &d,
            &SweepSpec::Agglomerative {
                ks: vec![50, 100],
            },
        )
        .unwrap_err();
        assert!(matches!(err, ClusterError::EmptySweep { .. }));
    }

    #[test]
    fn affinity_sweep_over_dampings() {
        // Two tight groups over normalized distances.
        let n = 8;
        let ids = (0..n).map(|i| i.to_string()).collect();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d[i * n + j] = if (i < 4) == (j < 4) { 0.1 } else { 0.9 };
                }
            }
        }
        let d = DistanceMatrix::new(ids, d).unwrap();
        let result = sweep_clustering(
            &d,
            &SweepSpec::AffinityPropagation {
                dampings: vec![0.6, 0.78, 0.9],
                base: ApParams::default(),
            },
        )
        .unwrap();
        assert_eq!(result.table.len(), 3);
        assert_eq!(result.best.cluster_count(), 2);
        assert_eq!(result.best.labels[..4], [0, 0, 0, 0]);
        assert_eq!(result.best.labels[4..], [1, 1, 1, 1]);
    }
}
