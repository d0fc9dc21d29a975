//! Bottom-up agglomerative clustering with unweighted average linkage.

use super::{canonicalize_labels, ClusterAssignment, ClusterError, ClusterParams, DistanceMatrix};

/// Full merge sequence. Clusters are identified by their smallest member
/// index; merge ties break on the smallest (i, j) identifier pair, so the
/// sequence is a pure function of the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n: usize,
    /// (kept, absorbed) cluster identifiers, in merge order.
    merges: Vec<(usize, usize)>,
}

/// Computes the complete average-linkage merge sequence once; cutting at any
/// k is then a replay. The Lance–Williams update keeps each cluster pair's
/// distance equal to the mean of all original cross-pair distances.
pub fn agglomerative_dendrogram(d: &DistanceMatrix) -> Dendrogram {
    let n = d.len();
    let mut dist: Vec<f64> = (0..n * n).map(|idx| d.get(idx / n, idx % n)).collect();
    let mut size = vec![1usize; n];
    let mut active: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    while active.len() > 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for (ai, &i) in active.iter().enumerate() {
            for &j in &active[ai + 1..] {
                let v = dist[i * n + j];
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (_, i, j) = best.expect("at least one active pair");
        let (si, sj) = (size[i] as f64, size[j] as f64);
        for &c in &active {
            if c == i || c == j {
                continue;
            }
            let merged = (si * dist[i * n + c] + sj * dist[j * n + c]) / (si + sj);
            dist[i * n + c] = merged;
            dist[c * n + i] = merged;
        }
        size[i] += size[j];
        active.retain(|&c| c != j);
        merges.push((i, j));
    }
    Dendrogram { n, merges }
}

impl Dendrogram {
    /// Labels after merging down to k clusters, numbered canonically by
    /// smallest member index.
    pub fn assignments(&self, k: usize) -> Result<Vec<usize>, ClusterError> {
        if k == 0 || k > self.n || (self.n == 0) {
            return Err(ClusterError::InvalidK { k, n: self.n });
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        for &(kept, absorbed) in &self.merges[..self.n - k] {
            parent[absorbed] = kept;
        }
        let reps: Vec<usize> = (0..self.n)
            .map(|mut v| {
                while parent[v] != v {
                    v = parent[v];
                }
                v
            })
            .collect();
        Ok(canonicalize_labels(&reps))
    }
}

/// Average-linkage clustering cut at k clusters.
pub fn agglomerative_cluster(
    d: &DistanceMatrix,
    k: usize,
) -> Result<ClusterAssignment, ClusterError> {
    let labels = agglomerative_dendrogram(d).assignments(k)?;
    Ok(ClusterAssignment {
        labels,
        exemplars: None,
        params: ClusterParams::Agglomerative { k },
        converged: true,
    })
}
