//! Embedding-backed distances, clustering, and cluster validation shared by
//! the title pipeline and the code-signature pipeline.

mod affinity;
mod agglomerative;
mod embedding;
mod matrix;
mod silhouette;
mod sweep;
mod wmd;

pub use affinity::{affinity_propagation, ApParams, Preference};
pub use agglomerative::{agglomerative_cluster, agglomerative_dendrogram, Dendrogram};
pub use embedding::{cosine_similarity, load_embeddings, EmbeddingTable};
pub use matrix::{pairwise_distance_matrix, DistanceMatrix, SimilarityMatrix};
pub use silhouette::silhouette_score;
pub use sweep::{
    default_damping_grid, default_k_grid, sweep_clustering, SweepEntry, SweepResult, SweepSpec,
};
pub use wmd::{wmd_distance, WmdResult};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ClusterError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("embedding file {path}, line {line}: {message}")]
    EmbeddingParse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("matrix is not a valid distance/similarity matrix: {0}")]
    InvalidMatrix(String),
    #[error("metric failed on pair ({a}, {b}): {message}")]
    MetricFailure {
        a: String,
        b: String,
        message: String,
    },
    #[error("cluster count {k} out of range for {n} items")]
    InvalidK { k: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("silhouette undefined: {0}")]
    SilhouetteUndefined(String),
    #[error("no valid sweep setting for {n} items")]
    EmptySweep { n: usize },
}

/// Parameters a clustering run was produced with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum ClusterParams {
    Agglomerative { k: usize },
    AffinityPropagation { damping: f64, preference: f64 },
}

/// Labels for every item, optional exemplars (affinity propagation), and the
/// parameters used. Cluster ids are canonical: clusters are numbered by
/// their smallest member index, so identical inputs yield identical labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub exemplars: Option<BTreeMap<usize, usize>>,
    pub params: ClusterParams,
    pub converged: bool,
}

impl ClusterAssignment {
    pub fn cluster_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }
}

/// Relabels arbitrary cluster labels canonically: clusters are numbered in
/// order of first appearance (i.e. by smallest member index).
pub(crate) fn canonicalize_labels(raw: &[usize]) -> Vec<usize> {
    let mut mapping: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0;
    raw.iter()
        .map(|&label| {
            *mapping.entry(label).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}
