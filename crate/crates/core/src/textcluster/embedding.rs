//! Word-embedding table in word2vec text format.

use std::collections::HashMap;
use std::path::Path;

use super::ClusterError;

/// Word → vector table; all vectors share one dimension. Lookup of a missing
/// word returns `None`, never a zero vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn from_vectors(
        dimension: usize,
        vectors: impl IntoIterator<Item = (String, Vec<f64>)>,
    ) -> Result<Self, ClusterError> {
        let mut map = HashMap::new();
        for (word, v) in vectors {
            if v.len() != dimension {
                return Err(ClusterError::InvalidParams(format!(
                    "vector for {word:?} has dimension {} (expected {dimension})",
                    v.len()
                )));
            }
            if map.insert(word.clone(), v).is_some() {
                return Err(ClusterError::InvalidParams(format!(
                    "duplicate word {word:?}"
                )));
            }
        }
        Ok(Self {
            dimension,
            vectors: map,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vectors.contains_key(word)
    }
}

/// Loads a word2vec text file: a `count dim` header, then one
/// `word v1 ... vdim` row per line.
pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable, ClusterError> {
    let text = std::fs::read_to_string(path).map_err(|source| ClusterError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let path_str = path.display().to_string();
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| ClusterError::EmbeddingParse {
        path: path_str.clone(),
        line: 1,
        message: "empty file".into(),
    })?;
    let parse_header = |h: &str| -> Option<(usize, usize)> {
        let mut it = h.split_whitespace();
        let count = it.next()?.parse().ok()?;
        let dim = it.next()?.parse().ok()?;
        it.next().is_none().then_some((count, dim))
    };
    let (count, dim) = parse_header(header).ok_or_else(|| ClusterError::EmbeddingParse {
        path: path_str.clone(),
        line: 1,
        message: format!("expected \"count dim\" header, got {header:?}"),
    })?;

    let mut vectors: HashMap<String, Vec<f64>> = HashMap::with_capacity(count);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let word = fields.next().expect("non-empty line has a first field");
        let components: Result<Vec<f64>, _> = fields.map(str::parse).collect();
        let components = components.map_err(|e| ClusterError::EmbeddingParse {
            path: path_str.clone(),
            line: line_no,
            message: format!("bad component: {e}"),
        })?;
        if components.len() != dim {
            return Err(ClusterError::EmbeddingParse {
                path: path_str.clone(),
                line: line_no,
                message: format!(
                    "row has {} components, header declares {dim}",
                    components.len()
                ),
            });
        }
        if vectors.insert(word.to_string(), components).is_some() {
            return Err(ClusterError::EmbeddingParse {
                path: path_str.clone(),
                line: line_no,
                message: format!("duplicate word {word:?}"),
            });
        }
    }
    if vectors.len() != count {
        return Err(ClusterError::EmbeddingParse {
            path: path_str,
            line: text.lines().count(),
            message: format!("header declares {count} entries, found {}", vectors.len()),
        });
    }
    Ok(EmbeddingTable {
        dimension: dim,
        vectors,
    })
}

/// Cosine similarity; 0 when either vector has zero norm.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
