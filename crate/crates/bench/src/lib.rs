//! Synthetic inputs for the pipeline benchmarks: deterministic generators
//! so runs are comparable across machines and invocations.

use patchmine_core::codesig::{FragmentSignature, SigToken};
use patchmine_core::textcluster::{DistanceMatrix, EmbeddingTable, SimilarityMatrix};

/// Small xorshift generator; good enough for benchmark payloads.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Random symmetric distance matrix with zero diagonal.
pub fn random_distance_matrix(n: usize, seed: u64) -> DistanceMatrix {
    let mut rng = SplitMix(seed);
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.f64() + 0.01;
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    DistanceMatrix::new((0..n).map(|i| i.to_string()).collect(), d).unwrap()
}

/// Similarity matrix with two planted groups, the acceptance-style shape.
pub fn two_group_similarity(n: usize) -> SimilarityMatrix {
    let mut s = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s[i * n + j] = if (i < n / 2) == (j < n / 2) { 0.9 } else { 0.1 };
            }
        }
    }
    SimilarityMatrix::new((0..n).map(|i| i.to_string()).collect(), s).unwrap()
}

/// Embedding table over a synthetic vocabulary of `words` vectors.
pub fn synthetic_embeddings(words: usize, dim: usize) -> EmbeddingTable {
    let mut rng = SplitMix(7);
    EmbeddingTable::from_vectors(
        dim,
        (0..words).map(|w| {
            (
                format!("w{w}"),
                (0..dim).map(|_| rng.f64() * 2.0 - 1.0).collect(),
            )
        }),
    )
    .unwrap()
}

/// Random short sentence over the synthetic vocabulary.
pub fn sentence(len: usize, vocab: usize, rng: &mut SplitMix) -> Vec<String> {
    (0..len).map(|_| format!("w{}", rng.range(vocab))).collect()
}

/// Token sequences resembling change signatures, for distance benchmarks.
pub fn signature(len: usize, rng: &mut SplitMix) -> FragmentSignature {
    let calls = ["check", "insert", "validate", "hash", "relay", "lock"];
    let tokens: Vec<SigToken> = (0..len)
        .map(|_| match rng.range(5) {
            0 => SigToken::If,
            1 => SigToken::Return,
            2 => SigToken::Nil,
            3 => SigToken::Var(rng.range(2) as u8),
            _ => SigToken::Call(calls[rng.range(calls.len())].to_string()),
        })
        .collect();
    FragmentSignature {
        empty: tokens.is_empty(),
        tokens,
    }
}
