//! Edit-distance metrics: character-level for raw line pairing and
//! token-level (normalized) for signature clustering.

/// Levenshtein distance over any comparable item sequence, two-row DP.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ai) in a.iter().enumerate() {
        let mut prev = row[0];
        row[0] = i + 1;
        for (j, bj) in b.iter().enumerate() {
            let cur = row[j + 1];
            let sub = prev + usize::from(ai != bj);
            row[j + 1] = sub.min(row[j] + 1).min(cur + 1);
            prev = cur;
        }
    }
    row[b.len()]
}

/// Edit distance divided by the longer length; 0 for two empty sequences.
pub fn normalized_levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    let denom = a.len().max(b.len());
    if denom == 0 {
        return 0.0;
    }
    levenshtein(a, b) as f64 / denom as f64
}

/// Character-level similarity between two raw code lines,
/// `1 - lev(a, b) / max(|a|, |b|)`. Two empty lines are identical (1.0).
pub fn char_similarity(a: &str, b: &str) -> f64 {
    let ac: Vec<char> = a.chars().collect();
    let bc: Vec<char> = b.chars().collect();
    1.0 - normalized_levenshtein(&ac, &bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Full-matrix DP, kept independent of the two-row implementation.
    fn lev_oracle<T: PartialEq>(a: &[T], b: &[T]) -> usize {
        let (m, n) = (a.len(), b.len());
        let mut d = vec![vec![0usize; n + 1]; m + 1];
        for i in 0..=m {
            d[i][0] = i;
        }
        for j in 0..=n {
            d[0][j] = j;
        }
        for i in 1..=m {
            for j in 1..=n {
                let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
            }
        }
        d[m][n]
    }

    #[test]
    fn spot_values() {
        assert_eq!(levenshtein(b"kitten", b"sitting"), 3);
        assert_eq!(levenshtein::<u8>(b"", b""), 0);
        assert_eq!(levenshtein(b"abc", b""), 3);
        let a = ["cn_fast_hash()"];
        let b = ["cn_fast_hash()", "free()"];
        assert_eq!(normalized_levenshtein(&a, &b), 0.5);
        assert_eq!(normalized_levenshtein::<&str>(&[], &[]), 0.0);
    }

    #[test]
    fn char_similarity_empty() {
        assert_eq!(char_similarity("", ""), 1.0);
        assert_eq!(char_similarity("abc", ""), 0.0);
    }

    proptest! {
        #[test]
        fn matches_full_matrix_oracle(a in proptest::collection::vec(0u8..4, 0..12),
                                      b in proptest::collection::vec(0u8..4, 0..12)) {
            prop_assert_eq!(levenshtein(&a, &b), lev_oracle(&a, &b));
        }

        #[test]
        fn normalized_metric_properties(a in proptest::collection::vec(0u8..4, 0..10),
                                        b in proptest::collection::vec(0u8..4, 0..10)) {
            let d = normalized_levenshtein(&a, &b);
            prop_assert!((0.0..=1.0).contains(&d));
            prop_assert_eq!(d == 0.0, a == b);
            prop_assert_eq!(d, normalized_levenshtein(&b, &a));
        }

        // Generalized triangle inequality of the normalization:
        // d(a,c) <= (|a∨b|·d(a,b) + |b∨c|·d(b,c)) / |a∨c|, |x∨y| = max length.
        #[test]
        fn normalized_triangle_inequality(a in proptest::collection::vec(0u8..4, 0..8),
                                          b in proptest::collection::vec(0u8..4, 0..8),
                                          c in proptest::collection::vec(0u8..4, 0..8)) {
            let ac = a.len().max(c.len());
            if ac > 0 {
                let lhs = normalized_levenshtein(&a, &c);
                let rhs = (a.len().max(b.len()) as f64 * normalized_levenshtein(&a, &b)
                    + b.len().max(c.len()) as f64 * normalized_levenshtein(&b, &c))
                    / ac as f64;
                prop_assert!(lhs <= rhs + 1e-12);
            }
        }
    }
}
