//! Silhouette coefficient for rating a clustering against its distances.

use std::collections::BTreeMap;

use super::{ClusterError, DistanceMatrix};

/// Mean silhouette `s(i) = (b(i) - a(i)) / max(a(i), b(i))` over all items.
///
/// `a(i)` is the mean distance to the other members of i's cluster, `b(i)`
/// the smallest mean distance to any other cluster. Items in singleton
/// clusters score 0. Undefined for fewer than two clusters.
pub fn silhouette_score(d: &DistanceMatrix, labels: &[usize]) -> Result<f64, ClusterError> {
    let n = d.len();
    if labels.len() != n {
        return Err(ClusterError::SilhouetteUndefined(format!(
            "{} labels for {n} items",
            labels.len()
        )));
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in labels.iter().enumerate() {
        members.entry(c).or_default().push(i);
    }
    if members.len() < 2 {
        return Err(ClusterError::SilhouetteUndefined(
            "need at least two clusters".into(),
        ));
    }
    let mut total = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let own = labels[i];
        let own_size = members[&own].len();
        if own_size == 1 {
            continue; // s(i) = 0
        }
        let a = members[&own]
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| d.get(i, j))
            .sum::<f64>()
            / (own_size - 1) as f64;
        let b = members
            .iter()
            .filter(|(&c, _)| c != own)
            .map(|(_, items)| {
                items.iter().map(|&j| d.get(i, j)).sum::<f64>() / items.len() as f64
            })
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(n: usize, f: impl Fn(usize, usize) -> f64) -> DistanceMatrix {
        let ids = (0..n).map(|i| i.to_string()).collect();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d[i * n + j] = f(i.min(j), i.max(j));
                }
            }
        }
        DistanceMatrix::new(ids, d).unwrap()
    }

    #[test]
    fn perfect_separation_scores_one() {
        // Two clusters, within-distance 0, between-distance 1.
        let d = matrix(4, |i, j| if (i < 2) == (j < 2) { 0.0 } else { 1.0 });
        let s = silhouette_score(&d, &[0, 0, 1, 1]).unwrap();
        assert_eq!(s, 1.0);
    }

    #[test]
    fn all_singletons_score_zero() {
        let d = matrix(4, |i, j| (i + j) as f64);
        let s = silhouette_score(&d, &[0, 1, 2, 3]).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn single_cluster_is_error() {
        let d = matrix(3, |_, _| 1.0);
        assert!(silhouette_score(&d, &[0, 0, 0]).is_err());
    }

    #[test]
    fn six_point_fixture_matches_formula() {
        let points: [f64; 6] = [0.0, 0.2, 0.5, 4.0, 4.3, 4.4];
        let d = matrix(6, |i, j| (points[i] - points[j]).abs());
        let labels = [0, 0, 0, 1, 1, 1];
        let got = silhouette_score(&d, &labels).unwrap();
        // Direct formula evaluation, written out independently.
        let mut expected = 0.0;
        for i in 0..6 {
            let mine: Vec<usize> = (0..6).filter(|&j| labels[j] == labels[i] && j != i).collect();
            let others: Vec<usize> = (0..6).filter(|&j| labels[j] != labels[i]).collect();
            let a: f64 = mine.iter().map(|&j| d.get(i, j)).sum::<f64>() / mine.len() as f64;
            let b: f64 = others.iter().map(|&j| d.get(i, j)).sum::<f64>() / others.len() as f64;
            expected += (b - a) / a.max(b);
        }
        expected /= 6.0;
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn invariant_under_relabeling() {
        let points: [f64; 6] = [0.0, 0.2, 0.5, 4.0, 4.3, 4.4];
        let d = matrix(6, |i, j| (points[i] - points[j]).abs());
        let s1 = silhouette_score(&d, &[0, 0, 0, 1, 1, 1]).unwrap();
        let s2 = silhouette_score(&d, &[7, 7, 7, 2, 2, 2]).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn invariant_under_item_permutation() {
        let points: [f64; 6] = [0.0, 0.2, 0.5, 4.0, 4.3, 4.4];
        let labels = [0usize, 0, 1, 1, 2, 2];
        let perm = [3usize, 0, 5, 1, 4, 2];
        let d = matrix(6, |i, j| (points[i] - points[j]).abs());
        let permuted_points: Vec<f64> = perm.iter().map(|&p| points[p]).collect();
        let permuted_labels: Vec<usize> = perm.iter().map(|&p| labels[p]).collect();
        let dp = matrix(6, |i, j| (permuted_points[i] - permuted_points[j]).abs());
        let s1 = silhouette_score(&d, &labels).unwrap();
        let s2 = silhouette_score(&dp, &permuted_labels).unwrap();
        assert!((s1 - s2).abs() < 1e-12);
    }
}
