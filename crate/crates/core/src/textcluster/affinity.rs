//! Affinity propagation: exemplar-based clustering by damped
//! responsibility/availability message passing. No randomness anywhere;
//! ties break on the lowest index, so runs are exactly repeatable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ClusterAssignment, ClusterError, ClusterParams, SimilarityMatrix};

/// Self-similarity (preference) assigned to every diagonal entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    /// Median of the off-diagonal similarities.
    Median,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApParams {
    /// Damping factor λ in [0.5, 1.0).
    pub damping: f64,
    pub preference: Preference,
    pub max_iterations: usize,
    /// Iterations the exemplar set must stay unchanged to declare
    /// convergence.
    pub convergence_window: usize,
}

impl Default for ApParams {
    fn default() -> Self {
        Self {
            damping: 0.78,
            preference: Preference::Median,
            max_iterations: 200,
            convergence_window: 15,
        }
    }
}

impl ApParams {
    pub fn validate(&self) -> Result<(), ClusterError> {
        if !(0.5..1.0).contains(&self.damping) {
            return Err(ClusterError::InvalidParams(format!(
                "damping {} outside [0.5, 1.0)",
                self.damping
            )));
        }
        if self.convergence_window == 0 || self.max_iterations <= self.convergence_window {
            return Err(ClusterError::InvalidParams(format!(
                "need max_iterations ({}) > convergence_window ({}) > 0",
                self.max_iterations, self.convergence_window
            )));
        }
        Ok(())
    }
}

/// Runs affinity propagation on a similarity matrix.
///
/// Non-convergence at max_iterations is not an error: the assignment is
/// returned with `converged = false`. If no exemplar ever emerges, the item
/// with the highest self-evidence (lowest index on ties) becomes the single
/// exemplar so every input yields a usable assignment.
pub fn affinity_propagation(
    s: &SimilarityMatrix,
    params: &ApParams,
) -> Result<ClusterAssignment, ClusterError> {
    params.validate()?;
    let n = s.len();
    if n == 0 {
        return Err(ClusterError::InvalidMatrix("empty similarity matrix".into()));
    }
    let preference = match params.preference {
        Preference::Median => {
            if n == 1 {
                0.0
            } else {
                s.median_off_diagonal()
            }
        }
        Preference::Value(v) => v,
    };
    let params_used = ClusterParams::AffinityPropagation {
        damping: params.damping,
        preference,
    };
    if n == 1 {
        let mut exemplars = BTreeMap::new();
        exemplars.insert(0, 0);
        return Ok(ClusterAssignment {
            labels: vec![0],
            exemplars: Some(exemplars),
            params: params_used,
            converged: true,
        });
    }

    // Exactly symmetric inputs (identical items, mirrored groups) leave the
    // messages tied forever. An infinitesimal, index-decreasing bias on the
    // preferences realizes the lowest-index tie-break deterministically; it
    // sits far below any meaningful similarity gap.
    let mut scale = preference.abs().max(1.0);
    for i in 0..n {
        for k in 0..n {
            if i != k {
                scale = scale.max(s.get(i, k).abs());
            }
        }
    }
    let bias = 1e-9 * scale;
    let mut sim = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            sim[i * n + k] = if i == k {
                preference - i as f64 * bias
            } else {
                s.get(i, k)
            };
        }
    }

    let lambda = params.damping;
    let mut resp = vec![0.0; n * n];
    let mut avail = vec![0.0; n * n];
    let mut prev_exemplars: Vec<bool> = vec![false; n];
    let mut stable = 0usize;
    let mut converged = false;

    for _ in 0..params.max_iterations {
        // Responsibilities: r(i,k) = s(i,k) - max_{k' != k} (a(i,k') + s(i,k')).
        for i in 0..n {
            let row = i * n;
            let mut best = f64::NEG_INFINITY;
            let mut second = f64::NEG_INFINITY;
            let mut best_k = 0;
            for k in 0..n {
                let v = avail[row + k] + sim[row + k];
                if v > best {
                    second = best;
                    best = v;
                    best_k = k;
                } else if v > second {
                    second = v;
                }
            }
            for k in 0..n {
                let cutoff = if k == best_k { second } else { best };
                let new = sim[row + k] - cutoff;
                resp[row + k] = lambda * resp[row + k] + (1.0 - lambda) * new;
            }
        }
        // Availabilities: a(i,k) = min(0, r(k,k) + Σ_{i' ∉ {i,k}} max(0, r(i',k)));
        // a(k,k) = Σ_{i' != k} max(0, r(i',k)).
        for k in 0..n {
            let mut sum_pos = 0.0;
            for i in 0..n {
                if i != k {
                    sum_pos += resp[i * n + k].max(0.0);
                }
            }
            for i in 0..n {
                let new = if i == k {
                    sum_pos
                } else {
                    let without_i = sum_pos - resp[i * n + k].max(0.0);
                    (resp[k * n + k] + without_i).min(0.0)
                };
                avail[i * n + k] = lambda * avail[i * n + k] + (1.0 - lambda) * new;
            }
        }
        let exemplars: Vec<bool> = (0..n)
            .map(|k| avail[k * n + k] + resp[k * n + k] > 0.0)
            .collect();
        if exemplars == prev_exemplars {
            stable += 1;
        } else {
            stable = 0;
            prev_exemplars = exemplars;
        }
        if stable >= params.convergence_window && prev_exemplars.iter().any(|&e| e) {
            converged = true;
            break;
        }
    }

    let mut exemplar_items: Vec<usize> = (0..n).filter(|&k| prev_exemplars[k]).collect();
    if exemplar_items.is_empty() {
        let fallback = (0..n)
            .max_by(|&a, &b| {
                let va = avail[a * n + a] + resp[a * n + a];
                let vb = avail[b * n + b] + resp[b * n + b];
                va.partial_cmp(&vb)
                    .expect("finite messages")
                    .then(b.cmp(&a)) // prefer the lower index on ties
            })
            .expect("n >= 1");
        exemplar_items = vec![fallback];
    }

    // Each item joins the exemplar maximizing a(i,k) + s(i,k); exemplars
    // claim themselves. Ties go to the lowest exemplar index.
    let mut raw_labels = vec![0usize; n];
    for i in 0..n {
        if let Ok(pos) = exemplar_items.binary_search(&i) {
            raw_labels[i] = exemplar_items[pos];
            continue;
        }
        let mut best_k = exemplar_items[0];
        let mut best_v = f64::NEG_INFINITY;
        for &k in &exemplar_items {
            let v = avail[i * n + k] + sim[i * n + k];
            if v > best_v {
                best_v = v;
                best_k = k;
            }
        }
        raw_labels[i] = best_k;
    }

    let labels = super::canonicalize_labels(&raw_labels);
    let mut exemplars = BTreeMap::new();
    for &k in &exemplar_items {
        exemplars.insert(labels[k], k);
    }
    Ok(ClusterAssignment {
        labels,
        exemplars: Some(exemplars),
        params: params_used,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sim_from(entries: Vec<f64>, n: usize) -> SimilarityMatrix {
        let ids = (0..n).map(|i| i.to_string()).collect();
        SimilarityMatrix::new(ids, entries).unwrap()
    }

    fn two_groups() -> SimilarityMatrix {
        let n = 10;
        let mut s = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                s[i * n + j] = if (i < 5) == (j < 5) { 0.9 } else { 0.1 };
            }
        }
        sim_from(s, n)
    }

    #[test]
    fn identical_items_form_one_cluster_lowest_exemplar() {
        let n = 3;
        let mut s = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                s[i * n + j] = 0.7;
            }
        }
        let got = affinity_propagation(&sim_from(s, n), &ApParams::default()).unwrap();
        assert_eq!(got.labels, vec![0, 0, 0]);
        assert_eq!(got.exemplars.unwrap()[&0], 0);
    }

    #[test]
    fn two_tight_groups_recovered() {
        let params = ApParams::default();
        let got = affinity_propagation(&two_groups(), &params).unwrap();
        assert!(got.converged);
        assert_eq!(got.labels[..5], [0, 0, 0, 0, 0]);
        assert_eq!(got.labels[5..], [1, 1, 1, 1, 1]);
        let exemplars = got.exemplars.as_ref().unwrap();
        // The exemplar of each cluster belongs to that cluster.
        for (&cluster, &item) in exemplars {
            assert_eq!(got.labels[item], cluster);
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let params = ApParams::default();
        let first = affinity_propagation(&two_groups(), &params).unwrap();
        for _ in 0..9 {
            assert_eq!(first, affinity_propagation(&two_groups(), &params).unwrap());
        }
    }

    #[test]
    fn single_item() {
        let got = affinity_propagation(&sim_from(vec![0.0], 1), &ApParams::default()).unwrap();
        assert_eq!(got.labels, vec![0]);
        assert_eq!(got.exemplars.unwrap()[&0], 0);
        assert!(got.converged);
    }

    #[test]
    fn rejects_bad_params() {
        let s = sim_from(vec![0.0], 1);
        let bad = ApParams {
            damping: 1.0,
            ..ApParams::default()
        };
        assert!(affinity_propagation(&s, &bad).is_err());
        let bad2 = ApParams {
            convergence_window: 300,
            ..ApParams::default()
        };
        assert!(affinity_propagation(&s, &bad2).is_err());
    }
}
