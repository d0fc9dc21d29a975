//! Word Mover's Distance: exact earth-mover transport between the
//! normalized bag-of-words weight vectors of two short token lists, with
//! Euclidean ground costs between word vectors.

use std::collections::{BTreeMap, BTreeSet};

use super::embedding::{euclidean, EmbeddingTable};

/// WMD outcome. `fallback` marks pairs where one side was entirely
/// out-of-vocabulary and the distance degraded to `1 - Jaccard`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WmdResult {
    pub distance: f64,
    pub fallback: bool,
}

/// Computes the exact WMD between two token lists.
///
/// Out-of-vocabulary tokens are dropped before weighting. If either side has
/// no in-vocabulary token left, the distance falls back to
/// `1 - Jaccard(token sets)` over the original tokens and is flagged.
///
/// The balanced transport problem is solved exactly: scaling both weight
/// vectors by the product of total counts turns it into an integral
/// min-cost-flow instance, whose optimum equals the LP optimum on a
/// transportation polytope. Sentences here are short, so exactness is cheap.
pub fn wmd_distance(a: &[String], b: &[String], emb: &EmbeddingTable) -> WmdResult {
    fn counts<'a>(tokens: &'a [String], emb: &EmbeddingTable) -> BTreeMap<&'a str, u64> {
        let mut m = BTreeMap::new();
        for t in tokens {
            if emb.contains(t) {
                *m.entry(t.as_str()).or_insert(0) += 1;
            }
        }
        m
    }
    let ca = counts(a, emb);
    let cb = counts(b, emb);
    if ca.is_empty() || cb.is_empty() {
        let sa: BTreeSet<&str> = a.iter().map(String::as_str).collect();
        let sb: BTreeSet<&str> = b.iter().map(String::as_str).collect();
        let union = sa.union(&sb).count();
        let inter = sa.intersection(&sb).count();
        let jaccard = if union == 0 {
            1.0 // two empty sentences are identical
        } else {
            inter as f64 / union as f64
        };
        return WmdResult {
            distance: 1.0 - jaccard,
            fallback: true,
        };
    }

    let words_a: Vec<&str> = ca.keys().copied().collect();
    let words_b: Vec<&str> = cb.keys().copied().collect();
    let total_a: u64 = ca.values().sum();
    let total_b: u64 = cb.values().sum();

    let m = words_a.len();
    let n = words_b.len();
    // Node layout: 0 = source, 1..=m sources, m+1..=m+n sinks, m+n+1 = sink.
    let mut flow = MinCostFlow::new(m + n + 2);
    let source = 0;
    let sink = m + n + 1;
    for (i, w) in words_a.iter().enumerate() {
        flow.add_edge(source, 1 + i, ca[w] * total_b, 0.0);
    }
    for (j, w) in words_b.iter().enumerate() {
        flow.add_edge(m + 1 + j, sink, cb[w] * total_a, 0.0);
    }
    for (i, wa) in words_a.iter().enumerate() {
        let va = emb.get(wa).expect("in-vocab");
        for (j, wb) in words_b.iter().enumerate() {
            let vb = emb.get(wb).expect("in-vocab");
            flow.add_edge(1 + i, m + 1 + j, total_a * total_b, euclidean(va, vb));
        }
    }
    let cost = flow.run(source, sink);
    WmdResult {
        distance: cost / (total_a as f64 * total_b as f64),
        fallback: false,
    }
}

struct Edge {
    to: usize,
    cap: u64,
    cost: f64,
}

/// Successive-shortest-path min-cost max-flow with Bellman-Ford searches.
/// Instances here are tiny (tens of nodes), so the simple search is fine.
struct MinCostFlow {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl MinCostFlow {
    fn new(nodes: usize) -> Self {
        Self {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64, cost: f64) {
        let idx = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[from].push(idx);
        self.adj[to].push(idx + 1);
    }

    /// Successive shortest paths with Johnson potentials. Dijkstra's
    /// predecessor graph is always a tree, so the augmenting walk cannot
    /// cycle even when duplicated words create zero-cost residual cycles.
    /// Reduced costs are clamped at zero against float rounding; the error
    /// this admits is orders below the 1e-9 oracle tolerance.
    fn run(&mut self, source: usize, sink: usize) -> f64 {
        let n = self.adj.len();
        let mut total_cost = 0.0;
        let mut potential = vec![0.0; n]; // valid: all original costs >= 0
        loop {
            let mut dist = vec![f64::INFINITY; n];
            let mut prev_edge = vec![usize::MAX; n];
            let mut done = vec![false; n];
            dist[source] = 0.0;
            for _ in 0..n {
                let mut u = usize::MAX;
                let mut best = f64::INFINITY;
                for v in 0..n {
                    if !done[v] && dist[v] < best {
                        best = dist[v];
                        u = v;
                    }
                }
                if u == usize::MAX {
                    break;
                }
                done[u] = true;
                for &ei in &self.adj[u] {
                    let e = &self.edges[ei];
                    if e.cap == 0 || done[e.to] {
                        continue;
                    }
                    let reduced = (e.cost + potential[u] - potential[e.to]).max(0.0);
                    if dist[u] + reduced < dist[e.to] {
                        dist[e.to] = dist[u] + reduced;
                        prev_edge[e.to] = ei;
                    }
                }
            }
            if !dist[sink].is_finite() {
                break;
            }
            for v in 0..n {
                if dist[v].is_finite() {
                    potential[v] += dist[v];
                }
            }
            let mut bottleneck = u64::MAX;
            let mut v = sink;
            while v != source {
                let ei = prev_edge[v];
                bottleneck = bottleneck.min(self.edges[ei].cap);
                v = self.edges[ei ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let ei = prev_edge[v];
                self.edges[ei].cap -= bottleneck;
                self.edges[ei ^ 1].cap += bottleneck;
                total_cost += bottleneck as f64 * self.edges[ei].cost;
                v = self.edges[ei ^ 1].to;
            }
        }
        total_cost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> EmbeddingTable {
        EmbeddingTable::from_vectors(
            2,
            [
                ("x".to_string(), vec![0.0, 0.0]),
                ("y".to_string(), vec![3.0, 4.0]),
                ("z".to_string(), vec![1.0, 0.0]),
            ],
        )
        .unwrap()
    }

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_is_zero() {
        let emb = table();
        let a = toks(&["x", "y", "z", "x"]);
        let r = wmd_distance(&a, &a, &emb);
        assert_eq!(r.distance, 0.0);
        assert!(!r.fallback);
    }

    #[test]
    fn single_words_give_euclidean() {
        let emb = table();
        let r = wmd_distance(&toks(&["x"]), &toks(&["y"]), &emb);
        assert!((r.distance - 5.0).abs() < 1e-12);
    }

    #[test]
    fn two_to_one_averages() {
        // All mass must go to the single sink: ½(‖x−z‖ + ‖y−z‖).
        let emb = table();
        let r = wmd_distance(&toks(&["x", "y"]), &toks(&["z"]), &emb);
        let expected = 0.5 * (1.0 + ((2.0f64).powi(2) + 16.0).sqrt());
        assert!((r.distance - expected).abs() < 1e-12, "{}", r.distance);
    }

    #[test]
    fn oov_side_falls_back_to_jaccard() {
        let emb = table();
        let r = wmd_distance(&toks(&["unknown", "x"]), &toks(&["nothere"]), &emb);
        assert!(r.fallback);
        // Sets {unknown, x} and {nothere}: intersection 0, union 3.
        assert!((r.distance - 1.0).abs() < 1e-12);
        let r2 = wmd_distance(&toks(&["unknown"]), &toks(&["unknown"]), &emb);
        assert!(r2.fallback);
        assert_eq!(r2.distance, 0.0);
    }

    #[test]
    fn symmetric() {
        let emb = table();
        let a = toks(&["x", "x", "y"]);
        let b = toks(&["z", "y"]);
        let ab = wmd_distance(&a, &b, &emb).distance;
        let ba = wmd_distance(&b, &a, &emb).distance;
        assert!((ab - ba).abs() < 1e-12);
    }
}
