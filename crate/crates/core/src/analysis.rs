//! Trace preprocessing: contact graph, degree distribution and the
//! per-cluster-pair statistical model that drives generation.
//!
//! For every unordered cluster pair the model pools the contact durations
//! and inter-contact times of all encounters between nodes of those two
//! clusters, treating the pair as statistically homogeneous, and records the
//! fraction of possible node pairs that actually made contact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::trace::{canonical_cluster_pair, ClusterId, ClusterMap, NodeId, Trace};

/// Weighted social network over the trace's node universe: edge weight is
/// the number of encounters between the two endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactGraph {
    nodes: BTreeSet<NodeId>,
    weights: BTreeMap<(NodeId, NodeId), u64>,
}

impl ContactGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    /// Number of encounters between `a` and `b`; 0 if they never met.
    pub fn weight(&self, a: NodeId, b: NodeId) -> u64 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.weights.get(&key).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((NodeId, NodeId), u64)> + '_ {
        self.weights.iter().map(|(k, v)| (*k, *v))
    }

    /// Distinct-neighbor degree per node, in ascending node id order.
    /// Isolated nodes contribute 0.
    pub fn degrees(&self) -> Vec<u64> {
        let mut counts: BTreeMap<NodeId, u64> = self.nodes.iter().map(|n| (*n, 0)).collect();
        for (a, b) in self.weights.keys() {
            *counts.get_mut(a).expect("edge endpoint in universe") += 1;
            *counts.get_mut(b).expect("edge endpoint in universe") += 1;
        }
        counts.into_values().collect()
    }
}

/// Builds the contact graph of a trace. Nodes come from the node universe,
/// so isolated participants appear with no edges.
pub fn build_contact_graph(trace: &Trace) -> ContactGraph {
    let mut weights = BTreeMap::new();
    for r in trace.records() {
        *weights.entry(r.pair()).or_insert(0u64) += 1;
    }
    ContactGraph {
        nodes: trace.node_universe().clone(),
        weights,
    }
}

/// Distinct-neighbor degree of every node in the universe, ascending by id.
pub fn degree_distribution(graph: &ContactGraph) -> Vec<u64> {
    graph.degrees()
}

/// Per-node-pair inter-contact times: for a pair with `k` encounters sorted
/// by start time there are `k - 1` gaps, `next.start - prev.end`. The last
/// encounter of a pair has no inter-contact time.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairIcts {
    pub per_pair: BTreeMap<(NodeId, NodeId), Vec<u64>>,
    /// Gaps that came out negative (overlapping encounters of the same
    /// pair) and were clamped to 0.
    pub clamped: u64,
}

pub fn compute_pair_icts(trace: &Trace) -> PairIcts {
    let mut groups: BTreeMap<(NodeId, NodeId), Vec<(u64, u64)>> = BTreeMap::new();
    for r in trace.records() {
        groups.entry(r.pair()).or_default().push((r.start_s, r.end_s));
    }
    let mut per_pair = BTreeMap::new();
    let mut clamped = 0u64;
    for (pair, mut spans) in groups {
        // Ties on start are broken by end time so results do not depend on
        // input order.
        spans.sort_unstable();
        let icts: Vec<u64> = spans
            .windows(2)
            .map(|w| {
                let (_, prev_end) = w[0];
                let (next_start, _) = w[1];
                if next_start >= prev_end {
                    next_start - prev_end
                } else {
                    clamped += 1;
                    0
                }
            })
            .collect();
        if !icts.is_empty() {
            per_pair.insert(pair, icts);
        }
    }
    PairIcts { per_pair, clamped }
}

/// Fraction of possible node pairs between `c1` and `c2` with at least one
/// contact: `n1 * n2` possible pairs across clusters, `n * (n - 1) / 2`
/// within one. Returns 0 when no pair is possible.
pub fn compute_edge_density(
    graph: &ContactGraph,
    clusters: &ClusterMap,
    c1: ClusterId,
    c2: ClusterId,
) -> f64 {
    let target = canonical_cluster_pair(c1, c2);
    let observed = graph
        .edges()
        .filter(|((a, b), _)| {
            match (clusters.cluster_of(*a), clusters.cluster_of(*b)) {
                (Some(ca), Some(cb)) => canonical_cluster_pair(ca, cb) == target,
                _ => false,
            }
        })
        .count() as u64;
    let possible = possible_pairs(clusters.sizes(), target.0, target.1);
    if possible == 0 {
        0.0
    } else {
        observed as f64 / possible as f64
    }
}

/// Number of distinct node pairs between two clusters of the given sizes.
pub fn possible_pairs(sizes: &[u64], c1: ClusterId, c2: ClusterId) -> u64 {
    let n1 = sizes[c1.index()];
    let n2 = sizes[c2.index()];
    if c1 == c2 {
        n1 * (n1.saturating_sub(1)) / 2
    } else {
        n1 * n2
    }
}

/// Pooled statistics of one unordered cluster pair. Sample lists are kept
/// sorted ascending (canonical form; sampling is order-insensitive).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterPairStats {
    pub clusters: (ClusterId, ClusterId),
    pub edge_density: f64,
    pub durations_s: Vec<u64>,
    pub icts_s: Vec<u64>,
}

/// One cluster of the learned model.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterInfo {
    pub label: Option<String>,
    pub size: u64,
}

/// Structural defects of a loaded model.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("expected {expected} cluster pair entries for {clusters} clusters, found {found}")]
    PairCountMismatch {
        clusters: usize,
        expected: usize,
        found: usize,
    },
    #[error("pair entry {index} is ({c1}, {c2}), expected ({e1}, {e2})")]
    PairOrder {
        index: usize,
        c1: ClusterId,
        c2: ClusterId,
        e1: ClusterId,
        e2: ClusterId,
    },
    #[error("pair ({c1}, {c2}) has edge density {density} outside [0, 1]")]
    DensityOutOfRange {
        c1: ClusterId,
        c2: ClusterId,
        density: f64,
    },
    #[error("pair ({c1}, {c2}) contains a zero duration sample")]
    ZeroDuration { c1: ClusterId, c2: ClusterId },
}

/// The learned statistical model: cluster sizes, degree samples (one per
/// node) and one [`ClusterPairStats`] entry for each of the `K (K + 1) / 2`
/// unordered cluster pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StatModel {
    pub clusters: Vec<ClusterInfo>,
    pub degree_samples: Vec<u64>,
    /// Negative inter-contact gaps clamped to 0 during analysis.
    pub ict_clamped: u64,
    pub pairs: Vec<ClusterPairStats>,
}

impl StatModel {
    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_sizes(&self) -> Vec<u64> {
        self.clusters.iter().map(|c| c.size).collect()
    }

    /// Flat index of the unordered pair `(c1, c2)` in lexicographic order.
    pub fn pair_index(num_clusters: usize, c1: ClusterId, c2: ClusterId) -> usize {
        let (lo, hi) = canonical_cluster_pair(c1, c2);
        let (lo, hi, k) = (lo.index(), hi.index(), num_clusters);
        debug_assert!(hi < k);
        lo * k - lo * (lo + 1) / 2 + hi
    }

    pub fn pair(&self, c1: ClusterId, c2: ClusterId) -> &ClusterPairStats {
        &self.pairs[Self::pair_index(self.num_clusters(), c1, c2)]
    }

    /// Checks the structural invariants; used when loading untrusted models.
    pub fn validate(&self) -> Result<(), ModelError> {
        let k = self.num_clusters();
        let expected = k * (k + 1) / 2;
        if self.pairs.len() != expected {
            return Err(ModelError::PairCountMismatch {
                clusters: k,
                expected,
                found: self.pairs.len(),
            });
        }
        let mut index = 0;
        for lo in 0..k {
            for hi in lo..k {
                let (c1, c2) = self.pairs[index].clusters;
                let (e1, e2) = (ClusterId(lo as u32), ClusterId(hi as u32));
                if (c1, c2) != (e1, e2) {
                    return Err(ModelError::PairOrder {
                        index,
                        c1,
                        c2,
                        e1,
                        e2,
                    });
                }
                index += 1;
            }
        }
        for p in &self.pairs {
            if !(0.0..=1.0).contains(&p.edge_density) {
                return Err(ModelError::DensityOutOfRange {
                    c1: p.clusters.0,
                    c2: p.clusters.1,
                    density: p.edge_density,
                });
            }
            if p.durations_s.iter().any(|&d| d == 0) {
                return Err(ModelError::ZeroDuration {
                    c1: p.clusters.0,
                    c2: p.clusters.1,
                });
            }
        }
        Ok(())
    }
}

/// Learns the statistical model of a trace under a total cluster map:
/// per-cluster-pair duration and inter-contact samples, edge densities,
/// and the node degree distribution.
pub fn build_stat_model(trace: &Trace, clusters: &ClusterMap) -> StatModel {
    let k = clusters.num_clusters();
    let graph = build_contact_graph(trace);

    let mut pairs: Vec<ClusterPairStats> = Vec::with_capacity(k * (k + 1) / 2);
    for lo in 0..k {
        for hi in lo..k {
            let (c1, c2) = (ClusterId(lo as u32), ClusterId(hi as u32));
            pairs.push(ClusterPairStats {
                clusters: (c1, c2),
                edge_density: compute_edge_density(&graph, clusters, c1, c2),
                durations_s: Vec::new(),
                icts_s: Vec::new(),
            });
        }
    }

    let cluster_pair_of = |a: NodeId, b: NodeId| -> usize {
        let ca = clusters.cluster_of(a).expect("total cluster map");
        let cb = clusters.cluster_of(b).expect("total cluster map");
        StatModel::pair_index(k, ca, cb)
    };

    for r in trace.records() {
        let idx = cluster_pair_of(r.node_a, r.node_b);
        pairs[idx].durations_s.push(r.duration_s());
    }

    let pair_icts = compute_pair_icts(trace);
    for ((a, b), icts) in &pair_icts.per_pair {
        let idx = cluster_pair_of(*a, *b);
        pairs[idx].icts_s.extend_from_slice(icts);
    }

    for p in &mut pairs {
        p.durations_s.sort_unstable();
        p.icts_s.sort_unstable();
    }

    let mut degree_samples = graph.degrees();
    degree_samples.sort_unstable();

    StatModel {
        clusters: clusters
            .sizes()
            .iter()
            .zip(clusters.labels())
            .map(|(size, label)| ClusterInfo {
                label: label.clone(),
                size: *size,
            })
            .collect(),
        degree_samples,
        ict_clamped: pair_icts.clamped,
        pairs,
    }
}
