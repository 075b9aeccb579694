//! Domain model for encounter traces.
//!
//! An encounter is a contact between two distinct participants over a time
//! interval in whole seconds. Records are kept in canonical form: the smaller
//! node id first and a strictly positive duration. All types are immutable
//! after construction and safe to share across threads.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Identifier of a participant. Ids need not be contiguous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense cluster identifier, `0..K` for `K` clusters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterId(pub u32);

impl ClusterId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered cluster pair in canonical order (`first <= second`).
pub fn canonical_cluster_pair(a: ClusterId, b: ClusterId) -> (ClusterId, ClusterId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A single contact: two distinct nodes in range of each other from
/// `start_s` to `end_s` (seconds, `end_s > start_s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EncounterRecord {
    pub node_a: NodeId,
    pub node_b: NodeId,
    pub start_s: u64,
    pub end_s: u64,
}

/// Validation failure for a single encounter record.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("node {0} encounters itself")]
    SelfEncounter(NodeId),
    #[error("non-positive duration: start {start_s} >= end {end_s}")]
    NonPositiveDuration { start_s: u64, end_s: u64 },
}

impl EncounterRecord {
    /// Builds a canonical record from raw fields: the node pair is reordered
    /// so the smaller id comes first; times are taken as-is.
    pub fn normalized(
        node_a: NodeId,
        node_b: NodeId,
        start_s: u64,
        end_s: u64,
    ) -> Result<Self, RecordError> {
        if node_a == node_b {
            return Err(RecordError::SelfEncounter(node_a));
        }
        if end_s <= start_s {
            return Err(RecordError::NonPositiveDuration { start_s, end_s });
        }
        let (node_a, node_b) = if node_a < node_b {
            (node_a, node_b)
        } else {
            (node_b, node_a)
        };
        Ok(EncounterRecord {
            node_a,
            node_b,
            start_s,
            end_s,
        })
    }

    /// Re-normalizes an existing record. Idempotent.
    pub fn normalize(self) -> Result<Self, RecordError> {
        Self::normalized(self.node_a, self.node_b, self.start_s, self.end_s)
    }

    pub fn is_canonical(&self) -> bool {
        self.node_a < self.node_b && self.end_s > self.start_s
    }

    pub fn duration_s(&self) -> u64 {
        self.end_s - self.start_s
    }

    /// The unordered node pair, smaller id first.
    pub fn pair(&self) -> (NodeId, NodeId) {
        (self.node_a, self.node_b)
    }
}

/// Trace-level validation failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("record {index}: {source}")]
    InvalidRecord { index: usize, source: RecordError },
    #[error("record {index} references node {node} outside the node universe")]
    UnknownNode { index: usize, node: NodeId },
}

/// An ordered list of canonical encounter records plus the set of
/// participating nodes. The universe may contain nodes without records
/// (isolated participants); it always covers every record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    records: Vec<EncounterRecord>,
    node_universe: BTreeSet<NodeId>,
    sorted: bool,
}

impl Trace {
    /// Builds a trace from canonical records, deriving the node universe.
    /// Rejects records that are not in canonical form.
    pub fn new(records: Vec<EncounterRecord>) -> Result<Self, TraceError> {
        for (index, r) in records.iter().enumerate() {
            if let Err(source) = r.normalize() {
                return Err(TraceError::InvalidRecord { index, source });
            }
            if !r.is_canonical() {
                return Err(TraceError::InvalidRecord {
                    index,
                    source: RecordError::SelfEncounter(r.node_a),
                });
            }
        }
        Ok(Self::from_normalized(records))
    }

    /// Builds a trace from records known to be canonical (e.g. produced by
    /// [`EncounterRecord::normalized`]).
    pub fn from_normalized(records: Vec<EncounterRecord>) -> Self {
        debug_assert!(records.iter().all(EncounterRecord::is_canonical));
        let mut node_universe = BTreeSet::new();
        for r in &records {
            node_universe.insert(r.node_a);
            node_universe.insert(r.node_b);
        }
        let sorted = Self::check_sorted(&records);
        Trace {
            records,
            node_universe,
            sorted,
        }
    }

    /// Like [`Trace::new`] but with an explicit node universe, which must
    /// cover every record. Lets isolated nodes participate in degree
    /// statistics.
    pub fn with_universe(
        records: Vec<EncounterRecord>,
        node_universe: BTreeSet<NodeId>,
    ) -> Result<Self, TraceError> {
        for (index, r) in records.iter().enumerate() {
            if let Err(source) = r.normalize() {
                return Err(TraceError::InvalidRecord { index, source });
            }
            for node in [r.node_a, r.node_b] {
                if !node_universe.contains(&node) {
                    return Err(TraceError::UnknownNode { index, node });
                }
            }
        }
        let sorted = Self::check_sorted(&records);
        Ok(Trace {
            records,
            node_universe,
            sorted,
        })
    }

    fn check_sorted(records: &[EncounterRecord]) -> bool {
        records.windows(2).all(|w| w[0].start_s <= w[1].start_s)
    }

    pub fn records(&self) -> &[EncounterRecord] {
        &self.records
    }

    pub fn node_universe(&self) -> &BTreeSet<NodeId> {
        &self.node_universe
    }

    pub fn node_count(&self) -> usize {
        self.node_universe.len()
    }

    pub fn record_count(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Whether records are non-decreasing in start time.
    pub fn is_sorted_by_start(&self) -> bool {
        self.sorted
    }

    /// Largest end time in the trace, 0 for an empty trace.
    pub fn time_span_s(&self) -> u64 {
        self.records.iter().map(|r| r.end_s).max().unwrap_or(0)
    }

    /// Sorts records by start time; ties are broken by end time and node
    /// pair so the result is a total deterministic order.
    pub fn sort_by_start(&mut self) {
        self.records
            .sort_unstable_by_key(|r| (r.start_s, r.end_s, r.node_a, r.node_b));
        self.sorted = true;
    }
}

/// Cluster-map construction failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClusterMapError {
    #[error("node {0} has no cluster assignment")]
    MissingNode(NodeId),
}

/// Total mapping from every node of a trace to a dense cluster id.
///
/// Input cluster ids may be arbitrary; they are re-indexed to `0..K` in
/// ascending order of the original id. Assignments for nodes outside the
/// universe are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterMap {
    assignment: BTreeMap<NodeId, ClusterId>,
    sizes: Vec<u64>,
    labels: Vec<Option<String>>,
}

impl ClusterMap {
    /// Builds a map covering `universe` from raw `(node, cluster)` pairs and
    /// optional per-raw-cluster labels.
    pub fn from_raw(
        raw: &BTreeMap<NodeId, u64>,
        raw_labels: &BTreeMap<u64, String>,
        universe: &BTreeSet<NodeId>,
    ) -> Result<Self, ClusterMapError> {
        for node in universe {
            if !raw.contains_key(node) {
                return Err(ClusterMapError::MissingNode(*node));
            }
        }
        // Dense re-index: ascending original cluster id -> 0..K. Only
        // clusters that actually cover universe nodes count.
        let mut dense: BTreeMap<u64, ClusterId> = BTreeMap::new();
        for (node, raw_id) in raw {
            if universe.contains(node) {
                let next = dense.len() as u32;
                dense.entry(*raw_id).or_insert(ClusterId(next));
            }
        }
        let mut assignment = BTreeMap::new();
        let mut sizes = alloc::vec![0u64; dense.len()];
        for (node, raw_id) in raw {
            if universe.contains(node) {
                let cluster = dense[raw_id];
                assignment.insert(*node, cluster);
                sizes[cluster.index()] += 1;
            }
        }
        let mut labels = alloc::vec![None; dense.len()];
        for (raw_id, cluster) in &dense {
            if let Some(label) = raw_labels.get(raw_id) {
                labels[cluster.index()] = Some(label.clone());
            }
        }
        Ok(ClusterMap {
            assignment,
            sizes,
            labels,
        })
    }

    pub fn cluster_of(&self, node: NodeId) -> Option<ClusterId> {
        self.assignment.get(&node).copied()
    }

    pub fn num_clusters(&self) -> usize {
        self.sizes.len()
    }

    /// Node count per cluster, indexed by dense cluster id.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn assignments(&self) -> impl Iterator<Item = (NodeId, ClusterId)> + '_ {
        self.assignment.iter().map(|(n, c)| (*n, *c))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Configuration error for synthetic generation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("expected {expected} cluster node counts, got {found}")]
    ClusterCountMismatch { expected: usize, found: usize },
    #[error("cluster {cluster} has a zero node count")]
    ZeroClusterCount { cluster: usize },
    #[error("max_time must be positive")]
    ZeroMaxTime,
    #[error("total node count must be positive")]
    ZeroTotalNodes,
    #[error("reference cluster sizes are empty or all zero")]
    NoReferenceSizes,
}

/// Parameters of a synthetic generation run: how many nodes per cluster,
/// how long to simulate, and the seed driving every random choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationConfig {
    pub cluster_node_counts: Vec<u64>,
    pub max_time_s: u64,
    pub seed: u64,
}

impl GenerationConfig {
    pub fn new(cluster_node_counts: Vec<u64>, max_time_s: u64, seed: u64) -> Self {
        GenerationConfig {
            cluster_node_counts,
            max_time_s,
            seed,
        }
    }

    pub fn validate(&self, num_clusters: usize) -> Result<(), ConfigError> {
        if self.cluster_node_counts.len() != num_clusters {
            return Err(ConfigError::ClusterCountMismatch {
                expected: num_clusters,
                found: self.cluster_node_counts.len(),
            });
        }
        if let Some(cluster) = self.cluster_node_counts.iter().position(|&c| c == 0) {
            return Err(ConfigError::ZeroClusterCount { cluster });
        }
        if self.max_time_s == 0 {
            return Err(ConfigError::ZeroMaxTime);
        }
        Ok(())
    }

    pub fn total_nodes(&self) -> u64 {
        self.cluster_node_counts.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_orders_pair() {
        let r = EncounterRecord::normalized(NodeId(7), NodeId(3), 10, 20).unwrap();
        assert_eq!(
            r,
            EncounterRecord {
                node_a: NodeId(3),
                node_b: NodeId(7),
                start_s: 10,
                end_s: 20
            }
        );
    }

    #[test]
    fn normalize_rejects_self_encounter() {
        let err = EncounterRecord::normalized(NodeId(5), NodeId(5), 10, 20).unwrap_err();
        assert_eq!(err, RecordError::SelfEncounter(NodeId(5)));
    }

    #[test]
    fn normalize_rejects_zero_duration() {
        let err = EncounterRecord::normalized(NodeId(2), NodeId(9), 30, 30).unwrap_err();
        assert_eq!(
            err,
            RecordError::NonPositiveDuration {
                start_s: 30,
                end_s: 30
            }
        );
    }

    #[test]
    fn trace_derives_universe_and_sorted_flag() {
        let records = alloc::vec![
            EncounterRecord::normalized(NodeId(1), NodeId(2), 0, 10).unwrap(),
            EncounterRecord::normalized(NodeId(2), NodeId(3), 5, 9).unwrap(),
        ];
        let trace = Trace::new(records).unwrap();
        assert_eq!(trace.node_count(), 3);
        assert!(trace.is_sorted_by_start());
        assert_eq!(trace.time_span_s(), 10);
    }

    #[test]
    fn with_universe_rejects_unknown_node() {
        let records = alloc::vec![EncounterRecord::normalized(NodeId(1), NodeId(2), 0, 10).unwrap()];
        let universe: BTreeSet<NodeId> = [NodeId(1)].into_iter().collect();
        let err = Trace::with_universe(records, universe).unwrap_err();
        assert_eq!(
            err,
            TraceError::UnknownNode {
                index: 0,
                node: NodeId(2)
            }
        );
    }

    #[test]
    fn cluster_map_reindexes_dense() {
        let raw: BTreeMap<NodeId, u64> =
            [(NodeId(1), 17), (NodeId(2), 17), (NodeId(3), 4)].into_iter().collect();
        let universe: BTreeSet<NodeId> = [NodeId(1), NodeId(2), NodeId(3)].into_iter().collect();
        let map = ClusterMap::from_raw(&raw, &BTreeMap::new(), &universe).unwrap();
        // Ascending original ids: 4 -> 0, 17 -> 1.
        assert_eq!(map.cluster_of(NodeId(3)), Some(ClusterId(0)));
        assert_eq!(map.cluster_of(NodeId(1)), Some(ClusterId(1)));
        assert_eq!(map.sizes(), &[1, 2]);
    }

    #[test]
    fn cluster_map_requires_totality() {
        let raw: BTreeMap<NodeId, u64> = [(NodeId(1), 0)].into_iter().collect();
        let universe: BTreeSet<NodeId> = [NodeId(1), NodeId(2)].into_iter().collect();
        let err = ClusterMap::from_raw(&raw, &BTreeMap::new(), &universe).unwrap_err();
        assert_eq!(err, ClusterMapError::MissingNode(NodeId(2)));
    }

    #[test]
    fn cluster_map_ignores_nodes_outside_universe() {
        let raw: BTreeMap<NodeId, u64> = [(NodeId(1), 0), (NodeId(9), 3)].into_iter().collect();
        let universe: BTreeSet<NodeId> = [NodeId(1)].into_iter().collect();
        let map = ClusterMap::from_raw(&raw, &BTreeMap::new(), &universe).unwrap();
        assert_eq!(map.num_clusters(), 1);
        assert_eq!(map.len(), 1);
    }

    #[test]
    fn config_validation() {
        let config = GenerationConfig::new(alloc::vec![15, 10, 10], 1000, 42);
        assert!(config.validate(3).is_ok());
        assert_eq!(
            config.validate(2),
            Err(ConfigError::ClusterCountMismatch {
                expected: 2,
                found: 3
            })
        );
        let zero_time = GenerationConfig::new(alloc::vec![1], 0, 42);
        assert_eq!(zero_time.validate(1), Err(ConfigError::ZeroMaxTime));
        let zero_cluster = GenerationConfig::new(alloc::vec![1, 0], 10, 42);
        assert_eq!(
            zero_cluster.validate(2),
            Err(ConfigError::ZeroClusterCount { cluster: 1 })
        );
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(a in 0u64..50, b in 0u64..50, start in 0u64..1000, len in 1u64..1000) {
            prop_assume!(a != b);
            let once = EncounterRecord::normalized(NodeId(a), NodeId(b), start, start + len).unwrap();
            let twice = once.normalize().unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn validated_records_have_positive_duration(a in 0u64..50, b in 0u64..50, start in 0u64..1000, len in 1u64..1000) {
            prop_assume!(a != b);
            let r = EncounterRecord::normalized(NodeId(a), NodeId(b), start, start + len).unwrap();
            prop_assert!(r.duration_s() >= 1);
        }
    }
}
