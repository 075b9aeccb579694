//! Synthetic network construction and encounter simulation.
//!
//! Generation runs in two phases. First a synthetic network is built: nodes
//! are partitioned into clusters with the requested counts, each node gets a
//! weight drawn from the learned degree distribution, and every cluster pair
//! receives exactly `round(edge_density * possible_pairs)` distinct edges
//! whose endpoints are picked with degree-weighted probability. Then every
//! edge is simulated independently: starting at time 0, alternate
//! inter-contact and duration draws from the edge's cluster-pair
//! distributions until a start time reaches `max_time_s`. An encounter whose
//! start lands beyond `max_time_s` is discarded and the pair stops; one that
//! merely runs past it keeps its drawn duration, so every emitted value is a
//! verbatim member of the model's sample lists.
//!
//! Every random choice is driven by `(seed, stream_id)` streams — one for
//! node weights, one for edge assignment, one per node pair — so results are
//! independent of scheduling and iteration order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::analysis::{possible_pairs, StatModel};
use crate::sampling::{weighted_choice, EmpiricalDistribution, RngStream, SampleError};
use crate::trace::{
    ClusterId, ConfigError, EncounterRecord, GenerationConfig, NodeId, Trace,
};

/// Stream id for node weight assignment.
pub const STREAM_NODE_WEIGHTS: u64 = 0;
/// Stream id for edge assignment.
pub const STREAM_EDGE_ASSIGNMENT: u64 = 1;

/// Generation failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("model has no degree samples")]
    EmptyDegreeSamples,
}

/// The generated contact network: dense node ids `0..N` in cluster blocks,
/// sampled node weights, and a duplicate-free edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticNetwork {
    node_clusters: Vec<ClusterId>,
    node_weights: Vec<u64>,
    edges: Vec<(NodeId, NodeId)>,
    cluster_sizes: Vec<u64>,
}

impl SyntheticNetwork {
    pub fn node_count(&self) -> usize {
        self.node_clusters.len()
    }

    pub fn cluster_sizes(&self) -> &[u64] {
        &self.cluster_sizes
    }

    pub fn cluster_of(&self, node: NodeId) -> ClusterId {
        self.node_clusters[node.0 as usize]
    }

    pub fn weight_of(&self, node: NodeId) -> u64 {
        self.node_weights[node.0 as usize]
    }

    /// Edges in deterministic assignment order, canonical pair form.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_clusters(&self) -> &[ClusterId] {
        &self.node_clusters
    }
}

/// Derives per-cluster node counts for a total of `total` nodes in the same
/// ratio as `reference` sizes, using largest-remainder rounding so the
/// counts sum to `total` exactly.
pub fn counts_from_total(total: u64, reference: &[u64]) -> Result<Vec<u64>, ConfigError> {
    if total == 0 {
        return Err(ConfigError::ZeroTotalNodes);
    }
    let sum: u64 = reference.iter().sum();
    if sum == 0 {
        return Err(ConfigError::NoReferenceSizes);
    }
    let mut counts: Vec<u64> = Vec::with_capacity(reference.len());
    let mut remainders: Vec<(u64, usize)> = Vec::with_capacity(reference.len());
    for (i, &size) in reference.iter().enumerate() {
        let product = total as u128 * size as u128;
        counts.push((product / sum as u128) as u64);
        remainders.push(((product % sum as u128) as u64, i));
    }
    let assigned: u64 = counts.iter().sum();
    // Largest remainder first; ties go to the lower cluster index.
    remainders.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for k in 0..(total - assigned) as usize {
        counts[remainders[k].1] += 1;
    }
    Ok(counts)
}

/// Partitions dense node ids `0..sum(counts)` into contiguous cluster
/// blocks: cluster 0 first, then cluster 1, and so on.
pub fn allocate_nodes(counts: &[u64]) -> Vec<ClusterId> {
    let total: u64 = counts.iter().sum();
    let mut clusters = Vec::with_capacity(total as usize);
    for (c, &count) in counts.iter().enumerate() {
        for _ in 0..count {
            clusters.push(ClusterId(c as u32));
        }
    }
    clusters
}

/// Draws one weight per node from the degree distribution.
pub fn assign_weights(
    node_count: usize,
    degrees: &EmpiricalDistribution,
    rng: &mut RngStream,
) -> Vec<u64> {
    (0..node_count).map(|_| degrees.sample(rng)).collect()
}

/// Edge bookkeeping for one cluster pair of a generation run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairGenReport {
    pub clusters: (ClusterId, ClusterId),
    pub possible_pairs: u64,
    pub target_edges: u64,
    pub realized_edges: u64,
    /// Edges filled from the unused-pair set after the rejection cap.
    pub fallback_edges: u64,
    pub encounters: u64,
    /// Draws abandoned because the start time reached `max_time_s`.
    pub discarded_starts: u64,
    /// Encounters kept whose end runs past `max_time_s`.
    pub straddling_kept: u64,
}

impl Default for ClusterId {
    fn default() -> Self {
        ClusterId(0)
    }
}

/// Why a cluster pair could not be simulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum InsufficiencyReason {
    NoDurations,
    NoInterContactTimes,
}

/// A cluster pair with edges but no usable sample lists. Its edges carry no
/// encounters; the rest of the generation proceeds.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InsufficientSamples {
    pub clusters: (ClusterId, ClusterId),
    pub reason: InsufficiencyReason,
    pub hint: &'static str,
}

fn insufficiency(clusters: (ClusterId, ClusterId), reason: InsufficiencyReason) -> InsufficientSamples {
    let hint = match reason {
        InsufficiencyReason::NoDurations => {
            "no encounters between these clusters in the source trace; lower the edge density or provide more data"
        }
        InsufficiencyReason::NoInterContactTimes => {
            "every node pair between these clusters met only once in the source trace, so no inter-contact gap was observed; provide more data or merge clusters"
        }
    };
    InsufficientSamples {
        clusters,
        reason,
        hint,
    }
}

/// Diagnostics of one generation run.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenerationReport {
    pub seed: u64,
    pub max_time_s: u64,
    pub node_total: u64,
    pub cluster_sizes: Vec<u64>,
    pub edge_total: u64,
    pub encounter_total: u64,
    pub pairs: Vec<PairGenReport>,
    pub insufficient: Vec<InsufficientSamples>,
}

/// The simulated encounter timeline of one node pair. Encounters never
/// overlap: each start is at least the previous end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTimeline {
    pub pair: (NodeId, NodeId),
    pub encounters: Vec<(u64, u64)>,
    pub discarded_starts: u64,
    pub straddling_kept: u64,
}

/// Simulates one node pair: alternate inter-contact and duration draws from
/// time 0 until a start time reaches `max_time_s`. That final draw is
/// discarded; an encounter that starts in range keeps its full drawn
/// duration even if it runs past `max_time_s`.
pub fn simulate_pair(
    pair: (NodeId, NodeId),
    durations: &EmpiricalDistribution,
    icts: &EmpiricalDistribution,
    max_time_s: u64,
    rng: &mut RngStream,
) -> PairTimeline {
    let mut encounters = Vec::new();
    let mut discarded_starts = 0;
    let mut straddling_kept = 0;
    let mut t = 0u64;
    loop {
        let ict = icts.sample(rng);
        let dur = durations.sample(rng);
        let start = t.saturating_add(ict);
        if start >= max_time_s {
            discarded_starts += 1;
            break;
        }
        let end = start.saturating_add(dur);
        if end > max_time_s {
            straddling_kept += 1;
        }
        encounters.push((start, end));
        t = end;
    }
    PairTimeline {
        pair,
        encounters,
        discarded_starts,
        straddling_kept,
    }
}

/// Everything needed to simulate the edges of a run. Edge simulations are
/// mutually independent (each derives its own stream), so callers may fan
/// them out across threads and still get identical results.
#[derive(Clone, Debug)]
pub struct GenerationPlan {
    network: SyntheticNetwork,
    pair_dists: Vec<Option<(EmpiricalDistribution, EmpiricalDistribution)>>,
    pair_reports: Vec<PairGenReport>,
    insufficient: Vec<InsufficientSamples>,
    seed: u64,
    max_time_s: u64,
}

impl GenerationPlan {
    pub fn network(&self) -> &SyntheticNetwork {
        &self.network
    }

    pub fn edge_count(&self) -> usize {
        self.network.edges.len()
    }

    pub fn max_time_s(&self) -> u64 {
        self.max_time_s
    }

    pub fn insufficient(&self) -> &[InsufficientSamples] {
        &self.insufficient
    }

    /// True if at least one cluster pair with a positive edge target has
    /// usable sample lists.
    pub fn any_generatable(&self) -> bool {
        self.pair_reports
            .iter()
            .enumerate()
            .any(|(i, r)| r.target_edges > 0 && self.pair_dists[i].is_some())
    }

    /// True if any cluster pair wants edges at all.
    pub fn any_target_edges(&self) -> bool {
        self.pair_reports.iter().any(|r| r.target_edges > 0)
    }

    /// Simulates the edge at `index` in the network's edge order.
    pub fn simulate_edge(&self, index: usize) -> PairTimeline {
        let (a, b) = self.network.edges[index];
        let k = self.network.cluster_sizes.len();
        let idx = StatModel::pair_index(k, self.network.cluster_of(a), self.network.cluster_of(b));
        match &self.pair_dists[idx] {
            Some((durations, icts)) => {
                let mut rng = RngStream::for_pair(self.seed, a, b);
                simulate_pair((a, b), durations, icts, self.max_time_s, &mut rng)
            }
            None => PairTimeline {
                pair: (a, b),
                encounters: Vec::new(),
                discarded_starts: 0,
                straddling_kept: 0,
            },
        }
    }
}

/// Result of a generation run: the sorted trace, the network behind it and
/// the diagnostics report.
#[derive(Clone, Debug)]
pub struct GenerationOutput {
    pub trace: Trace,
    pub network: SyntheticNetwork,
    pub report: GenerationReport,
}

fn round_half_up(x: f64) -> u64 {
    debug_assert!(x >= 0.0);
    (x + 0.5) as u64
}

/// Builds the synthetic network and per-pair sampling distributions.
pub fn plan_generation(
    model: &StatModel,
    config: &GenerationConfig,
) -> Result<GenerationPlan, SynthesisError> {
    config.validate(model.num_clusters())?;
    let counts = &config.cluster_node_counts;
    let node_clusters = allocate_nodes(counts);

    let degrees = EmpiricalDistribution::from_samples(model.degree_samples.clone())
        .map_err(|_| SynthesisError::EmptyDegreeSamples)?;
    let mut weight_rng = RngStream::new(config.seed, STREAM_NODE_WEIGHTS);
    let node_weights = assign_weights(node_clusters.len(), &degrees, &mut weight_rng);

    // Cluster block offsets and per-cluster weight slices.
    let mut offsets: Vec<u64> = Vec::with_capacity(counts.len());
    let mut acc = 0u64;
    for &c in counts {
        offsets.push(acc);
        acc += c;
    }
    let cluster_weights: Vec<Vec<f64>> = (0..counts.len())
        .map(|c| {
            let start = offsets[c] as usize;
            let end = start + counts[c] as usize;
            node_weights[start..end].iter().map(|&w| w as f64).collect()
        })
        .collect();

    let mut edge_rng = RngStream::new(config.seed, STREAM_EDGE_ASSIGNMENT);
    let mut edge_set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut pair_reports: Vec<PairGenReport> = Vec::with_capacity(model.pairs.len());
    let mut pair_dists = Vec::with_capacity(model.pairs.len());
    let mut insufficient = Vec::new();

    // Degree-weighted endpoint pick; uniform when the cluster's weights are
    // all zero (degree lists can legitimately contain zeros).
    let pick = |cluster: usize, rng: &mut RngStream| -> NodeId {
        let offset = offsets[cluster];
        match weighted_choice(&cluster_weights[cluster], rng) {
            Ok(i) => NodeId(offset + i as u64),
            Err(SampleError::AllZeroWeights) => {
                NodeId(offset + rng.next_index(counts[cluster] as usize) as u64)
            }
            Err(_) => unreachable!("cluster weights are never empty"),
        }
    };

    for stats in &model.pairs {
        let (lo, hi) = stats.clusters;
        let possible = possible_pairs(counts, lo, hi);
        let target = round_half_up(stats.edge_density * possible as f64);
        let mut report = PairGenReport {
            clusters: (lo, hi),
            possible_pairs: possible,
            target_edges: target,
            ..PairGenReport::default()
        };

        if target > 0 {
            // Rejection sampling with a deterministic cap, then exact fill
            // from the unused pair set so the target is always met.
            let cap = target.saturating_mul(100);
            let mut attempts = 0u64;
            while report.realized_edges < target && attempts < cap {
                attempts += 1;
                let a = pick(lo.index(), &mut edge_rng);
                let b = pick(hi.index(), &mut edge_rng);
                if a == b {
                    continue;
                }
                let pair = if a < b { (a, b) } else { (b, a) };
                if edge_set.insert(pair) {
                    edges.push(pair);
                    report.realized_edges += 1;
                }
            }
            if report.realized_edges < target {
                let mut unused: Vec<(NodeId, NodeId)> = Vec::new();
                if lo == hi {
                    let start = offsets[lo.index()];
                    let n = counts[lo.index()];
                    for i in start..start + n {
                        for j in (i + 1)..start + n {
                            let pair = (NodeId(i), NodeId(j));
                            if !edge_set.contains(&pair) {
                                unused.push(pair);
                            }
                        }
                    }
                } else {
                    let (s1, n1) = (offsets[lo.index()], counts[lo.index()]);
                    let (s2, n2) = (offsets[hi.index()], counts[hi.index()]);
                    for i in s1..s1 + n1 {
                        for j in s2..s2 + n2 {
                            let pair = if i < j {
                                (NodeId(i), NodeId(j))
                            } else {
                                (NodeId(j), NodeId(i))
                            };
                            if !edge_set.contains(&pair) {
                                unused.push(pair);
                            }
                        }
                    }
                }
                while report.realized_edges < target {
                    let idx = edge_rng.next_index(unused.len());
                    let pair = unused.swap_remove(idx);
                    edge_set.insert(pair);
                    edges.push(pair);
                    report.realized_edges += 1;
                    report.fallback_edges += 1;
                }
            }

            // Sample sufficiency only matters for pairs that carry edges.
            if stats.durations_s.is_empty() {
                insufficient.push(insufficiency((lo, hi), InsufficiencyReason::NoDurations));
                pair_dists.push(None);
            } else if stats.icts_s.is_empty() {
                insufficient.push(insufficiency(
                    (lo, hi),
                    InsufficiencyReason::NoInterContactTimes,
                ));
                pair_dists.push(None);
            } else {
                pair_dists.push(Some((
                    EmpiricalDistribution::from_samples(stats.durations_s.clone())
                        .expect("non-empty durations"),
                    EmpiricalDistribution::from_samples(stats.icts_s.clone())
                        .expect("non-empty icts"),
                )));
            }
        } else {
            pair_dists.push(None);
        }
        pair_reports.push(report);
    }

    Ok(GenerationPlan {
        network: SyntheticNetwork {
            node_clusters,
            node_weights,
            edges,
            cluster_sizes: counts.clone(),
        },
        pair_dists,
        pair_reports,
        insufficient,
        seed: config.seed,
        max_time_s: config.max_time_s,
    })
}

/// Merges per-edge timelines into the final sorted trace and report. The
/// timelines must be in the plan's edge order.
pub fn assemble(plan: GenerationPlan, timelines: Vec<PairTimeline>) -> GenerationOutput {
    debug_assert_eq!(timelines.len(), plan.network.edges.len());
    let GenerationPlan {
        network,
        mut pair_reports,
        insufficient,
        seed,
        max_time_s,
        ..
    } = plan;

    let k = network.cluster_sizes.len();
    let mut records: Vec<EncounterRecord> = Vec::new();
    for timeline in &timelines {
        let (a, b) = timeline.pair;
        let idx = StatModel::pair_index(k, network.cluster_of(a), network.cluster_of(b));
        let report = &mut pair_reports[idx];
        report.encounters += timeline.encounters.len() as u64;
        report.discarded_starts += timeline.discarded_starts;
        report.straddling_kept += timeline.straddling_kept;
        for &(start_s, end_s) in &timeline.encounters {
            records.push(EncounterRecord {
                node_a: a,
                node_b: b,
                start_s,
                end_s,
            });
        }
    }
    // Sort on the full record so the order is total and scheduling-free.
    records.sort_unstable_by_key(|r| (r.start_s, r.end_s, r.node_a, r.node_b));

    let universe = (0..network.node_count() as u64).map(NodeId).collect();
    let trace = Trace::with_universe(records, universe).expect("generated records are canonical");

    let report = GenerationReport {
        seed,
        max_time_s,
        node_total: network.node_count() as u64,
        cluster_sizes: network.cluster_sizes.clone(),
        edge_total: network.edges.len() as u64,
        encounter_total: trace.record_count() as u64,
        pairs: pair_reports,
        insufficient,
    };
    GenerationOutput {
        trace,
        network,
        report,
    }
}

/// Runs a full generation: build the network, simulate every edge, sort.
pub fn enlarge_dataset(
    model: &StatModel,
    config: &GenerationConfig,
) -> Result<GenerationOutput, SynthesisError> {
    let plan = plan_generation(model, config)?;
    let timelines: Vec<PairTimeline> = (0..plan.edge_count())
        .map(|i| plan.simulate_edge(i))
        .collect();
    Ok(assemble(plan, timelines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{ClusterInfo, ClusterPairStats};
    use alloc::vec;
    use proptest::prelude::*;

    fn dist(samples: &[u64]) -> EmpiricalDistribution {
        EmpiricalDistribution::from_samples(samples.to_vec()).unwrap()
    }

    /// A hand-built model: `densities` in lexicographic pair order.
    fn model(
        sizes: &[u64],
        degrees: &[u64],
        densities: &[f64],
        durations: &[u64],
        icts: &[u64],
    ) -> StatModel {
        let k = sizes.len();
        let mut pairs = Vec::new();
        let mut idx = 0;
        for lo in 0..k {
            for hi in lo..k {
                pairs.push(ClusterPairStats {
                    clusters: (ClusterId(lo as u32), ClusterId(hi as u32)),
                    edge_density: densities[idx],
                    durations_s: durations.to_vec(),
                    icts_s: icts.to_vec(),
                });
                idx += 1;
            }
        }
        StatModel {
            clusters: sizes
                .iter()
                .map(|&size| ClusterInfo { label: None, size })
                .collect(),
            degree_samples: degrees.to_vec(),
            ict_clamped: 0,
            pairs,
        }
    }

    #[test]
    fn counts_from_total_largest_remainder() {
        assert_eq!(counts_from_total(7, &[1, 1]).unwrap(), vec![4, 3]);
        assert_eq!(counts_from_total(35, &[15, 10, 10]).unwrap(), vec![15, 10, 10]);
        assert_eq!(counts_from_total(10, &[15, 10, 10]).unwrap(), vec![4, 3, 3]);
        assert_eq!(counts_from_total(0, &[1]), Err(ConfigError::ZeroTotalNodes));
        assert_eq!(counts_from_total(5, &[0, 0]), Err(ConfigError::NoReferenceSizes));
    }

    #[test]
    fn allocate_nodes_blocks() {
        let clusters = allocate_nodes(&[15, 10, 10]);
        assert_eq!(clusters.len(), 35);
        assert_eq!(clusters[0], ClusterId(0));
        assert_eq!(clusters[14], ClusterId(0));
        assert_eq!(clusters[15], ClusterId(1));
        assert_eq!(clusters[34], ClusterId(2));

        assert_eq!(allocate_nodes(&[100, 100, 100]).len(), 300);
    }

    #[test]
    fn assign_weights_degenerate_distribution() {
        let mut rng = RngStream::new(1, STREAM_NODE_WEIGHTS);
        let weights = assign_weights(50, &dist(&[3]), &mut rng);
        assert!(weights.iter().all(|&w| w == 3));
    }

    #[test]
    fn assign_weights_closure_and_mean() {
        let samples = [1u64, 2, 2, 3, 5, 8, 8, 9, 13, 20];
        let mut rng = RngStream::new(7, STREAM_NODE_WEIGHTS);
        let weights = assign_weights(10_000, &dist(&samples), &mut rng);
        assert!(weights.iter().all(|w| samples.contains(w)));
        let sample_mean = samples.iter().sum::<u64>() as f64 / samples.len() as f64;
        let mean = weights.iter().sum::<u64>() as f64 / weights.len() as f64;
        assert!(
            (mean - sample_mean).abs() < 0.05 * sample_mean,
            "mean {mean} vs {sample_mean}"
        );
    }

    #[test]
    fn edges_zero_density_zero_edges() {
        let m = model(&[2, 3], &[1], &[0.0, 0.0, 0.0], &[10], &[5]);
        let config = GenerationConfig::new(vec![2, 3], 100, 1);
        let plan = plan_generation(&m, &config).unwrap();
        assert!(plan.network().edges().is_empty());
    }

    #[test]
    fn edges_full_density_complete() {
        // Cross density 1.0 between clusters of sizes 2 and 3: all 6 pairs.
        let m = model(&[2, 3], &[1], &[0.0, 1.0, 0.0], &[10], &[5]);
        let config = GenerationConfig::new(vec![2, 3], 100, 1);
        let plan = plan_generation(&m, &config).unwrap();
        assert_eq!(plan.network().edges().len(), 6);
        let unique: BTreeSet<_> = plan.network().edges().iter().collect();
        assert_eq!(unique.len(), 6);
    }

    #[test]
    fn edges_half_density_same_cluster() {
        // round(0.5 * 6) = 3 intra edges in a cluster of 4.
        let m = model(&[4], &[1], &[0.5], &[10], &[5]);
        let config = GenerationConfig::new(vec![4], 100, 1);
        let plan = plan_generation(&m, &config).unwrap();
        assert_eq!(plan.network().edges().len(), 3);
        for (a, b) in plan.network().edges() {
            assert!(a < b);
        }
    }

    #[test]
    fn edge_targets_met_exactly_at_high_density() {
        // High densities force the fallback fill path at small sizes.
        let m = model(&[5, 4], &[0], &[0.9, 0.95, 1.0], &[10], &[5]);
        let config = GenerationConfig::new(vec![5, 4], 100, 3);
        let plan = plan_generation(&m, &config).unwrap();
        for r in &plan.pair_reports {
            let expected = round_half_up(
                m.pair(r.clusters.0, r.clusters.1).edge_density * r.possible_pairs as f64,
            );
            assert_eq!(r.realized_edges, expected);
            assert_eq!(r.target_edges, expected);
        }
    }

    #[test]
    fn simulate_pair_hand_trace() {
        // durations=[10], icts=[5], max_time=40:
        //   (5,15), (20,30), (35,45) kept (the last runs past 40), then
        //   start 50 >= 40 is discarded.
        let mut rng = RngStream::new(0, 0);
        let t = simulate_pair(
            (NodeId(0), NodeId(1)),
            &dist(&[10]),
            &dist(&[5]),
            40,
            &mut rng,
        );
        assert_eq!(t.encounters, vec![(5, 15), (20, 30), (35, 45)]);
        assert_eq!(t.straddling_kept, 1);
        assert_eq!(t.discarded_starts, 1);
    }

    #[test]
    fn simulate_pair_nothing_fits() {
        let mut rng = RngStream::new(0, 0);
        let t = simulate_pair(
            (NodeId(0), NodeId(1)),
            &dist(&[10]),
            &dist(&[5]),
            3,
            &mut rng,
        );
        assert!(t.encounters.is_empty());
        assert_eq!(t.discarded_starts, 1);
    }

    #[test]
    fn enlarge_same_seed_same_output() {
        let m = model(&[4, 3], &[1, 2, 3], &[0.5, 0.4, 0.6], &[10, 20, 30], &[5, 50]);
        let config = GenerationConfig::new(vec![8, 6], 10_000, 99);
        let a = enlarge_dataset(&m, &config).unwrap();
        let b = enlarge_dataset(&m, &config).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn enlarge_zero_edges_empty_trace() {
        let m = model(&[2, 2], &[1], &[0.0, 0.0, 0.0], &[10], &[5]);
        let config = GenerationConfig::new(vec![2, 2], 1000, 1);
        let out = enlarge_dataset(&m, &config).unwrap();
        assert!(out.trace.is_empty());
        assert_eq!(out.trace.node_count(), 4);
        assert_eq!(out.report.encounter_total, 0);
    }

    #[test]
    fn enlarge_reports_insufficient_ict_samples() {
        // Durations but no ICTs: the pair's edges exist, no encounters.
        let mut m = model(&[3], &[1], &[1.0], &[10], &[]);
        m.pairs[0].icts_s.clear();
        let config = GenerationConfig::new(vec![3], 1000, 1);
        let out = enlarge_dataset(&m, &config).unwrap();
        assert!(out.trace.is_empty());
        assert_eq!(out.report.edge_total, 3);
        assert_eq!(out.report.insufficient.len(), 1);
        assert_eq!(
            out.report.insufficient[0].reason,
            InsufficiencyReason::NoInterContactTimes
        );
    }

    #[test]
    fn enlarge_output_sorted_and_in_range() {
        let m = model(&[5, 5], &[1, 3], &[0.4, 0.3, 0.5], &[10, 25, 60], &[5, 100, 400]);
        let config = GenerationConfig::new(vec![5, 5], 50_000, 11);
        let out = enlarge_dataset(&m, &config).unwrap();
        assert!(out.trace.is_sorted_by_start());
        for r in out.trace.records() {
            assert!(r.start_s < 50_000);
            assert!(r.duration_s() >= 1);
        }
    }

    #[test]
    fn sampled_values_are_members_of_model_lists() {
        let durations = [7u64, 11, 13];
        let icts = [2u64, 300];
        let m = model(&[6], &[2], &[0.8], &durations, &icts);
        let config = GenerationConfig::new(vec![6], 20_000, 5);
        let out = enlarge_dataset(&m, &config).unwrap();
        assert!(!out.trace.is_empty());
        for r in out.trace.records() {
            assert!(durations.contains(&r.duration_s()));
        }
        let pair_icts = crate::analysis::compute_pair_icts(&out.trace);
        for gaps in pair_icts.per_pair.values() {
            for g in gaps {
                assert!(icts.contains(g));
            }
        }
    }

    proptest! {
        #[test]
        fn timelines_are_ordered_and_start_in_range(
            seed in 0u64..500,
            max_time in 1u64..5000,
            durations in proptest::collection::vec(1u64..100, 1..8),
            icts in proptest::collection::vec(0u64..200, 1..8),
        ) {
            let mut rng = RngStream::new(seed, 2);
            let t = simulate_pair(
                (NodeId(0), NodeId(1)),
                &dist(&durations),
                &dist(&icts),
                max_time,
                &mut rng,
            );
            for w in t.encounters.windows(2) {
                prop_assert!(w[1].0 >= w[0].1);
            }
            for (start, end) in t.encounters {
                prop_assert!(start < max_time);
                prop_assert!(end > start);
            }
        }
    }
}
