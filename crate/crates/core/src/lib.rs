//! Cluster-aware encounter trace statistics and synthetic trace enlargement.
//!
//! Given an encounter trace (who met whom, from when to when) and a cluster
//! assignment for every participant, this crate learns a statistical model —
//! contact durations, inter-contact times and edge densities per cluster
//! pair, plus the node degree distribution — and replays it into arbitrarily
//! enlarged synthetic traces by empirical inverse-transform sampling.
//!
//! The crate is `no_std` (with `alloc`). File formats, the JSON model
//! representation and the CLI live in the companion `encforge` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod sampling;
pub mod synthesis;
pub mod trace;
pub mod validation;

pub use analysis::{build_contact_graph, build_stat_model, ContactGraph, StatModel};
pub use sampling::{EmpiricalDistribution, RngStream};
pub use synthesis::{enlarge_dataset, GenerationOutput, GenerationReport};
pub use trace::{ClusterId, ClusterMap, EncounterRecord, GenerationConfig, NodeId, Trace};
pub use validation::{ComparisonReport, Metric};
