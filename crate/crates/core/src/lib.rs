//! Spectral moments of undirected simple graphs, computed from subgraph
//! counts instead of eigendecompositions.
//!
//! The k-th spectral moment of a graph's adjacency matrix equals its closed
//! k-walk count divided by the node count. Closed walks factor through the
//! small connected graphs they trace out, so the moment is a fixed weighted
//! sum of motif embedding frequencies. This crate derives those weights by
//! walk enumeration, counts motifs exactly, and cross-checks everything
//! against exact integer adjacency powers.
//!
//! On top of the centralized pipeline sits a decentralized one: every node
//! forms a measurement from its radius-r neighborhood view, and iterative
//! neighbor averaging drives all nodes to the global moment. The
//! [`distsim`] module simulates that protocol.

pub mod canon;
pub mod distsim;
pub mod error;
pub mod gen;
pub mod graph;
pub mod local;
pub mod motifs;
pub mod walks;

/// Exact rational number used for every verified quantity; floating point
/// appears only inside the consensus iteration.
pub type Rational = num::BigRational;

pub use canon::{build_atlas, canonical_key, is_isomorphic, Atlas, AtlasMember, CanonicalKey};
pub use distsim::{
    distributed_moment, run_average_consensus, ConsensusConfig, ConsensusTrace,
    DistributedMoment, WeightScheme,
};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Diameter, Graph, NodeSubset};
pub use local::{
    build_detector_table, detection_rule_mismatch, detector_count, local_embedding_frequency,
    local_measurement, local_measurements, measurement_dump, measurement_from_census, sum_check,
    sum_check_from, DetectorTable, LocalCensus, LocalMeasurement, MotifIdentity, SumCheckReport,
};
pub use motifs::{
    census, closed_walk_count, moment4_closed_form, moment5_closed_form, moment_from_motifs,
    moment_trace_oracle, per_node_triangles, MomentVector, MotifCensus,
};
pub use walks::{
    build_coefficient_table, enumerate_closed_walks, omega, CoefficientTable, WalkRecord,
};
