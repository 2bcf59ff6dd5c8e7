//! Synchronous average-consensus simulation.
//!
//! Nodes repeatedly replace their value with a Metropolis-weighted average
//! of their neighborhood. On a connected host the iteration is doubly
//! stochastic, so every node converges to the mean of the initial values —
//! seeding the iteration with the per-node measurements therefore drives
//! every node to the k-th spectral moment.

use num::bigint::BigInt;
use num::traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::local::{local_measurements, DetectorTable, LocalMeasurement};
use crate::walks::CoefficientTable;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightScheme {
    /// W(u,v) = 1 / (1 + max(deg u, deg v)) on edges; remainder on self.
    Metropolis,
}

#[derive(Clone, Debug)]
pub struct ConsensusConfig {
    /// Relative tolerance on the worst node deviation from the mean.
    pub tolerance: f64,
    pub max_rounds: usize,
    pub weight_scheme: WeightScheme,
    /// Record node values every this many rounds (round 0 included).
    pub snapshot_every: Option<usize>,
}

impl Default for ConsensusConfig {
    fn default() -> Self {
        ConsensusConfig {
            tolerance: 1e-10,
            max_rounds: 100_000,
            weight_scheme: WeightScheme::Metropolis,
            snapshot_every: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConsensusTrace {
    pub converged: bool,
    /// Rounds actually executed; 0 when the start state already met the
    /// tolerance.
    pub rounds: usize,
    pub final_values: Vec<f64>,
    /// Mean of the initial values; the fixed point of the iteration.
    pub target: f64,
    /// Largest round-to-round drift of the running mean, a floating-point
    /// conservation check (the exact iteration preserves the mean).
    pub max_mean_drift: f64,
    pub snapshots: Vec<(usize, Vec<f64>)>,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn within_tolerance(values: &[f64], target: f64, tolerance: f64) -> bool {
    let scale = target.abs().max(1.0);
    values.iter().all(|v| (v - target).abs() <= tolerance * scale)
}

/// Runs synchronous Metropolis-weighted averaging until every node is within
/// tolerance of the mean or the round budget runs out. Deterministic: node
/// updates are evaluated in index order.
pub fn run_average_consensus(
    host: &Graph,
    initial: &[f64],
    cfg: &ConsensusConfig,
) -> Result<ConsensusTrace> {
    if initial.len() != host.node_count() {
        return Err(Error::Parameter(format!(
            "got {} initial values for {} nodes",
            initial.len(),
            host.node_count()
        )));
    }
    if host.node_count() == 0 {
        return Err(Error::Parameter("consensus on an empty graph".into()));
    }
    if !host.is_connected() {
        return Err(Error::Disconnected);
    }
    if !cfg.tolerance.is_finite() || cfg.tolerance <= 0.0 {
        return Err(Error::Parameter(format!(
            "tolerance must be positive, got {}",
            cfg.tolerance
        )));
    }
    if cfg.max_rounds == 0 {
        return Err(Error::Parameter("max_rounds must be at least 1".into()));
    }
    let WeightScheme::Metropolis = cfg.weight_scheme;

    let n = host.node_count();
    let target = mean(initial);
    let mut values = initial.to_vec();
    let mut next = vec![0.0; n];
    let mut snapshots = Vec::new();
    let snap = |round: usize, values: &[f64], snapshots: &mut Vec<(usize, Vec<f64>)>| {
        if let Some(every) = cfg.snapshot_every {
            if every > 0 && round.is_multiple_of(every) {
                snapshots.push((round, values.to_vec()));
            }
        }
    };
    snap(0, &values, &mut snapshots);

    let mut rounds = 0;
    let mut max_mean_drift = 0.0f64;
    let mut prev_mean = mean(&values);
    let mut converged = within_tolerance(&values, target, cfg.tolerance);
    while !converged && rounds < cfg.max_rounds {
        for v in 0..n {
            let mut x = values[v];
            for &u in host.neighbors(v) {
                let w = 1.0 / (1.0 + host.degree(v).max(host.degree(u)) as f64);
                x += w * (values[u] - values[v]);
            }
            next[v] = x;
        }
        std::mem::swap(&mut values, &mut next);
        rounds += 1;
        let m = mean(&values);
        max_mean_drift = max_mean_drift.max((m - prev_mean).abs());
        prev_mean = m;
        snap(rounds, &values, &mut snapshots);
        converged = within_tolerance(&values, target, cfg.tolerance);
    }
    Ok(ConsensusTrace {
        converged,
        rounds,
        final_values: values,
        target,
        max_mean_drift,
        snapshots,
    })
}

/// Outcome of the full decentralized pipeline for one (r, k) pair.
#[derive(Clone, Debug)]
pub struct DistributedMoment {
    /// The consensus value: mean of the final node values, which every node
    /// tracks to within the configured tolerance.
    pub estimate: f64,
    /// Exact mean of the measurements — the k-th moment, by the aggregation
    /// identity — independent of consensus numerics.
    pub exact: Rational,
    pub trace: ConsensusTrace,
    pub measurements: Vec<LocalMeasurement>,
}

/// Computes every node's measurement, averages them by consensus, and
/// returns both the floating estimate and the exact moment.
pub fn distributed_moment(
    host: &Graph,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
    cfg: &ConsensusConfig,
) -> Result<DistributedMoment> {
    let measurements = local_measurements(host, r, k, table, detectors)?;
    if host.node_count() == 0 {
        return Err(Error::Parameter("moment of an empty host".into()));
    }
    if !host.is_connected() {
        return Err(Error::Disconnected);
    }
    let total: Rational = measurements.iter().map(|m| m.mu.clone()).sum();
    let exact = total / Rational::from(BigInt::from(host.node_count()));
    let initial: Vec<f64> = measurements
        .iter()
        .map(|m| m.mu.to_f64().expect("measurement fits in f64"))
        .collect();
    let trace = run_average_consensus(host, &initial, cfg)?;
    let estimate = mean(&trace.final_values);
    Ok(DistributedMoment {
        estimate,
        exact,
        trace,
        measurements,
    })
}
