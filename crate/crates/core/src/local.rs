//! Per-node views: which nodes of a subgraph can count it from a radius-r
//! neighborhood, how often each motif is countable at each node, and the
//! weighted per-node measurements whose network-wide average is the k-th
//! spectral moment.
//!
//! A node v counts a copy of a motif when v belongs to it and v's
//! eccentricity measured inside the copy is at most r. That rule mirrors the
//! detector-set computation, which also uses distances inside the subgraph,
//! and it is what makes the per-motif sum identity exact: every copy is
//! counted once per detector node.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::bigint::BigInt;
use num::traits::Zero;

use crate::canon::{Atlas, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::motifs::{
    census, closed_walk_count, for_each_connected_subgraph, MotifCensus, SubgraphClassifier,
};
use crate::walks::CoefficientTable;
use crate::Rational;

/// Number of nodes of `g_rep` whose eccentricity inside `g_rep` is at most
/// `r` — the nodes able to count a copy of `g_rep` from a radius-r view.
pub fn detector_count(g_rep: &Graph, r: usize) -> Result<usize> {
    if !g_rep.is_connected() || g_rep.node_count() == 0 {
        return Err(Error::Disconnected);
    }
    let mut count = 0;
    for v in 0..g_rep.node_count() {
        let ecc = g_rep.eccentricity(v)?.expect("connected");
        if ecc <= r {
            count += 1;
        }
    }
    Ok(count)
}

/// Detector-set sizes for every atlas member at each radius of interest.
#[derive(Clone, Debug)]
pub struct DetectorTable {
    entries: BTreeMap<(CanonicalKey, usize), usize>,
}

impl DetectorTable {
    pub fn get(&self, key: &CanonicalKey, r: usize) -> Option<usize> {
        self.entries.get(&(*key, r)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (CanonicalKey, usize, usize)> + '_ {
        self.entries.iter().map(|(&(key, r), &d)| (key, r, d))
    }

    /// Golden-file text: `key=<hex> r=<r> D=<int>`, sorted by (key, r).
    pub fn golden_text(&self) -> String {
        let mut out = String::new();
        for ((key, r), d) in &self.entries {
            writeln!(out, "key={} r={} D={}", key.hex(), r, d).unwrap();
        }
        out
    }
}

pub fn build_detector_table(atlas: &Atlas, radii: &[usize]) -> Result<DetectorTable> {
    let mut entries = BTreeMap::new();
    for member in atlas.members() {
        for &r in radii {
            entries.insert((member.key, r), detector_count(&member.graph, r)?);
        }
    }
    Ok(DetectorTable { entries })
}

pub fn parse_detector_golden(text: &str) -> Result<DetectorTable> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut key = None;
        let mut r = None;
        let mut d = None;
        for field in trimmed.split_whitespace() {
            match field.split_once('=') {
                Some(("key", v)) => key = CanonicalKey::from_hex(v),
                Some(("r", v)) => r = v.parse::<usize>().ok(),
                Some(("D", v)) => d = v.parse::<usize>().ok(),
                _ => {}
            }
        }
        match (key, r, d) {
            (Some(key), Some(r), Some(d)) => {
                entries.insert((key, r), d);
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("bad detector line {trimmed:?}"),
                })
            }
        }
    }
    Ok(DetectorTable { entries })
}

/// Per-node motif counts of one host, bucketed by the counting node's
/// eccentricity inside each copy. One build serves every radius.
#[derive(Clone, Debug)]
pub struct LocalCensus {
    k: usize,
    host_fingerprint: u64,
    per_node: Vec<HashMap<CanonicalKey, [u64; 8]>>,
}

impl LocalCensus {
    /// Enumerates every connected subgraph of `host` within the (k, k)
    /// bounds once, attributing it to each member node by in-copy
    /// eccentricity.
    pub fn build(host: &Graph, k: usize) -> Result<LocalCensus> {
        if !(2..=7).contains(&k) {
            return Err(Error::Parameter(format!(
                "local census bound must lie in 2..=7, got {k}"
            )));
        }
        if k == 7 && host.edge_count() > crate::motifs::CENSUS_EDGE_LIMIT {
            return Err(Error::CensusTooLarge {
                edges: host.edge_count(),
                limit: crate::motifs::CENSUS_EDGE_LIMIT,
                k,
            });
        }
        let mut per_node: Vec<HashMap<CanonicalKey, [u64; 8]>> =
            vec![HashMap::new(); host.node_count()];
        let mut classifier = SubgraphClassifier::new(host);
        for_each_connected_subgraph(host, k, k, |edges, nodes| {
            let key = classifier.classify(edges, nodes);
            let adj = local_adjacency(host, edges, nodes);
            for (local, &global) in nodes.iter().enumerate() {
                let ecc = small_eccentricity(&adj, nodes.len(), local);
                let buckets = per_node[global].entry(key).or_insert([0; 8]);
                buckets[ecc] += 1;
            }
        });
        Ok(LocalCensus {
            k,
            host_fingerprint: host.fingerprint(),
            per_node,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Fingerprint of the host the census was taken from.
    pub fn host_fingerprint(&self) -> u64 {
        self.host_fingerprint
    }

    pub fn host_node_count(&self) -> usize {
        self.per_node.len()
    }

    /// Local embedding frequency: copies of the motif containing `v` whose
    /// in-copy eccentricity at `v` is at most `r`.
    pub fn frequency(&self, v: usize, key: &CanonicalKey, r: usize) -> u64 {
        match self.per_node[v].get(key) {
            Some(buckets) => buckets[..=r.min(7)].iter().sum(),
            None => 0,
        }
    }
}

/// Adjacency bitmasks of a subgraph relabeled to 0..t (t <= 8).
fn local_adjacency(host: &Graph, edge_idxs: &[usize], nodes: &[usize]) -> [u8; 8] {
    let mut adj = [0u8; 8];
    for &ei in edge_idxs {
        let (u, v) = host.edges()[ei];
        let i = nodes.binary_search(&u).expect("member node");
        let j = nodes.binary_search(&v).expect("member node");
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    adj
}

/// BFS eccentricity inside a connected subgraph of at most 8 nodes.
fn small_eccentricity(adj: &[u8; 8], n: usize, src: usize) -> usize {
    let mut dist = [usize::MAX; 8];
    let mut queue = [0usize; 8];
    dist[src] = 0;
    queue[0] = src;
    let (mut head, mut tail) = (0, 1);
    let mut ecc = 0;
    while head < tail {
        let v = queue[head];
        head += 1;
        for u in 0..n {
            if adj[v] >> u & 1 == 1 && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                ecc = ecc.max(dist[u]);
                queue[tail] = u;
                tail += 1;
            }
        }
    }
    debug_assert_eq!(tail, n, "subgraph must be connected");
    ecc
}

/// Local embedding frequency of one motif at one node, from scratch.
pub fn local_embedding_frequency(
    host: &Graph,
    v: usize,
    r: usize,
    g_rep: &Graph,
) -> Result<u64> {
    if v >= host.node_count() {
        return Err(Error::NodeOutOfRange {
            node: v,
            node_count: host.node_count(),
        });
    }
    let bound = g_rep.node_count().max(g_rep.edge_count()).max(2);
    if bound > 7 || !g_rep.is_connected() || g_rep.node_count() < 2 {
        return Err(Error::Parameter(
            "motif must be a connected atlas member (2..=7 nodes, <=7 edges)".into(),
        ));
    }
    let key = crate::canon::canonical_key(g_rep)?;
    Ok(LocalCensus::build(host, bound)?.frequency(v, &key, r))
}

/// One node's weighted motif measurement: mu = sum over motifs of
/// omega/|D| * H, whose host-wide mean is the k-th spectral moment.
#[derive(Clone, Debug)]
pub struct LocalMeasurement {
    pub node: usize,
    pub r: usize,
    pub k: usize,
    pub mu: Rational,
    /// Local embedding frequency per motif with a positive coefficient.
    pub breakdown: BTreeMap<CanonicalKey, u64>,
}

fn check_capability(r: usize, k: usize) -> Result<()> {
    let k_max = 2 * r + 1;
    if k > k_max {
        return Err(Error::Capability { k, k_max, r });
    }
    Ok(())
}

/// Measurements for every node of the host, sharing one local census.
pub fn local_measurements(
    host: &Graph,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
) -> Result<Vec<LocalMeasurement>> {
    check_capability(r, k)?;
    let bound = k.clamp(2, 7);
    let census = LocalCensus::build(host, bound)?;
    (0..host.node_count())
        .map(|v| measurement_from_census(&census, v, r, k, table, detectors))
        .collect()
}

/// Measurement of a single node (builds a census; prefer
/// [`local_measurements`] for whole-host sweeps).
pub fn local_measurement(
    host: &Graph,
    v: usize,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
) -> Result<LocalMeasurement> {
    check_capability(r, k)?;
    if v >= host.node_count() {
        return Err(Error::NodeOutOfRange {
            node: v,
            node_count: host.node_count(),
        });
    }
    let census = LocalCensus::build(host, k.clamp(2, 7))?;
    measurement_from_census(&census, v, r, k, table, detectors)
}

/// Assembles mu for one node from a prebuilt local census.
pub fn measurement_from_census(
    census: &LocalCensus,
    v: usize,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
) -> Result<LocalMeasurement> {
    check_capability(r, k)?;
    if v >= census.host_node_count() {
        return Err(Error::NodeOutOfRange {
            node: v,
            node_count: census.host_node_count(),
        });
    }
    let mut mu = Rational::zero();
    let mut breakdown = BTreeMap::new();
    if k >= 2 {
        if !table.covers(k) {
            return Err(Error::MissingCoefficients {
                k,
                covered: table.k_max(),
            });
        }
        if k > census.k() {
            return Err(Error::Parameter(format!(
                "local census was built at bound {}, cannot evaluate k={k}",
                census.k()
            )));
        }
        for (key, w) in table.motifs_at(k) {
            let h = census.frequency(v, &key, r);
            breakdown.insert(key, h);
            if h == 0 {
                continue;
            }
            let d = detectors.get(&key, r).ok_or_else(|| {
                Error::Parameter(format!(
                    "detector table has no entry for key={} r={r}",
                    key.hex()
                ))
            })?;
            if d == 0 {
                // Cannot happen for k <= 2r+1: a covering walk's root has
                // eccentricity at most floor(k/2) <= r.
                return Err(Error::Parameter(format!(
                    "motif key={} counted at node {v} but has no detector at r={r}",
                    key.hex()
                )));
            }
            mu += Rational::new(BigInt::from(w) * BigInt::from(h), BigInt::from(d));
        }
    }
    // k = 1: no closed walk uses an edge, so the sum is empty and mu = 0.
    Ok(LocalMeasurement {
        node: v,
        r,
        k,
        mu,
        breakdown,
    })
}

/// Measurement dump, one line per measurement: `v=<id> k=<k> mu=<num>/<den>`.
pub fn measurement_dump(measurements: &[LocalMeasurement]) -> String {
    let mut out = String::new();
    for m in measurements {
        writeln!(
            out,
            "v={} k={} mu={}/{}",
            m.node,
            m.k,
            m.mu.numer(),
            m.mu.denom()
        )
        .unwrap();
    }
    out
}

/// One motif's aggregation identity: the per-node local frequencies summed
/// over the host must equal detector-set size times embedding frequency.
#[derive(Clone, Debug)]
pub struct MotifIdentity {
    pub key: CanonicalKey,
    pub omega: u64,
    pub local_sum: u64,
    pub detector_count: usize,
    pub frequency: u64,
    pub holds: bool,
}

/// Verification report for one (r, k) pair on one host.
#[derive(Clone, Debug)]
pub struct SumCheckReport {
    pub r: usize,
    pub k: usize,
    pub motifs: Vec<MotifIdentity>,
    /// Sum of mu over all nodes, exact.
    pub mu_total: Rational,
    /// n * m_k from the trace oracle, exact.
    pub walk_count: Rational,
    pub mu_matches_oracle: bool,
}

impl SumCheckReport {
    pub fn all_hold(&self) -> bool {
        self.mu_matches_oracle && self.motifs.iter().all(|m| m.holds)
    }
}

/// Runs the per-motif and whole-moment identities for one (r, k) pair.
pub fn sum_check(
    host: &Graph,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
) -> Result<SumCheckReport> {
    check_capability(r, k)?;
    let bound = k.clamp(2, 7);
    let local = LocalCensus::build(host, bound)?;
    let motifs = census(host, bound)?;
    sum_check_from(&local, &motifs, host, r, k, table, detectors)
}

/// Same as [`sum_check`] but reusing prebuilt censuses (they may have been
/// built at a larger bound).
pub fn sum_check_from(
    local: &LocalCensus,
    motifs: &MotifCensus,
    host: &Graph,
    r: usize,
    k: usize,
    table: &CoefficientTable,
    detectors: &DetectorTable,
) -> Result<SumCheckReport> {
    check_capability(r, k)?;
    if local.host_fingerprint() != host.fingerprint()
        || motifs.host_fingerprint() != host.fingerprint()
    {
        return Err(Error::Parameter(
            "census does not belong to this host graph".into(),
        ));
    }
    let mut identities = Vec::new();
    let mut mu_total = Rational::zero();
    if k >= 2 {
        for v in 0..host.node_count() {
            let m = measurement_from_census(local, v, r, k, table, detectors)?;
            mu_total += m.mu;
        }
        for (key, w) in table.motifs_at(k) {
            let local_sum: u64 = (0..host.node_count())
                .map(|v| local.frequency(v, &key, r))
                .sum();
            let d = detectors.get(&key, r).ok_or_else(|| {
                Error::Parameter(format!(
                    "detector table has no entry for key={} r={r}",
                    key.hex()
                ))
            })?;
            let frequency = motifs.count(&key);
            identities.push(MotifIdentity {
                key,
                omega: w,
                local_sum,
                detector_count: d,
                frequency,
                holds: local_sum == d as u64 * frequency,
            });
        }
    }
    let walk_count = Rational::from(BigInt::from(closed_walk_count(host, k)?));
    let mu_matches_oracle = mu_total == walk_count;
    Ok(SumCheckReport {
        r,
        k,
        motifs: identities,
        mu_total,
        walk_count,
        mu_matches_oracle,
    })
}

/// Diagnostic for the two readings of "locally countable": pairs (v, copy)
/// where the copy lies inside v's radius-r host neighborhood yet v's
/// eccentricity inside the copy exceeds r. The eccentricity rule never
/// counts more than the containment rule, so this one-sided count is the
/// whole disagreement.
pub fn detection_rule_mismatch(host: &Graph, r: usize, k: usize) -> Result<u64> {
    if !(2..=7).contains(&k) {
        return Err(Error::Parameter(format!(
            "bound must lie in 2..=7, got {k}"
        )));
    }
    let dist: Vec<Vec<Option<usize>>> = (0..host.node_count())
        .map(|v| host.bfs_distances(v))
        .collect::<Result<_>>()?;
    let mut mismatches = 0u64;
    for_each_connected_subgraph(host, k, k, |edges, nodes| {
        let adj = local_adjacency(host, edges, nodes);
        for (local, &v) in nodes.iter().enumerate() {
            let contained = nodes
                .iter()
                .all(|&u| matches!(dist[v][u], Some(d) if d <= r));
            if !contained {
                continue;
            }
            if small_eccentricity(&adj, nodes.len(), local) > r {
                mismatches += 1;
            }
        }
    });
    Ok(mismatches)
}
