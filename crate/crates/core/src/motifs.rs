//! Motif census and spectral moments.
//!
//! A census counts, for every atlas member, the number of distinct subgraphs
//! of a host isomorphic to it (distinct edge sets). The k-th spectral moment
//! is then a weighted sum of those counts divided by the node count, and the
//! exact trace of the k-th adjacency power provides an independent route to
//! the same value.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::bigint::BigInt;
use num::BigUint;
use num::traits::Zero;

use crate::canon::{canonical_key, pair_bit, shared_atlas, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walks::CoefficientTable;
use crate::Rational;

/// Hosts with more edges than this are refused at the largest census bound.
pub const CENSUS_EDGE_LIMIT: usize = 10_000;

/// Embedding frequencies of every atlas member in one host graph. Zero
/// counts are stored explicitly.
#[derive(Clone, Debug)]
pub struct MotifCensus {
    k: usize,
    node_count: usize,
    host_fingerprint: u64,
    counts: BTreeMap<CanonicalKey, u64>,
}

impl MotifCensus {
    /// The bound the census was run at: motifs have at most k nodes and k
    /// edges.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn host_node_count(&self) -> usize {
        self.node_count
    }

    /// Fingerprint of the host the census was taken from.
    pub fn host_fingerprint(&self) -> u64 {
        self.host_fingerprint
    }

    pub fn count(&self, key: &CanonicalKey) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (CanonicalKey, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    /// Assembles the k-th moment from this census and a coefficient table.
    pub fn moment(&self, k: usize, table: &CoefficientTable) -> Result<Rational> {
        if k > self.k {
            return Err(Error::Parameter(format!(
                "census was run at bound {}, cannot evaluate k={k}",
                self.k
            )));
        }
        if !table.covers(k) {
            return Err(Error::MissingCoefficients {
                k,
                covered: table.k_max(),
            });
        }
        if self.node_count == 0 {
            return Err(Error::Parameter("moment of an empty host".into()));
        }
        let mut walks: u128 = 0;
        for (key, w) in table.motifs_at(k) {
            walks += u128::from(w) * u128::from(self.count(&key));
        }
        Ok(Rational::new(
            BigInt::from(walks),
            BigInt::from(self.node_count),
        ))
    }
}

fn validate_census_bounds(g: &Graph, k: usize) -> Result<()> {
    if !(2..=7).contains(&k) {
        return Err(Error::Parameter(format!(
            "census bound must lie in 2..=7, got {k}"
        )));
    }
    if k == 7 && g.edge_count() > CENSUS_EDGE_LIMIT {
        return Err(Error::CensusTooLarge {
            edges: g.edge_count(),
            limit: CENSUS_EDGE_LIMIT,
            k,
        });
    }
    Ok(())
}

/// Counts, for every member of the k-atlas, the distinct subgraphs of `g`
/// isomorphic to it.
pub fn census(g: &Graph, k: usize) -> Result<MotifCensus> {
    validate_census_bounds(g, k)?;
    let atlas = shared_atlas(k)?;
    let mut counts: BTreeMap<CanonicalKey, u64> =
        atlas.members().iter().map(|m| (m.key, 0)).collect();
    let mut classifier = SubgraphClassifier::new(g);
    for_each_connected_subgraph(g, k, k, |edges, nodes| {
        let key = classifier.classify(edges, nodes);
        *counts
            .get_mut(&key)
            .expect("connected subgraph within bounds is an atlas member") += 1;
    });
    Ok(MotifCensus {
        k,
        node_count: g.node_count(),
        host_fingerprint: g.fingerprint(),
        counts,
    })
}

/// Maps an enumerated subgraph to its canonical key, memoizing on the local
/// adjacency pattern so canonicalization runs once per pattern, not once per
/// occurrence.
pub(crate) struct SubgraphClassifier<'g> {
    g: &'g Graph,
    memo: HashMap<(u8, u32), CanonicalKey>,
}

impl<'g> SubgraphClassifier<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        SubgraphClassifier {
            g,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn classify(&mut self, edge_idxs: &[usize], nodes: &[usize]) -> CanonicalKey {
        let n = nodes.len();
        let mut bits = 0u32;
        for &ei in edge_idxs {
            let (u, v) = self.g.edges()[ei];
            let i = nodes.binary_search(&u).expect("endpoint is a member node");
            let j = nodes.binary_search(&v).expect("endpoint is a member node");
            bits |= 1 << pair_bit(n, i, j);
        }
        let g = self.g;
        *self.memo.entry((n as u8, bits)).or_insert_with(|| {
            let local_edges = edge_idxs.iter().map(|&ei| {
                let (u, v) = g.edges()[ei];
                (
                    nodes.binary_search(&u).unwrap(),
                    nodes.binary_search(&v).unwrap(),
                )
            });
            let local = Graph::from_edges(n, local_edges).expect("local edges are in range");
            canonical_key(&local).expect("subgraph is within the canonical bound")
        })
    }
}

/// Visits every connected subgraph of `g` with at most `max_edges` edges and
/// `max_nodes` non-isolated nodes, exactly once each.
///
/// Growth is per seed edge: a subgraph is enumerated under its minimal edge
/// index, extended only with higher-indexed adjacent edges, and deduplicated
/// by packed edge set. The callback receives sorted edge indices and sorted
/// node ids.
pub(crate) fn for_each_connected_subgraph<F>(
    g: &Graph,
    max_nodes: usize,
    max_edges: usize,
    mut visit: F,
) where
    F: FnMut(&[usize], &[usize]),
{
    if max_edges == 0 || max_nodes < 2 {
        return;
    }
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.node_count()];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        incidence[u].push((v, idx));
        incidence[v].push((u, idx));
    }
    let mut seen: HashSet<u128> = HashSet::new();
    let mut edges: Vec<usize> = Vec::new();
    let mut nodes: Vec<usize> = Vec::new();
    for seed in 0..g.edge_count() {
        seen.clear();
        let (a, b) = g.edges()[seed];
        edges.clear();
        edges.push(seed);
        nodes.clear();
        nodes.extend([a, b]);
        seen.insert(pack(&edges));
        visit(&edges, &nodes);
        if max_edges >= 2 {
            extend_subgraph(
                g,
                &incidence,
                seed,
                max_nodes,
                max_edges,
                &mut edges,
                &mut nodes,
                &mut seen,
                &mut visit,
            );
        }
    }
}

/// Packed identity of a sorted edge-index set; 18 bits per index keeps seven
/// indices within a u128 for hosts up to 262143 edges.
fn pack(edges: &[usize]) -> u128 {
    edges
        .iter()
        .fold(0u128, |acc, &e| (acc << 18) | (e as u128 + 1))
}

#[allow(clippy::too_many_arguments)]
fn extend_subgraph<F>(
    g: &Graph,
    incidence: &[Vec<(usize, usize)>],
    seed: usize,
    max_nodes: usize,
    max_edges: usize,
    edges: &mut Vec<usize>,
    nodes: &mut Vec<usize>,
    seen: &mut HashSet<u128>,
    visit: &mut F,
) where
    F: FnMut(&[usize], &[usize]),
{
    let mut candidates: Vec<usize> = Vec::new();
    for &v in nodes.iter() {
        for &(_, eidx) in &incidence[v] {
            if eidx > seed && !edges.contains(&eidx) {
                candidates.push(eidx);
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    for c in candidates {
        let (x, y) = g.edges()[c];
        let new_node = if nodes.binary_search(&x).is_err() {
            Some(x)
        } else if nodes.binary_search(&y).is_err() {
            Some(y)
        } else {
            None
        };
        if new_node.is_some() && nodes.len() == max_nodes {
            continue;
        }
        let pos = edges.binary_search(&c).unwrap_err();
        edges.insert(pos, c);
        if seen.insert(pack(edges)) {
            let npos = new_node.map(|nn| {
                let npos = nodes.binary_search(&nn).unwrap_err();
                nodes.insert(npos, nn);
                npos
            });
            visit(edges, nodes);
            if edges.len() < max_edges {
                extend_subgraph(
                    g, incidence, seed, max_nodes, max_edges, edges, nodes, seen, visit,
                );
            }
            if let Some(npos) = npos {
                nodes.remove(npos);
            }
        }
        edges.remove(pos);
    }
}

/// Exact number of closed k-walks in `g`: the trace of the k-th adjacency
/// power, computed with arbitrary-precision integers.
pub fn closed_walk_count(g: &Graph, k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Parameter("walk length must be at least 1".into()));
    }
    let n = g.node_count();
    let mut adj = vec![vec![BigUint::zero(); n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = BigUint::from(1u32);
        adj[v][u] = BigUint::from(1u32);
    }
    let mut power = adj.clone();
    for _ in 1..k {
        power = mat_mul(&power, &adj);
    }
    let mut trace = BigUint::zero();
    for (i, row) in power.iter().enumerate() {
        trace += &row[i];
    }
    Ok(trace)
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for t in 0..n {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[t][j].is_zero() {
                    let prod = &a[i][t] * &b[t][j];
                    out[i][j] += prod;
                }
            }
        }
    }
    out
}

/// The k-th spectral moment as tr(A^k)/n, exact.
pub fn moment_trace_oracle(g: &Graph, k: usize) -> Result<Rational> {
    if g.node_count() == 0 {
        return Err(Error::Parameter("moment of an empty host".into()));
    }
    let walks = closed_walk_count(g, k)?;
    Ok(Rational::new(
        BigInt::from(walks),
        BigInt::from(g.node_count()),
    ))
}

/// The k-th spectral moment assembled from motif counts.
pub fn moment_from_motifs(g: &Graph, k: usize, table: &CoefficientTable) -> Result<Rational> {
    if g.node_count() == 0 {
        return Err(Error::Parameter("moment of an empty host".into()));
    }
    if !table.covers(k) {
        return Err(Error::MissingCoefficients {
            k,
            covered: table.k_max(),
        });
    }
    census(g, k)?.moment(k, table)
}

/// Degree power sum W_r = sum over nodes of deg(v)^r.
fn degree_power_sum(g: &Graph, r: u32) -> u128 {
    (0..g.node_count())
        .map(|v| (g.degree(v) as u128).pow(r))
        .sum()
}

fn cycle_key(len: usize) -> CanonicalKey {
    canonical_key(&crate::gen::ring(len)).expect("small cycle is canonicalizable")
}

/// Fourth moment from degree power sums and the 4-cycle count:
/// (2*W2 - W1 + 8*Phi4) / n.
pub fn moment4_closed_form(g: &Graph) -> Result<Rational> {
    if g.node_count() == 0 {
        return Err(Error::Parameter("moment of an empty host".into()));
    }
    let w1 = degree_power_sum(g, 1);
    let w2 = degree_power_sum(g, 2);
    let phi4 = census(g, 4)?.count(&cycle_key(4));
    let walks = 2 * w2 - w1 + 8 * u128::from(phi4);
    Ok(Rational::new(
        BigInt::from(walks),
        BigInt::from(g.node_count()),
    ))
}

/// Number of triangles through each node, by sorted-neighbor intersection.
pub fn per_node_triangles(g: &Graph) -> Vec<u64> {
    let mut tri = vec![0u64; g.node_count()];
    for &(u, v) in g.edges() {
        // Walk the two sorted lists; count common neighbors above v so each
        // triangle is charged to exactly one of its edges.
        let (mut i, mut j) = (0, 0);
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nu[i];
                    if w > v {
                        tri[u] += 1;
                        tri[v] += 1;
                        tri[w] += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    tri
}

/// Fifth moment from triangles, the clustering-degree correlation and the
/// 5-cycle count: (10*Phi5 - 30*Delta + 10*sum_i d_i*Delta_i) / n.
pub fn moment5_closed_form(g: &Graph) -> Result<Rational> {
    if g.node_count() == 0 {
        return Err(Error::Parameter("moment of an empty host".into()));
    }
    let tri = per_node_triangles(g);
    let triangle_total: u128 = tri.iter().map(|&t| u128::from(t)).sum::<u128>() / 3;
    let cluster_degree: u128 = (0..g.node_count())
        .map(|v| g.degree(v) as u128 * u128::from(tri[v]))
        .sum();
    let phi5 = census(g, 5)?.count(&cycle_key(5));
    let walks: i128 =
        10 * phi5 as i128 - 30 * triangle_total as i128 + 10 * cluster_degree as i128;
    Ok(Rational::new(
        BigInt::from(walks),
        BigInt::from(g.node_count()),
    ))
}

/// Exact spectral moments m_1..m_K of one host.
#[derive(Clone, Debug)]
pub struct MomentVector {
    n: usize,
    values: Vec<Rational>,
}

impl MomentVector {
    /// Moments via the trace oracle; any k_max >= 1.
    pub fn from_trace(g: &Graph, k_max: usize) -> Result<Self> {
        let values = (1..=k_max)
            .map(|k| moment_trace_oracle(g, k))
            .collect::<Result<_>>()?;
        Ok(MomentVector {
            n: g.node_count(),
            values,
        })
    }

    /// Moments via motif counts; k_max is capped by the coefficient table.
    pub fn from_motifs(g: &Graph, k_max: usize, table: &CoefficientTable) -> Result<Self> {
        if g.node_count() == 0 {
            return Err(Error::Parameter("moment of an empty host".into()));
        }
        let c = census(g, k_max.clamp(2, 7))?;
        let mut values = vec![Rational::zero()]; // m_1 = 0 in a simple graph
        for k in 2..=k_max {
            values.push(c.moment(k, table)?);
        }
        values.truncate(k_max);
        Ok(MomentVector {
            n: g.node_count(),
            values,
        })
    }

    pub fn host_node_count(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    /// m_k for 1 <= k <= k_max.
    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::walks::build_coefficient_table;
    use num::traits::ToPrimitive;

    fn key_of(g: &Graph) -> CanonicalKey {
        canonical_key(g).unwrap()
    }

    fn rational(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Edge-subset brute force: every subset of host edges that forms a
    /// connected graph within the (k, k) bounds, grouped by key.
    fn brute_census(g: &Graph, k: usize) -> BTreeMap<CanonicalKey, u64> {
        let m = g.edge_count();
        assert!(m <= 16, "oracle is exponential in the edge count");
        let mut counts = BTreeMap::new();
        for mask in 1u32..(1 << m) {
            let edges: Vec<(usize, usize)> = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| g.edges()[i])
                .collect();
            if edges.len() > k {
                continue;
            }
            let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            nodes.sort_unstable();
            nodes.dedup();
            if nodes.len() > k {
                continue;
            }
            let local = Graph::from_edges(
                nodes.len(),
                edges.iter().map(|&(u, v)| {
                    (
                        nodes.binary_search(&u).unwrap(),
                        nodes.binary_search(&v).unwrap(),
                    )
                }),
            )
            .unwrap();
            if local.is_connected() {
                *counts.entry(key_of(&local)).or_insert(0) += 1;
            }
        }
        counts
    }

    #[test]
    fn census_on_a_triangle() {
        let c = census(&gen::complete(3), 4).unwrap();
        assert_eq!(c.count(&key_of(&gen::complete(2))), 3);
        assert_eq!(c.count(&key_of(&gen::path(3))), 3);
        assert_eq!(c.count(&key_of(&gen::complete(3))), 1);
        assert_eq!(c.count(&key_of(&gen::ring(4))), 0);
        assert_eq!(c.count(&key_of(&gen::star(3))), 0);
        // Every atlas key is present, zeros included.
        assert_eq!(c.counts().count(), 7);
    }

    #[test]
    fn census_on_a_five_ring() {
        let c = census(&gen::ring(5), 4).unwrap();
        assert_eq!(c.count(&key_of(&gen::complete(2))), 5);
        assert_eq!(c.count(&key_of(&gen::path(3))), 5);
        assert_eq!(c.count(&key_of(&gen::ring(4))), 0);
        assert_eq!(c.count(&key_of(&gen::complete(3))), 0);
    }

    #[test]
    fn census_on_a_star() {
        let c = census(&gen::star(3), 4).unwrap();
        assert_eq!(c.count(&key_of(&gen::complete(2))), 3);
        assert_eq!(c.count(&key_of(&gen::path(3))), 3);
        assert_eq!(c.count(&key_of(&gen::star(3))), 1);
        assert_eq!(c.count(&key_of(&gen::ring(4))), 0);
    }

    #[test]
    fn census_matches_edge_subset_brute_force() {
        let hosts = [
            gen::complete(4),
            gen::ring(5),
            gen::star(4),
            gen::erdos_renyi(7, 0.35, 11).unwrap(),
            gen::erdos_renyi(8, 0.25, 5).unwrap(),
        ];
        for g in &hosts {
            for k in [3, 5, 7] {
                let expected = brute_census(g, k);
                let got = census(g, k).unwrap();
                for (key, count) in got.counts() {
                    assert_eq!(
                        count,
                        expected.get(&key).copied().unwrap_or(0),
                        "key {key} at k={k}"
                    );
                }
                let total: u64 = expected.values().sum();
                let got_total: u64 = got.counts().map(|(_, c)| c).sum();
                assert_eq!(total, got_total);
            }
        }
    }

    #[test]
    fn census_frequency_identities() {
        for seed in 0..6 {
            let g = gen::erdos_renyi(14, 0.3, seed).unwrap();
            let c = census(&g, 4).unwrap();
            assert_eq!(c.count(&key_of(&gen::complete(2))), g.edge_count() as u64);
            let wedges: u64 = (0..g.node_count())
                .map(|v| {
                    let d = g.degree(v) as u64;
                    d * d.saturating_sub(1) / 2
                })
                .sum();
            assert_eq!(c.count(&key_of(&gen::path(3))), wedges);
        }
    }

    #[test]
    fn census_bounds_and_guard() {
        assert!(census(&gen::ring(5), 1).is_err());
        assert!(census(&gen::ring(5), 8).is_err());
        let big = gen::ring(10_001);
        assert!(matches!(
            census(&big, 7),
            Err(Error::CensusTooLarge { .. })
        ));
        // The guard binds only at the top bound; smaller bounds still run.
        assert_eq!(
            census(&big, 4).unwrap().count(&key_of(&gen::complete(2))),
            10_001
        );
    }

    #[test]
    fn trace_oracle_basics() {
        for g in [gen::ring(6), gen::star(4), gen::erdos_renyi(9, 0.4, 3).unwrap()] {
            assert_eq!(moment_trace_oracle(&g, 1).unwrap(), Rational::zero());
            assert_eq!(
                moment_trace_oracle(&g, 2).unwrap(),
                rational(2 * g.edge_count() as i64, g.node_count() as i64)
            );
        }
        assert_eq!(moment_trace_oracle(&gen::ring(6), 4).unwrap(), rational(6, 1));
        assert!(moment_trace_oracle(&gen::ring(3), 0).is_err());
        assert!(moment_trace_oracle(&Graph::empty(0), 2).is_err());
    }

    #[test]
    fn moments_from_motifs_match_known_values() {
        let table = build_coefficient_table(5).unwrap();
        assert_eq!(
            moment_from_motifs(&gen::ring(5), 4, &table).unwrap(),
            rational(6, 1)
        );
        // K3 eigenvalues are 2, -1, -1.
        assert_eq!(
            moment_from_motifs(&gen::complete(3), 4, &table).unwrap(),
            rational(6, 1)
        );
        assert_eq!(
            moment_from_motifs(&gen::complete(3), 5, &table).unwrap(),
            rational(10, 1)
        );
        // m3 = 6 * triangles / n.
        for seed in 0..4 {
            let g = gen::erdos_renyi(12, 0.35, seed).unwrap();
            let triangles: u64 = per_node_triangles(&g).iter().sum::<u64>() / 3;
            assert_eq!(
                moment_from_motifs(&g, 3, &table).unwrap(),
                rational(6 * triangles as i64, g.node_count() as i64)
            );
        }
    }

    #[test]
    fn moment_errors() {
        let table = build_coefficient_table(4).unwrap();
        assert!(matches!(
            moment_from_motifs(&gen::ring(5), 5, &table),
            Err(Error::MissingCoefficients { k: 5, covered: 4 })
        ));
        assert!(moment_from_motifs(&Graph::empty(0), 2, &table).is_err());
        let c = census(&gen::ring(5), 3).unwrap();
        assert!(c.moment(4, &table).is_err());
    }

    #[test]
    fn fourth_moment_closed_form_examples() {
        assert_eq!(moment4_closed_form(&gen::ring(5)).unwrap(), rational(6, 1));
        // C4 eigenvalues are 2, 0, -2, 0.
        assert_eq!(moment4_closed_form(&gen::ring(4)).unwrap(), rational(8, 1));
        // K2 eigenvalues are 1, -1.
        assert_eq!(moment4_closed_form(&gen::complete(2)).unwrap(), rational(1, 1));
    }

    #[test]
    fn fifth_moment_closed_form_examples() {
        assert_eq!(
            moment5_closed_form(&gen::complete(3)).unwrap(),
            rational(10, 1)
        );
        assert_eq!(moment5_closed_form(&gen::ring(5)).unwrap(), rational(2, 1));
        // Triangle-free bipartite hosts have vanishing odd moments.
        assert_eq!(moment5_closed_form(&gen::star(5)).unwrap(), Rational::zero());
        assert_eq!(moment5_closed_form(&gen::ring(6)).unwrap(), Rational::zero());
    }

    #[test]
    fn odd_moments_vanish_on_bipartite_hosts() {
        for g in [gen::ring(8), gen::path(7), gen::star(6)] {
            for k in [1, 3, 5, 7] {
                assert_eq!(moment_trace_oracle(&g, k).unwrap(), Rational::zero());
            }
        }
    }

    mod random_hosts {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn table5() -> &'static crate::walks::CoefficientTable {
            static TABLE: OnceLock<crate::walks::CoefficientTable> = OnceLock::new();
            TABLE.get_or_init(|| build_coefficient_table(5).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn motif_route_equals_trace(
                (n, mask) in (2usize..=10).prop_flat_map(|n| {
                    let m = n * (n - 1) / 2;
                    (Just(n), 0u64..(1u64 << m))
                }),
                k in 2usize..=5,
            ) {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                    .collect();
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(n, edges).unwrap();
                prop_assert_eq!(
                    moment_from_motifs(&g, k, table5()).unwrap(),
                    moment_trace_oracle(&g, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn moment_vector_invariants() {
        let table = build_coefficient_table(6).unwrap();
        for g in [gen::ring(7), gen::complete(5), gen::erdos_renyi(10, 0.3, 2).unwrap()] {
            let trace = MomentVector::from_trace(&g, 6).unwrap();
            let motifs = MomentVector::from_motifs(&g, 6, &table).unwrap();
            assert_eq!(trace.get(1), &Rational::zero());
            assert!(trace.get(2).to_f64().unwrap() >= 0.0);
            for k in 1..=6 {
                assert_eq!(trace.get(k), motifs.get(k), "k={k}");
                let scaled = trace.get(k) * Rational::from(BigInt::from(g.node_count()));
                assert!(scaled.is_integer(), "n*m_k must be a walk count");
            }
        }
    }
}
