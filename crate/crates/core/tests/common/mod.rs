// Each integration-test target pulls in the subset it needs.
#![allow(dead_code)]

//! Shared test fixtures: the host corpus and the exhaustive brute-force
//! oracles the implementation is checked against.

use std::collections::BTreeSet;

use graph_moments::{canonical_key, gen, CanonicalKey, Graph};

/// Seeded Erdős–Rényi schedule: denser samples stay small so exhaustive
/// censuses remain cheap, sparser ones grow to 25 nodes.
pub const ER_SCHEDULE: [(usize, f64); 25] = [
    (10, 0.1),
    (14, 0.1),
    (18, 0.1),
    (21, 0.1),
    (23, 0.1),
    (25, 0.1),
    (25, 0.1),
    (24, 0.1),
    (22, 0.1),
    (8, 0.2),
    (10, 0.2),
    (12, 0.2),
    (14, 0.2),
    (16, 0.2),
    (17, 0.2),
    (18, 0.2),
    (15, 0.2),
    (6, 0.3),
    (8, 0.3),
    (9, 0.3),
    (10, 0.3),
    (11, 0.3),
    (12, 0.3),
    (13, 0.3),
    (14, 0.3),
];

/// The verification corpus: rings, completes, paths, stars and 25 seeded
/// random graphs.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut hosts = Vec::new();
    for n in 3..=10 {
        hosts.push((format!("R{n}"), gen::ring(n)));
    }
    for n in 2..=6 {
        hosts.push((format!("K{n}"), gen::complete(n)));
    }
    for n in 2..=8 {
        hosts.push((format!("P{n}"), gen::path(n)));
    }
    for m in 1..=6 {
        hosts.push((format!("S{m}"), gen::star(m)));
    }
    for (i, &(n, p)) in ER_SCHEDULE.iter().enumerate() {
        let seed = 1000 + i as u64;
        hosts.push((
            format!("ER(n={n},p={p},seed={seed})"),
            gen::erdos_renyi(n, p, seed).expect("valid probability"),
        ));
    }
    hosts
}

pub fn connected_corpus() -> Vec<(String, Graph)> {
    corpus().into_iter().filter(|(_, g)| g.is_connected()).collect()
}

pub fn paw() -> Graph {
    Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()
}

/// Exhaustive atlas oracle: canonical keys of every connected graph on
/// exactly 2..=max_nodes labeled nodes with at most max_edges edges, found
/// by sweeping all edge subsets.
pub fn exhaustive_atlas_keys(max_nodes: usize, max_edges: usize) -> BTreeSet<CanonicalKey> {
    let mut keys = BTreeSet::new();
    for n in 2..=max_nodes {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for mask in 1u64..(1 << pairs.len()) {
            if (mask.count_ones() as usize) > max_edges {
                continue;
            }
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            // Connected on all n nodes means no isolated node slips in.
            if g.is_connected() {
                keys.insert(canonical_key(&g).unwrap());
            }
        }
    }
    keys
}
