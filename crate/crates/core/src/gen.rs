//! Deterministic graph generators: rings, paths, complete graphs, stars and
//! seeded Erdős–Rényi samples.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ring graph R_n: node i adjacent to (i+1) mod n. R_1 is a lone node and
/// R_2 collapses to a single edge.
pub fn ring(n: usize) -> Graph {
    let edges = (0..n).filter_map(|i| {
        let j = (i + 1) % n;
        (i != j).then_some((i, j))
    });
    Graph::from_edges(n, edges).expect("ring edges are in range")
}

/// Path graph P_n on n nodes and n-1 edges.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete edges are in range")
}

/// Star K_{1,m}: node 0 is the hub, nodes 1..=m are leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
        .expect("star edges are in range")
}

/// Seeded Erdős–Rényi graph G(n, p).
///
/// Reproducible across platforms: a ChaCha8 stream seeded with `seed` yields
/// one 64-bit word per node pair in lexicographic order, and the pair becomes
/// an edge when the top 53 bits, scaled to [0, 1), fall below `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let draw = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if draw < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}
