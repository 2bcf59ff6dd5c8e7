//! Closed-walk enumeration and the per-motif walk coefficients.
//!
//! The coefficient of a motif g at length k is the number of closed k-walks
//! inside g, over all starting nodes, that traverse every edge of g (and so
//! visit every node). There is no closed form for it; it is found by a
//! pruned depth-first exploration, once per (g, k).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A closed walk: node sequence v0..vk with v0 = vk and consecutive nodes
/// adjacent in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    nodes: Vec<usize>,
}

impl WalkRecord {
    /// Walk length k (number of steps, one less than the sequence length).
    pub fn length(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The node sequence v0..vk.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Distinct nodes visited, sorted.
    pub fn node_set(&self) -> Vec<usize> {
        let mut set = self.nodes.clone();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Distinct edges traversed, as (u, v) with u < v, sorted.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut set: Vec<(usize, usize)> = self
            .nodes
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// The underlying simple graph: exactly the visited nodes and edges,
    /// relabeled to 0..t in sorted host order.
    pub fn underlying_graph(&self) -> (Graph, Vec<usize>) {
        let nodes = self.node_set();
        let edges = self.edge_set().into_iter().map(|(u, v)| {
            (
                nodes.binary_search(&u).unwrap(),
                nodes.binary_search(&v).unwrap(),
            )
        });
        (
            Graph::from_edges(nodes.len(), edges).expect("walk edges are in range"),
            nodes,
        )
    }
}

/// Depth-first stream of every closed walk of length `k` rooted at `root`.
pub struct ClosedWalks<'g> {
    g: &'g Graph,
    k: usize,
    root: usize,
    path: Vec<usize>,
    cursors: Vec<usize>,
    done: bool,
}

/// Enumerates all closed walks (root, v1, ..., v_{k-1}, root), each yielded
/// exactly once, in depth-first adjacency order.
pub fn enumerate_closed_walks(g: &Graph, k: usize, root: usize) -> Result<ClosedWalks<'_>> {
    if k == 0 {
        return Err(Error::Parameter("walk length must be at least 1".into()));
    }
    if root >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: root,
            node_count: g.node_count(),
        });
    }
    Ok(ClosedWalks {
        g,
        k,
        root,
        path: vec![root],
        cursors: vec![0],
        done: false,
    })
}

impl Iterator for ClosedWalks<'_> {
    type Item = WalkRecord;

    fn next(&mut self) -> Option<WalkRecord> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.path.len() - 1;
            if depth == self.k {
                let closed = *self.path.last().unwrap() == self.root;
                let record = closed.then(|| WalkRecord {
                    nodes: self.path.clone(),
                });
                self.path.pop();
                self.cursors.pop();
                if let Some(record) = record {
                    return Some(record);
                }
                continue;
            }
            let v = *self.path.last().unwrap();
            let cursor = self.cursors.last_mut().unwrap();
            if *cursor < self.g.neighbors(v).len() {
                let u = self.g.neighbors(v)[*cursor];
                *cursor += 1;
                self.path.push(u);
                self.cursors.push(0);
            } else {
                self.path.pop();
                self.cursors.pop();
                if self.path.is_empty() {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Number of closed k-walks in `g_rep`, over all roots, whose edge set is
/// exactly the edge set of `g_rep`.
///
/// Covering every edge of a connected graph with no isolated nodes also
/// covers every node, so the walk's underlying simple graph is `g_rep`
/// itself.
pub fn omega(g_rep: &Graph, k: usize) -> Result<u64> {
    let n = g_rep.node_count();
    let m = g_rep.edge_count();
    if n > k || m > k {
        return Err(Error::Parameter(format!(
            "graph with {n} nodes and {m} edges is out of bounds for walk length {k}"
        )));
    }
    if !g_rep.is_connected() || n < 2 {
        return Err(Error::Parameter(
            "walk coefficients are defined for connected graphs on at least 2 nodes".into(),
        ));
    }
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g_rep
                .bfs_distances(v)
                .unwrap()
                .into_iter()
                .map(|d| d.expect("connected"))
                .collect()
        })
        .collect();
    // Edge index lookup for coverage masks; m <= 7 fits easily in u16.
    let mut edge_index = vec![vec![usize::MAX; n]; n];
    for (idx, &(u, v)) in g_rep.edges().iter().enumerate() {
        edge_index[u][v] = idx;
        edge_index[v][u] = idx;
    }
    let full: u16 = (1 << m) - 1;
    let mut total = 0u64;
    for root in 0..n {
        total += covering_walks(g_rep, &dist, &edge_index, root, root, k, 0, full);
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn covering_walks(
    g: &Graph,
    dist: &[Vec<usize>],
    edge_index: &[Vec<usize>],
    root: usize,
    v: usize,
    steps_left: usize,
    covered: u16,
    full: u16,
) -> u64 {
    if steps_left == 0 {
        return u64::from(v == root && covered == full);
    }
    // Each uncovered edge needs at least one step, and the walk must be able
    // to get back to the root in the remaining steps.
    if ((full & !covered).count_ones() as usize) > steps_left || dist[v][root] > steps_left {
        return 0;
    }
    let mut count = 0;
    for &u in g.neighbors(v) {
        let bit = 1 << edge_index[v][u];
        count += covering_walks(g, dist, edge_index, root, u, steps_left - 1, covered | bit, full);
    }
    count
}

/// Moment-assembly weights: (k, motif key) -> number of covering closed
/// k-walks. Only strictly positive entries are stored, so the key set at
/// each k is exactly the motif set contributing to the k-th moment.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    k_max: usize,
    entries: BTreeMap<(usize, CanonicalKey), u64>,
}

impl CoefficientTable {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn covers(&self, k: usize) -> bool {
        (2..=self.k_max).contains(&k)
    }

    /// Coefficient for (k, key); zero when the motif spans no closed k-walk.
    pub fn coefficient(&self, k: usize, key: &CanonicalKey) -> u64 {
        self.entries.get(&(k, *key)).copied().unwrap_or(0)
    }

    /// Motifs with a positive coefficient at length k.
    pub fn motifs_at(&self, k: usize) -> impl Iterator<Item = (CanonicalKey, u64)> + '_ {
        self.entries
            .range((k, CanonicalKey::MIN)..)
            .take_while(move |((kk, _), _)| *kk == k)
            .map(|((_, key), &w)| (*key, w))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, CanonicalKey, u64)> + '_ {
        self.entries.iter().map(|(&(k, key), &w)| (k, key, w))
    }

    /// Golden-file text: `k=<k> key=<hex> omega=<int>`, sorted by (k, key).
    pub fn golden_text(&self) -> String {
        let mut out = String::new();
        for ((k, key), w) in &self.entries {
            writeln!(out, "k={} key={} omega={}", k, key.hex(), w).unwrap();
        }
        out
    }
}

/// Computes every coefficient for walk lengths 2..=k_max by brute-force
/// enumeration over the atlas.
pub fn build_coefficient_table(k_max: usize) -> Result<CoefficientTable> {
    if !(2..=7).contains(&k_max) {
        return Err(Error::Parameter(format!(
            "coefficient table bound must lie in 2..=7, got {k_max}"
        )));
    }
    let atlas = crate::canon::shared_atlas(k_max)?;
    let mut entries = BTreeMap::new();
    for k in 2..=k_max {
        for member in atlas.members() {
            if member.graph.node_count() > k || member.graph.edge_count() > k {
                continue;
            }
            let w = omega(&member.graph, k)?;
            if w > 0 {
                entries.insert((k, member.key), w);
            }
        }
    }
    Ok(CoefficientTable { k_max, entries })
}

/// Parses the golden-file format back into a table (used to diff shipped
/// tables against re-derived ones).
pub fn parse_coefficient_golden(text: &str) -> Result<CoefficientTable> {
    let mut entries = BTreeMap::new();
    let mut k_max = 2;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut k = None;
        let mut key = None;
        let mut w = None;
        for field in trimmed.split_whitespace() {
            match field.split_once('=') {
                Some(("k", v)) => k = v.parse::<usize>().ok(),
                Some(("key", v)) => key = CanonicalKey::from_hex(v),
                Some(("omega", v)) => w = v.parse::<u64>().ok(),
                _ => {}
            }
        }
        match (k, key, w) {
            (Some(k), Some(key), Some(w)) => {
                k_max = k_max.max(k);
                entries.insert((k, key), w);
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("bad coefficient line {trimmed:?}"),
                })
            }
        }
    }
    Ok(CoefficientTable { k_max, entries })
}
