//! Canonical labeling of small graphs and the atlas of non-isomorphic
//! connected graphs with at most k nodes and k edges.
//!
//! Canonicalization is exact: iterative color refinement narrows the node
//! classes, then every class-respecting relabeling is tried and the
//! lexicographically smallest adjacency encoding wins. With at most
//! [`MAX_CANON_NODES`] nodes the search space stays tiny.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest node count the canonical labeling accepts.
pub const MAX_CANON_NODES: usize = 8;

/// Order-independent fingerprint of a small unlabeled graph: equal keys iff
/// the graphs are isomorphic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    nodes: u8,
    bits: u32,
}

impl CanonicalKey {
    /// Range endpoints for ordered scans keyed by (k, key).
    pub(crate) const MIN: CanonicalKey = CanonicalKey { nodes: 0, bits: 0 };

    pub fn node_count(&self) -> usize {
        self.nodes as usize
    }

    /// Single-word encoding: node count in the top nibble, canonical edge
    /// bits below. Unique because C(8,2) = 28 pair bits fit under the nibble.
    pub fn packed(&self) -> u32 {
        (u32::from(self.nodes) << 28) | self.bits
    }

    pub fn hex(&self) -> String {
        format!("{:08x}", self.packed())
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let packed = u32::from_str_radix(s, 16).ok()?;
        let nodes = (packed >> 28) as u8;
        let bits = packed & ((1 << 28) - 1);
        (usize::from(nodes) <= MAX_CANON_NODES).then_some(CanonicalKey { nodes, bits })
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

/// Bit index of the node pair (i, j), i < j, in a graph on `n` nodes; pair
/// (0, 1) gets the most significant position so that a smaller integer means
/// a lexicographically smaller adjacency sequence.
pub(crate) fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    debug_assert!(i < j && j < n);
    let m = n * (n - 1) / 2;
    let idx = i * (2 * n - i - 1) / 2 + (j - i - 1);
    (m - 1 - idx) as u32
}

fn adjacency_masks(g: &Graph) -> Vec<u8> {
    let n = g.node_count();
    let mut masks = vec![0u8; n];
    for &(u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

/// Iterative refinement: nodes get colors by (own color, sorted neighbor
/// colors) until the partition stabilizes. Color values rank invariant
/// signatures, so the resulting class order is itself a graph invariant.
fn refine_colors(masks: &[u8]) -> Vec<u32> {
    let n = masks.len();
    let mut colors = vec![0u32; n];
    let mut class_count = 1usize;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = (0..n)
                    .filter(|&u| masks[v] >> u & 1 == 1)
                    .map(|u| colors[u])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ranked: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        ranked.sort();
        ranked.dedup();
        if ranked.len() == class_count {
            return colors;
        }
        class_count = ranked.len();
        for v in 0..n {
            colors[v] = ranked.binary_search(&&sigs[v]).unwrap() as u32;
        }
    }
}

fn encode(perm: &[usize], masks: &[u8]) -> u32 {
    let n = perm.len();
    let mut bits = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if masks[perm[i]] >> perm[j] & 1 == 1 {
                bits |= 1 << pair_bit(n, i, j);
            }
        }
    }
    bits
}

/// Canonical fingerprint of `g`, invariant under node relabeling.
pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    let n = g.node_count();
    if n > MAX_CANON_NODES {
        return Err(Error::CanonBound {
            nodes: n,
            bound: MAX_CANON_NODES,
        });
    }
    if n <= 1 {
        return Ok(CanonicalKey {
            nodes: n as u8,
            bits: 0,
        });
    }
    let masks = adjacency_masks(g);
    let colors = refine_colors(&masks);
    let class_count = colors.iter().max().unwrap() + 1;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); class_count as usize];
    for v in 0..n {
        classes[colors[v] as usize].push(v);
    }

    let mut best = u32::MAX;
    let mut perm = Vec::with_capacity(n);
    search_classes(&classes, 0, &mut perm, &masks, &mut best);
    Ok(CanonicalKey {
        nodes: n as u8,
        bits: best,
    })
}

fn search_classes(
    classes: &[Vec<usize>],
    depth: usize,
    perm: &mut Vec<usize>,
    masks: &[u8],
    best: &mut u32,
) {
    if depth == classes.len() {
        *best = (*best).min(encode(perm, masks));
        return;
    }
    let class = &classes[depth];
    for ordering in class.iter().copied().permutations(class.len()) {
        let before = perm.len();
        perm.extend(ordering);
        search_classes(classes, depth + 1, perm, masks, best);
        perm.truncate(before);
    }
}

/// True iff the two graphs are related by a node relabeling.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        // Still enforce the size bound the contract promises to check.
        for g in [a, b] {
            if g.node_count() > MAX_CANON_NODES {
                return Err(Error::CanonBound {
                    nodes: g.node_count(),
                    bound: MAX_CANON_NODES,
                });
            }
        }
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// One entry of the atlas: a canonical key and a representative graph.
#[derive(Clone, Debug)]
pub struct AtlasMember {
    pub id: usize,
    pub key: CanonicalKey,
    pub graph: Graph,
}

/// Every connected non-isomorphic graph with 2..=k nodes and at most k
/// edges, sorted by (node count, edge count, key).
#[derive(Clone, Debug)]
pub struct Atlas {
    k: usize,
    members: Vec<AtlasMember>,
    index: HashMap<CanonicalKey, usize>,
}

impl Atlas {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[AtlasMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&AtlasMember> {
        self.index.get(key).map(|&i| &self.members[i])
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index.contains_key(key)
    }

    /// Text catalog, one member per line.
    pub fn catalog(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            let edges = m
                .graph
                .edges()
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .join(",");
            writeln!(
                out,
                "k={} id={} n={} edges={} key={}",
                self.k,
                m.id,
                m.graph.node_count(),
                edges,
                m.key.hex()
            )
            .unwrap();
        }
        out
    }
}

/// Enumerates the atlas for 2 <= k <= 7 by growing canonical representatives
/// one edge or one pendant node at a time, deduplicating by key.
pub fn build_atlas(k: usize) -> Result<Atlas> {
    if !(2..=7).contains(&k) {
        return Err(Error::Parameter(format!(
            "atlas bound must lie in 2..=7, got {k}"
        )));
    }
    let seed = Graph::from_edges(2, [(0, 1)]).expect("K2 is valid");
    let mut found: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    found.insert(canonical_key(&seed)?, seed.clone());
    let mut queue = VecDeque::from([seed]);
    while let Some(g) = queue.pop_front() {
        if g.edge_count() + 1 > k {
            continue;
        }
        let n = g.node_count();
        let mut children = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !g.has_edge(u, v) {
                    let edges = g.edges().iter().copied().chain([(u, v)]);
                    children.push(Graph::from_edges(n, edges).unwrap());
                }
            }
        }
        if n < k {
            for u in 0..n {
                let edges = g.edges().iter().copied().chain([(u, n)]);
                children.push(Graph::from_edges(n + 1, edges).unwrap());
            }
        }
        for child in children {
            let key = canonical_key(&child)?;
            found.entry(key).or_insert_with(|| {
                queue.push_back(child.clone());
                child
            });
        }
    }
    let mut items: Vec<(CanonicalKey, Graph)> = found.into_iter().collect();
    items.sort_by_key(|(key, g)| (g.node_count(), g.edge_count(), *key));
    let members: Vec<AtlasMember> = items
        .into_iter()
        .enumerate()
        .map(|(id, (key, graph))| AtlasMember { id, key, graph })
        .collect();
    let index = members.iter().map(|m| (m.key, m.id)).collect();
    Ok(Atlas { k, members, index })
}

/// Process-wide cached atlases; they are immutable and cheap to share.
pub fn shared_atlas(k: usize) -> Result<&'static Atlas> {
    static CACHE: [OnceLock<Atlas>; 8] = [const { OnceLock::new() }; 8];
    if !(2..=7).contains(&k) {
        return Err(Error::Parameter(format!(
            "atlas bound must lie in 2..=7, got {k}"
        )));
    }
    Ok(CACHE[k].get_or_init(|| build_atlas(k).expect("bound already validated")))
}
