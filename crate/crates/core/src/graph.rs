//! Undirected simple graphs with dense 0-based node labels, plus the basic
//! traversal primitives everything else is built on: breadth-first distances,
//! radius-r neighborhoods, induced subgraphs and diameters.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Labeled undirected simple graph backed by sorted adjacency lists.
///
/// No self-loops, no parallel edges. Immutable after construction, so shared
/// reads from multiple threads are safe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    /// Sorted neighbor lists, one per node.
    adjacency: Vec<Vec<usize>>,
    /// Edge set as (u, v) pairs with u < v, sorted lexicographically.
    edges: Vec<(usize, usize)>,
}

/// Result of a diameter computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    /// Some pair of nodes has no connecting walk.
    Disconnected,
}

impl Graph {
    /// Graph on `node_count` nodes with no edges.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from unordered endpoint pairs; duplicates collapse.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Parameter(format!("self-loop at node {u}")));
            }
            let e = (u.min(v), u.max(v));
            if e.1 >= node_count {
                return Err(Error::NodeOutOfRange {
                    node: e.1,
                    node_count,
                });
            }
            set.insert(e);
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: set.into_iter().collect(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        }
    }

    /// BFS distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_node(source)?;
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in self.neighbors(v) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        Ok(dist)
    }

    /// All nodes within distance `r` of `v`, including `v` itself.
    pub fn neighborhood(&self, v: usize, r: usize) -> Result<NodeSubset<'_>> {
        let dist = self.bfs_distances(v)?;
        let nodes = (0..self.node_count())
            .filter(|&w| matches!(dist[w], Some(d) if d <= r))
            .collect();
        Ok(NodeSubset { host: self, nodes })
    }

    /// Maximum distance over all node pairs.
    pub fn diameter(&self) -> Result<Diameter> {
        if self.node_count() == 0 {
            return Err(Error::Parameter("diameter of the empty graph".into()));
        }
        let mut max = 0;
        for v in 0..self.node_count() {
            for d in self.bfs_distances(v)? {
                match d {
                    Some(d) => max = max.max(d),
                    None => return Ok(Diameter::Disconnected),
                }
            }
        }
        Ok(Diameter::Finite(max))
    }

    /// Largest BFS distance from `v`; `None` if some node is unreachable.
    pub fn eccentricity(&self, v: usize) -> Result<Option<usize>> {
        let dist = self.bfs_distances(v)?;
        let mut max = 0;
        for d in dist {
            match d {
                Some(d) => max = max.max(d),
                None => return Ok(None),
            }
        }
        Ok(Some(max))
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() <= 1 {
            return true;
        }
        self.bfs_distances(0)
            .expect("node 0 exists")
            .iter()
            .all(|d| d.is_some())
    }

    /// FNV-1a hash of the node count and edge list; identifies the host a
    /// derived census belongs to.
    pub fn fingerprint(&self) -> u64 {
        let mut hash = 0xcbf29ce484222325u64;
        let mut mix = |value: u64| {
            for byte in value.to_le_bytes() {
                hash ^= u64::from(byte);
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        mix(self.node_count() as u64);
        for &(u, v) in &self.edges {
            mix(u as u64);
            mix(v as u64);
        }
        hash
    }

    /// Relabels nodes: `perm[old]` is the new label of node `old`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.node_count() {
            return Err(Error::Parameter(format!(
                "permutation has {} entries for {} nodes",
                perm.len(),
                self.node_count()
            )));
        }
        Graph::from_edges(
            self.node_count(),
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
    }

    /// Serializes to the edge-list text format: an `n <N>` header followed by
    /// one `u v` line per edge with u < v, sorted, LF-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.node_count()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// Parses the edge-list text format.
///
/// Lines hold whitespace-separated endpoint pairs; `#` lines and blank lines
/// are skipped. An optional leading `n <N>` line fixes the node count,
/// otherwise it is one past the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_node = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if !edges.is_empty() || declared.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "header line must precede all edges".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    msg: "header must be `n <count>`".into(),
                });
            }
            let n = tokens[1].parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad node count {:?}", tokens[1]),
            })?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected two endpoints, found {}", tokens.len()),
            });
        }
        let mut pair = [0usize; 2];
        for (slot, token) in pair.iter_mut().zip(&tokens) {
            let value = token.parse::<i64>().map_err(|_| Error::Parse {
                line,
                msg: format!("non-integer token {token:?}"),
            })?;
            if value < 0 {
                return Err(Error::Parse {
                    line,
                    msg: format!("negative node index {value}"),
                });
            }
            *slot = value as usize;
        }
        let (u, v) = (pair[0], pair[1]);
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop {u} {v}"),
            });
        }
        max_node = max_node.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let node_count = match (declared, max_node) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Graph::from_edges(node_count, edges)
}

/// Sorted subset of the nodes of a host graph.
#[derive(Clone, Debug)]
pub struct NodeSubset<'g> {
    host: &'g Graph,
    nodes: Vec<usize>,
}

impl<'g> NodeSubset<'g> {
    pub fn new(host: &'g Graph, mut nodes: Vec<usize>) -> Result<Self> {
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&last) = nodes.last() {
            if last >= host.node_count() {
                return Err(Error::NodeOutOfRange {
                    node: last,
                    node_count: host.node_count(),
                });
            }
        }
        Ok(NodeSubset { host, nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Subgraph induced on this subset, plus the map from new indices back to
    /// host labels (the sorted-order bijection).
    pub fn induced(&self) -> (Graph, Vec<usize>) {
        let mut edges = Vec::new();
        for (i, &u) in self.nodes.iter().enumerate() {
            for &v in self.host.neighbors(u) {
                if v > u {
                    if let Ok(j) = self.nodes.binary_search(&v) {
                        edges.push((i, j));
                    }
                }
            }
        }
        let g = Graph::from_edges(self.nodes.len(), edges)
            .expect("induced edges are in range by construction");
        (g, self.nodes.clone())
    }
}
