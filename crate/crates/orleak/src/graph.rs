//! Network topologies and the combinatorial queries the leakage bounds are
//! built on.
//!
//! A topology is a connected undirected graph with dense node ids `0..n-1`.
//! Edges are stored as normalized `(lo, hi)` pairs so that an edge has exactly
//! one identity everywhere in the crate, and [`EdgeSet`] values (eavesdropped
//! sets, active sets, spanning-tree edge sets) compare as plain sets.
//!
//! ```
//! use orleak::graph::UnderlyingGraph;
//!
//! let g = UnderlyingGraph::path(3).unwrap();
//! let d = orleak::graph::all_pairs_distance(&g);
//! assert_eq!(d[0][2], 2);
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Deserialize;
use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

/// Undirected edge, normalized so the smaller endpoint comes first.
pub type Edge = (NodeId, NodeId);

/// Normalize an endpoint pair into canonical `(lo, hi)` form.
pub fn edge(u: NodeId, v: NodeId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge endpoint {0} out of range for {1} nodes")]
    InvalidEndpoint(NodeId, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("node {0} out of range for {1} nodes")]
    UnknownNode(NodeId, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A connected undirected network topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<NodeId>>,
    index: BTreeMap<Edge, usize>,
}

impl UnderlyingGraph {
    /// Build a graph from a node count and an edge list.
    ///
    /// Rejects self-loops, duplicate edges, out-of-range endpoints, and
    /// disconnected topologies.
    pub fn new(
        n: usize,
        raw_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (u, v) in raw_edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::InvalidEndpoint(u.max(v), n));
            }
            let e = edge(u, v);
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            edges.push(e);
        }
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let g = Self {
            n,
            edges,
            adj,
            index,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.n
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.index.contains_key(&edge(u, v))
    }

    /// Position of `e` in the canonical edge order.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.index.get(&edge(e.0, e.1)).copied()
    }

    /// The full edge set `E`.
    pub fn full_edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// Parse a graph from either the edge-list text format (one `u v` pair
    /// per line, `#` starts a comment) or the structured JSON object format
    /// `{"nodes": n, "edges": [[u, v], ...]}`. The format is sniffed from the
    /// first non-whitespace character.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        match text.trim_start().chars().next() {
            Some('{') => Self::parse_json(text),
            Some(_) => Self::parse_edge_list(text),
            None => Err(GraphError::Parse("empty input".into())),
        }
    }

    /// Parse the `{"nodes": n, "edges": [[u, v], ...]}` object format.
    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        #[derive(Deserialize)]
        struct Raw {
            nodes: usize,
            edges: Vec<(NodeId, NodeId)>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Self::new(raw.nodes, raw.edges)
    }

    /// Parse edge-list text. Node count is `1 + max id` seen.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut max_id = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<NodeId, GraphError> {
                tok.ok_or_else(|| {
                    GraphError::Parse(format!("line {}: expected `u v`", lineno + 1))
                })?
                .parse()
                .map_err(|_| GraphError::Parse(format!("line {}: invalid node id", lineno + 1)))
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!(
                    "line {}: trailing tokens",
                    lineno + 1
                )));
            }
            max_id = max_id.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(GraphError::Parse("no edges in edge list".into()));
        }
        Self::new(max_id + 1, edges)
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges)
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle `0 - 1 - ... - n-1 - 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameter("cycle needs n >= 3".into()));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidParameter("star needs n >= 2".into()));
        }
        Self::new(n, (1..n).map(|v| (0, v)))
    }
}

/// A subset of a graph's edges in canonical sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: NodeId, v: NodeId) -> bool {
        self.0.insert(edge(u, v))
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.0.contains(&edge(u, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterate edges in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    /// True when every member is an edge of `g`.
    pub fn is_subset_of(&self, g: &UnderlyingGraph) -> bool {
        self.iter().all(|(u, v)| g.has_edge(u, v))
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    /// Bitmask over `g`'s canonical edge order. Requires `self ⊆ E(g)` and
    /// `m <= 64`.
    pub fn mask(&self, g: &UnderlyingGraph) -> u64 {
        let mut mask = 0u64;
        for e in self.iter() {
            let i = g.edge_index(e).expect("edge set member not in host graph");
            mask |= 1 << i;
        }
        mask
    }

    /// Inverse of [`EdgeSet::mask`].
    pub fn from_mask(g: &UnderlyingGraph, mask: u64) -> EdgeSet {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        EdgeSet(iter.into_iter().map(|(u, v)| edge(u, v)).collect())
    }
}

/// Rooted spanning tree of a host graph, with parent and depth maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    n: usize,
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    depth: Vec<usize>,
    edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Parent of `v`; `None` exactly for the root.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    /// Hop distance from `v` to the root along the tree.
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// The `n - 1` tree edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }
}

/// Deterministic BFS spanning tree rooted at `root`; ties are broken by
/// smallest node id, so the result is a pure function of `(g, root)`.
pub fn spanning_tree(g: &UnderlyingGraph, root: NodeId) -> Result<SpanningTree, GraphError> {
    if root >= g.node_count() {
        return Err(GraphError::UnknownNode(root, g.node_count()));
    }
    let n = g.node_count();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut edges: Vec<Edge> = (0..n)
        .filter_map(|v| parent[v].map(|p| edge(v, p)))
        .collect();
    edges.sort_unstable();
    Ok(SpanningTree {
        n,
        root,
        parent,
        depth,
        edges,
    })
}

/// Hop distances between all node pairs (BFS from every node).
#[allow(clippy::needless_range_loop)]
pub fn all_pairs_distance(g: &UnderlyingGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[s][w] == usize::MAX {
                    dist[s][w] = dist[s][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Connected components of `(V, kept)`, as disjoint sorted blocks covering
/// `V`, ordered by smallest member. `kept` must be a subset of `E`.
pub fn components(g: &UnderlyingGraph, kept: &EdgeSet) -> Vec<Vec<NodeId>> {
    debug_assert!(kept.is_subset_of(g));
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in kept.iter() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<NodeId>> = Vec::new();
    for s in 0..n {
        if block_of[s] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![s];
        block_of[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if block_of[w] == usize::MAX {
                    block_of[w] = id;
                    block.push(w);
                    queue.push_back(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Minimum number of non-`free` edges in an edge set connecting `u` to `v`.
///
/// Computed as a 0/1 shortest path where `free` edges cost 0 and all others
/// cost 1; with `free = ∅` this is the hop distance `d(u, v)`.
pub fn disc(g: &UnderlyingGraph, u: NodeId, v: NodeId, free: &EdgeSet) -> usize {
    debug_assert!(free.is_subset_of(g));
    let n = g.node_count();
    assert!(u < n && v < n, "disc: node out of range");
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut deque = VecDeque::from([u]);
    while let Some(x) = deque.pop_front() {
        let dx = dist[x];
        for &w in g.neighbors(x) {
            let cost = usize::from(!free.contains(x, w));
            if dx + cost < dist[w] {
                dist[w] = dx + cost;
                if cost == 0 {
                    deque.push_front(w);
                } else {
                    deque.push_back(w);
                }
            }
        }
    }
    dist[v]
}

/// All node sets `U` with `u ∈ U`, `|U| <= max_size`, and `G[U]` connected.
///
/// The result is exhaustive and duplicate-free; blocks are sorted and listed
/// in lexicographic order. Rejects `max_size = 0`.
pub fn connected_supersets(
    g: &UnderlyingGraph,
    u: NodeId,
    max_size: usize,
) -> Result<Vec<Vec<NodeId>>, GraphError> {
    if max_size == 0 {
        return Err(GraphError::InvalidParameter(
            "max_size must be positive".into(),
        ));
    }
    if u >= g.node_count() {
        return Err(GraphError::UnknownNode(u, g.node_count()));
    }
    let max_size = max_size.min(g.node_count());
    let mut found: BTreeSet<Vec<NodeId>> = BTreeSet::new();
    let mut stack = vec![vec![u]];
    found.insert(vec![u]);
    while let Some(set) = stack.pop() {
        if set.len() == max_size {
            continue;
        }
        for &x in &set {
            for &w in g.neighbors(x) {
                if set.binary_search(&w).is_ok() {
                    continue;
                }
                let mut next = set.clone();
                let pos = next.binary_search(&w).unwrap_err();
                next.insert(pos, w);
                if found.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    fn p3() -> UnderlyingGraph {
        UnderlyingGraph::path(3).unwrap()
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert_eq!(UnderlyingGraph::new(0, []), Err(GraphError::Empty));
        assert_eq!(
            UnderlyingGraph::new(2, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            UnderlyingGraph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            UnderlyingGraph::new(2, [(0, 2)]),
            Err(GraphError::InvalidEndpoint(2, 2))
        );
        assert_eq!(
            UnderlyingGraph::new(3, [(0, 1)]),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn distances_path_and_complete() {
        let d = all_pairs_distance(&p3());
        assert_eq!(d[0][2], 2);
        assert_eq!(d[0][0], 0);
        let k4 = UnderlyingGraph::complete(4).unwrap();
        let d = all_pairs_distance(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d[u][v], usize::from(u != v));
            }
        }
        // symmetry + triangle inequality on a less regular graph
        let g = UnderlyingGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        let d = all_pairs_distance(&g);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d[u][v], d[v][u]);
                for w in 0..5 {
                    assert!(d[u][v] <= d[u][w] + d[w][v]);
                }
            }
        }
    }

    #[test]
    fn components_blocks() {
        let star = UnderlyingGraph::star(4).unwrap();
        let mut kept = star.full_edge_set();
        kept = kept.difference(&[(0usize, 3usize)].into_iter().collect());
        assert_eq!(components(&star, &kept), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(components(&star, &star.full_edge_set()).len(), 1);
        assert_eq!(components(&star, &EdgeSet::new()).len(), 4);
    }

    /// Brute-force oracle for `disc`: minimize `|F - free|` over every edge
    /// subset `F` that connects `u` to `v`.
    fn disc_oracle(g: &UnderlyingGraph, u: NodeId, v: NodeId, free: &EdgeSet) -> usize {
        let m = g.edge_count();
        let mut best = usize::MAX;
        for mask in 0..1u64 << m {
            let f = EdgeSet::from_mask(g, mask);
            let blocks = components(g, &f);
            let connected = blocks.iter().any(|b| b.contains(&u) && b.contains(&v));
            if connected {
                best = best.min(f.difference(free).len());
            }
        }
        best
    }

    #[test]
    fn disc_matches_definition_on_p3() {
        let g = p3();
        let free: EdgeSet = [(0usize, 1usize)].into_iter().collect();
        assert_eq!(disc(&g, 0, 2, &free), 1);
        assert_eq!(disc_oracle(&g, 0, 2, &free), 1);
        assert_eq!(disc(&g, 1, 1, &free), 0);
        let d = all_pairs_distance(&g);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(disc(&g, u, v, &EdgeSet::new()), d[u][v]);
            }
        }
    }

    #[test]
    fn disc_matches_oracle_exhaustively() {
        let graphs = [
            UnderlyingGraph::path(4).unwrap(),
            UnderlyingGraph::star(5).unwrap(),
            UnderlyingGraph::cycle(5).unwrap(),
            UnderlyingGraph::complete(4).unwrap(),
            UnderlyingGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap(),
        ];
        for g in &graphs {
            let m = g.edge_count();
            let all_free: Vec<EdgeSet> = (0..1u64 << m)
                .map(|mask| EdgeSet::from_mask(g, mask))
                .collect();
            for u in 0..g.node_count() {
                for v in 0..g.node_count() {
                    for free in &all_free {
                        assert_eq!(
                            disc(g, u, v, free),
                            disc_oracle(g, u, v, free),
                            "disc mismatch at ({u},{v}) free={free:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disc_monotone_and_bounded_by_distance() {
        let g = UnderlyingGraph::cycle(5).unwrap();
        let d = all_pairs_distance(&g);
        let m = g.edge_count();
        for mask in 0..1u64 << m {
            let free = EdgeSet::from_mask(&g, mask);
            for u in 0..5 {
                for v in 0..5 {
                    let base = disc(&g, u, v, &free);
                    assert!(base <= d[u][v]);
                    // growing the free set can only lower the cost
                    for extra in 0..m {
                        let bigger = EdgeSet::from_mask(&g, mask | 1 << extra);
                        assert!(disc(&g, u, v, &bigger) <= base);
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_tree_deterministic_tie_break() {
        let k4 = UnderlyingGraph::complete(4).unwrap();
        let t = spanning_tree(&k4, 0).unwrap();
        for v in 1..4 {
            assert_eq!(t.parent(v), Some(0));
            assert_eq!(t.depth(v), 1);
        }
        let p = p3();
        let t = spanning_tree(&p, 0).unwrap();
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.edges(), p.edges());

        let c4 = UnderlyingGraph::cycle(4).unwrap();
        let t = spanning_tree(&c4, 0).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(3), Some(0));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.depth(2), 2);
    }

    #[test]
    fn supersets_enumeration() {
        let star = UnderlyingGraph::star(4).unwrap();
        let got = connected_supersets(&star, 0, 2).unwrap();
        assert_eq!(got, vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]]);
        let p = p3();
        assert_eq!(
            connected_supersets(&p, 0, 3).unwrap(),
            vec![vec![0], vec![0, 1], vec![0, 1, 2]]
        );
        assert_eq!(connected_supersets(&p, 1, 1).unwrap(), vec![vec![1]]);
        assert!(connected_supersets(&p, 0, 0).is_err());
    }

    #[test]
    fn supersets_match_subset_filter_oracle() {
        let graphs = [
            UnderlyingGraph::path(5).unwrap(),
            UnderlyingGraph::cycle(5).unwrap(),
            UnderlyingGraph::complete(5).unwrap(),
            UnderlyingGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap(),
        ];
        for g in &graphs {
            let n = g.node_count();
            for u in 0..n {
                for max_size in 1..=n {
                    let fast: BTreeSet<Vec<NodeId>> = connected_supersets(g, u, max_size)
                        .unwrap()
                        .into_iter()
                        .collect();
                    // oracle: filter every vertex subset containing u
                    let mut slow = BTreeSet::new();
                    for mask in 0..1u32 << n {
                        if mask >> u & 1 == 0 {
                            continue;
                        }
                        let set: Vec<NodeId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                        if set.len() > max_size {
                            continue;
                        }
                        let kept: EdgeSet = g
                            .edges()
                            .iter()
                            .copied()
                            .filter(|&(a, b)| set.contains(&a) && set.contains(&b))
                            .collect();
                        // induced subgraph connectivity via components of (V, kept)
                        let blocks = components(g, &kept);
                        let block = blocks.iter().find(|b| b.contains(&u)).unwrap();
                        if set.iter().all(|v| block.contains(v)) {
                            slow.insert(set);
                        }
                    }
                    assert_eq!(fast, slow, "superset mismatch at u={u} max={max_size}");
                }
            }
        }
    }

    #[test]
    fn parses_both_formats() {
        let g = UnderlyingGraph::parse("0 1\n# comment\n1 2\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let g2 = UnderlyingGraph::parse(r#"{"nodes": 3, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g, g2);
        assert!(UnderlyingGraph::parse("0 1 junk\n").is_err());
        assert!(UnderlyingGraph::parse("").is_err());
        assert!(UnderlyingGraph::parse(r#"{"nodes": 3, "edges": [[0,1]]}"#).is_err());
    }
}
