//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is kept as sorted neighbor lists so that every traversal in the
//! crate visits vertices in a reproducible order. Graphs are immutable once
//! built; derived graphs (induced subgraphs, vertex deletions) are new values
//! carrying an index map back to their parent.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Errors raised while building or decoding a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Builds a graph from an edge list. Pairs are normalized to `(min, max)`;
    /// a pair appearing twice (in either orientation) is rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: seen.len() })
    }

    /// Same as [`Graph::build`] but silently drops repeated edges.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let list: Vec<_> = set.into_iter().collect();
        Self::build(n, &list)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Partition of the vertex set into connected components. Parts are
    /// sorted internally and ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut part = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        part.push(w);
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `keep`. The returned map sends each new index to
    /// the original vertex; new indices follow the order of `keep`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if j > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        (Graph { adj, m }, keep.to_vec())
    }

    /// Deletes `remove` and returns the remaining graph with its index map.
    pub fn without_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Graph::build(self.n(), &edges).expect("permutation of a simple graph is simple")
    }

    /// Returns a copy with one extra vertex joined to `nbrs`.
    pub fn with_new_vertex(&self, nbrs: &[usize]) -> Graph {
        let n = self.n();
        let mut edges = self.edges();
        edges.extend(nbrs.iter().map(|&u| (u, n)));
        Graph::build(n + 1, &edges).expect("new vertex keeps the graph simple")
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.adj.iter().all(|l| l.len() == 2)
    }

    /// Walks a connected 2-regular graph starting at vertex 0.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if !self.is_cycle() {
            return None;
        }
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = self.adj[0][0];
        while cur != 0 {
            order.push(cur);
            let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// graph6 encoding (no `>>graph6<<` header).
    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 0x3f) as u8 + 63);
            }
        } else {
            out.push(126);
            out.push(126);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 0x3f) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Self, GraphError> {
        let s = text.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::Graph6("empty input".into()));
        }
        let mut vals = Vec::with_capacity(bytes.len());
        for &b in bytes {
            if !(63..=126).contains(&b) {
                return Err(GraphError::Graph6(format!("byte {b:#04x} outside 63..=126")));
            }
            vals.push(b - 63);
        }
        let (n, body) = if vals[0] < 63 {
            (vals[0] as usize, &vals[1..])
        } else if vals.len() >= 4 && vals[1] < 63 {
            let n = vals[1..4].iter().fold(0usize, |acc, &x| (acc << 6) | x as usize);
            (n, &vals[4..])
        } else if vals.len() >= 8 && vals[1] == 63 {
            let n = vals[2..8].iter().fold(0usize, |acc, &x| (acc << 6) | x as usize);
            (n, &vals[8..])
        } else {
            return Err(GraphError::Graph6("truncated size header".into()));
        };
        let nbits = n * n.saturating_sub(1) / 2;
        let expect = nbits.div_ceil(6);
        if body.len() != expect {
            return Err(GraphError::Graph6(format!("expected {expect} data bytes for n={n}, found {}", body.len())));
        }
        let pad = expect * 6 - nbits;
        if pad > 0 && body[expect - 1] & ((1u8 << pad) - 1) != 0 {
            return Err(GraphError::Graph6("nonzero padding bits".into()));
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6];
                if (byte >> (5 - k % 6)) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::build(n, &edges)
    }

    /// Plain text: first line `n m`, then one `u v` per edge.
    pub fn to_edge_list_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::EdgeList("missing header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(GraphError::EdgeList(format!("header says {m} edges, found {}", edges.len())));
        }
        Graph::build(n, &edges)
    }

    /// Accepts either format; a first line made of two integers selects the
    /// edge-list reader.
    pub fn parse_auto(text: &str) -> Result<Self, GraphError> {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        if parse_pair(first).is_ok() {
            Graph::from_edge_list_text(text)
        } else {
            Graph::from_graph6(first)
        }
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let bad = || GraphError::EdgeList(format!("expected two integers, got {line:?}"));
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}
