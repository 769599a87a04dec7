//! Ears and ear-chains of 2-connected outerplanar graphs, and the search for
//! one that is good for a given anchor vertex.
//!
//! An ear is a cycle `u_1 u_2 … u_r u_1` (`r >= 3`) whose interior vertices
//! `u_2 … u_{r-1}` have degree 2; `u_1 u_r` is its root edge. An ear-chain is
//! a run of ears whose root edges form a path `v_1 … v_s` (`s >= 3`) closed by
//! the edge `v_1 v_s`, with every inner `v_i` of degree 4.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::Graph;

use super::outerplanar::OuterEmbedding;
use super::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ear {
    /// `(u_1, u_r)`.
    pub root: (usize, usize),
    /// `u_2 … u_{r-1}`, ordered from the `u_1` side.
    pub interior: Vec<usize>,
}

impl Ear {
    pub fn first(&self) -> usize {
        self.root.0
    }

    pub fn last(&self) -> usize {
        self.root.1
    }

    /// Number of vertices `r`.
    pub fn order(&self) -> usize {
        self.interior.len() + 2
    }

    /// `u_1, u_2, …, u_r`.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.order());
        v.push(self.root.0);
        v.extend_from_slice(&self.interior);
        v.push(self.root.1);
        v
    }

    pub fn reversed(&self) -> Ear {
        let mut interior = self.interior.clone();
        interior.reverse();
        Ear { root: (self.root.1, self.root.0), interior }
    }

    pub fn root_key(&self) -> (usize, usize) {
        (self.root.0.min(self.root.1), self.root.0.max(self.root.1))
    }

    pub fn map_vertices(&self, map: &[usize]) -> Ear {
        Ear { root: (map[self.root.0], map[self.root.1]), interior: self.interior.iter().map(|&v| map[v]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EarChain {
    /// `v_1 … v_s`.
    pub path: Vec<usize>,
    /// `H_1 … H_{s-1}`; `ears[i].root == (path[i], path[i + 1])`.
    pub ears: Vec<Ear>,
}

impl EarChain {
    pub fn s(&self) -> usize {
        self.path.len()
    }

    /// `(v_1, v_s)`.
    pub fn root(&self) -> (usize, usize) {
        (self.path[0], self.path[self.path.len() - 1])
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.path[0]];
        for ear in &self.ears {
            out.extend_from_slice(&ear.interior);
            out.push(ear.last());
        }
        out
    }

    pub fn reversed(&self) -> EarChain {
        let mut path = self.path.clone();
        path.reverse();
        let ears = self.ears.iter().rev().map(Ear::reversed).collect();
        EarChain { path, ears }
    }

    pub fn map_vertices(&self, map: &[usize]) -> EarChain {
        EarChain {
            path: self.path.iter().map(|&v| map[v]).collect(),
            ears: self.ears.iter().map(|e| e.map_vertices(map)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EarStructure {
    /// Oriented so that `u_r` is the good endpoint: `d(u_r) = 3` and the
    /// anchor is not in `V(H) \ {u_1}`.
    Ear(Ear),
    /// The anchor is not in `V(H) \ {v_1, v_s}`.
    Chain(EarChain),
}

impl EarStructure {
    pub fn map_vertices(&self, map: &[usize]) -> EarStructure {
        match self {
            EarStructure::Ear(e) => EarStructure::Ear(e.map_vertices(map)),
            EarStructure::Chain(c) => EarStructure::Chain(c.map_vertices(map)),
        }
    }
}

/// All ears of a 2-connected outerplanar non-cycle graph, read off the
/// outer cycle as maximal runs of degree-2 vertices whose two ends are
/// adjacent. Each ear is oriented along the outer cycle.
pub fn ears(g: &Graph, emb: &OuterEmbedding) -> Vec<Ear> {
    let outer = &emb.outer_cycle;
    let k = outer.len();
    let Some(start) = (0..k).find(|&i| g.degree(outer[i]) >= 3) else {
        return Vec::new();
    };
    let mut anchors: Vec<usize> = (start..start + k).filter(|&i| g.degree(outer[i % k]) >= 3).collect();
    anchors.push(start + k);
    let mut out = Vec::new();
    for w in anchors.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q - p < 2 {
            continue;
        }
        let (a, b) = (outer[p % k], outer[q % k]);
        if a != b && g.has_edge(a, b) {
            let interior = (p + 1..q).map(|i| outer[i % k]).collect();
            out.push(Ear { root: (a, b), interior });
        }
    }
    out
}

/// Finds an ear or ear-chain that is good for `x`.
///
/// The search mirrors the classical existence argument. Let `E1` be the set
/// of root edges and `G1` the graph they span (maximum degree 2).
///
/// * Every chord is a root edge: if `G1` is a cycle, the ears on all of its
///   edges but the one whose ear holds `x` form a good chain; otherwise an end
///   of a path of `G1` gives an ear whose free endpoint has degree 3.
/// * Some chord `uv` is not a root edge: take such a chord cutting off the
///   smallest arc that avoids `x` in its interior. The root edges inside that
///   arc either form a `u`–`v` path (a good chain) or have a path end away
///   from `u` and `v` (a good ear).
///
/// Among equally valid candidates, the lexicographically smallest root edge
/// wins, then the shorter interior.
pub fn find_good_ear_or_chain(g: &Graph, emb: &OuterEmbedding, x: usize) -> Result<EarStructure, StructureError> {
    let n = g.n();
    if x >= n {
        return Err(StructureError::VertexOutOfRange(x));
    }
    if n < 4 {
        return Err(StructureError::TooSmall(n));
    }
    if g.is_cycle() {
        return Err(StructureError::IsCycle);
    }
    if emb.outer_cycle.len() != n || (0..n).any(|v| g.degree(v) < 2) {
        return Err(StructureError::NotTwoConnected);
    }
    let all_ears = ears(g, emb);
    let pos = emb.positions(n);
    let outer = &emb.outer_cycle;

    let mut by_root: BTreeMap<(usize, usize), Vec<&Ear>> = BTreeMap::new();
    for e in &all_ears {
        by_root.entry(e.root_key()).or_default().push(e);
    }
    let e1: BTreeSet<(usize, usize)> = by_root.keys().copied().collect();
    let mut g1: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &e1 {
        g1.entry(a).or_default().push(b);
        g1.entry(b).or_default().push(a);
    }

    let extra: Vec<(usize, usize)> = emb.chords.iter().copied().filter(|c| !e1.contains(c)).collect();

    let found = if extra.is_empty() {
        let is_cycle = g1.len() >= 3 && g1.values().all(|l| l.len() == 2) && spans_connected(&g1);
        if is_cycle {
            chain_from_root_cycle(g, &g1, &by_root, &pos, x)
        } else {
            path_end_ear(&g1, &by_root, x, |_| true)
        }
    } else {
        // Smallest arc cut off by a non-root chord with x outside its interior.
        let k = n;
        let mut best: Option<(usize, (usize, usize), Vec<usize>)> = None;
        for &(u, v) in &extra {
            for (a, b) in [(u, v), (v, u)] {
                let len = (pos[b] + k - pos[a]) % k + 1;
                let arc: Vec<usize> = (0..len).map(|i| outer[(pos[a] + i) % k]).collect();
                if arc[1..len - 1].contains(&x) {
                    continue;
                }
                let cand = (len, (a, b), arc);
                if best.as_ref().is_none_or(|bst| (cand.0, cand.1) < (bst.0, bst.1)) {
                    best = Some(cand);
                }
            }
        }
        let (_, (u, v), arc) = best.ok_or(StructureError::NoGoodStructure)?;
        let inside: BTreeSet<usize> = arc.iter().copied().collect();
        let mut g2: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &e1 {
            if inside.contains(&a) && inside.contains(&b) {
                g2.entry(a).or_default().push(b);
                g2.entry(b).or_default().push(a);
            }
        }
        let interior_ok = |e: &Ear| e.interior.iter().all(|w| inside.contains(w) && *w != u && *w != v);
        if let Some(path) = uv_path(&g2, u, v) {
            let mut ears = Vec::with_capacity(path.len() - 1);
            for w in path.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                let ear = by_root
                    .get(&key)
                    .and_then(|list| list.iter().find(|e| interior_ok(e)))
                    .ok_or(StructureError::NoGoodStructure)?;
                ears.push(if ear.first() == w[0] { (*ear).clone() } else { ear.reversed() });
            }
            Some(EarStructure::Chain(EarChain { path, ears }))
        } else {
            let restricted: BTreeMap<(usize, usize), Vec<&Ear>> = by_root
                .iter()
                .filter(|(k, _)| g2.contains_key(&k.0) && g2.contains_key(&k.1))
                .map(|(k, list)| (*k, list.iter().copied().filter(|e| interior_ok(e)).collect()))
                .collect();
            path_end_ear(&g2, &restricted, x, |w| w != u && w != v)
        }
    };

    let s = found.ok_or(StructureError::NoGoodStructure)?;
    if !is_good(g, &s, x) {
        return Err(StructureError::NoGoodStructure);
    }
    Ok(s)
}

fn spans_connected(adj: &BTreeMap<usize, Vec<usize>>) -> bool {
    let Some((&start, _)) = adj.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

/// The `u`–`v` path when `adj` is exactly such a path.
fn uv_path(adj: &BTreeMap<usize, Vec<usize>>, u: usize, v: usize) -> Option<Vec<usize>> {
    if adj.get(&u)?.len() != 1 || adj.get(&v)?.len() != 1 {
        return None;
    }
    let mut path = vec![u];
    let mut prev = usize::MAX;
    let mut cur = u;
    while cur != v {
        let next = adj[&cur].iter().copied().find(|&w| w != prev)?;
        if adj[&next].len() > 2 || path.contains(&next) {
            return None;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    (path.len() == adj.len()).then_some(path)
}

/// Root-edge graph is a cycle: drop the ear holding `x` and chain the rest.
fn chain_from_root_cycle(
    g: &Graph,
    g1: &BTreeMap<usize, Vec<usize>>,
    by_root: &BTreeMap<(usize, usize), Vec<&Ear>>,
    pos: &[usize],
    x: usize,
) -> Option<EarStructure> {
    let mut vs: Vec<usize> = g1.keys().copied().collect();
    vs.sort_by_key(|&v| pos[v]);
    let l = vs.len();
    let mut ring = Vec::with_capacity(l);
    for i in 0..l {
        let (a, b) = (vs[i], vs[(i + 1) % l]);
        let ear = by_root.get(&(a.min(b), a.max(b)))?.first()?;
        ring.push(if ear.first() == a { (*ear).clone() } else { ear.reversed() });
    }
    let holder = (0..l).find(|&i| ring[i].vertices().contains(&x))?;
    let mut path = Vec::with_capacity(l);
    let mut ears = Vec::with_capacity(l - 1);
    for j in 1..l {
        let e = &ring[(holder + j) % l];
        if path.is_empty() {
            path.push(e.first());
        }
        path.push(e.last());
        ears.push(e.clone());
    }
    let chain = EarChain { path, ears };
    debug_assert!(chain.path[1..chain.s() - 1].iter().all(|&v| g.degree(v) == 4));
    Some(EarStructure::Chain(chain))
}

/// Ear on a root edge `w v` where `v` is an end of a root-edge path, oriented
/// with `u_r = v`, and good for `x`.
fn path_end_ear(
    adj: &BTreeMap<usize, Vec<usize>>,
    by_root: &BTreeMap<(usize, usize), Vec<&Ear>>,
    x: usize,
    allowed_end: impl Fn(usize) -> bool,
) -> Option<EarStructure> {
    let mut best: Option<((usize, usize), usize, usize, Ear)> = None;
    for (&v, nbrs) in adj {
        if nbrs.len() != 1 || !allowed_end(v) {
            continue;
        }
        let w = nbrs[0];
        let key = (v.min(w), v.max(w));
        for ear in by_root.get(&key).into_iter().flatten() {
            let oriented = if ear.last() == v { (*ear).clone() } else { ear.reversed() };
            if x == v || oriented.interior.contains(&x) {
                continue;
            }
            let rank = (key, oriented.interior.len(), v);
            if best.as_ref().is_none_or(|b| rank < (b.0, b.1, b.2)) {
                best = Some((rank.0, rank.1, rank.2, oriented));
            }
        }
    }
    best.map(|b| EarStructure::Ear(b.3))
}

/// Goodness check used as a postcondition of the search.
fn is_good(g: &Graph, s: &EarStructure, x: usize) -> bool {
    match s {
        EarStructure::Ear(e) => {
            e.interior.iter().all(|&u| g.degree(u) == 2)
                && g.has_edge(e.first(), e.last())
                && g.degree(e.last()) == 3
                && x != e.last()
                && !e.interior.contains(&x)
        }
        EarStructure::Chain(c) => {
            c.s() >= 3
                && g.has_edge(c.path[0], c.path[c.s() - 1])
                && c.path[1..c.s() - 1].iter().all(|&v| g.degree(v) == 4 && v != x)
                && c.ears.iter().all(|e| e.interior.iter().all(|&u| g.degree(u) == 2 && u != x))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::outerplanar::outer_embedding;

    fn polygon_with(n: usize, chords: &[(usize, usize)]) -> Graph {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend_from_slice(chords);
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn hexagon_chord_ears() {
        let g = polygon_with(6, &[(0, 3)]);
        let emb = outer_embedding(&g).unwrap();
        let list = ears(&g, &emb);
        assert_eq!(list.len(), 2);
        assert!(list.iter().all(|e| e.root_key() == (0, 3)));
        match find_good_ear_or_chain(&g, &emb, 0).unwrap() {
            EarStructure::Ear(e) => {
                assert_eq!(e.root, (0, 3));
                assert_eq!(g.degree(e.last()), 3);
                assert!(e.interior == vec![1, 2] || e.interior == vec![5, 4]);
            }
            other => panic!("expected an ear, got {other:?}"),
        }
    }

    #[test]
    fn anchor_inside_an_ear_picks_the_other_side() {
        let g = polygon_with(6, &[(0, 3)]);
        let emb = outer_embedding(&g).unwrap();
        match find_good_ear_or_chain(&g, &emb, 1).unwrap() {
            EarStructure::Ear(e) => assert!(!e.vertices().contains(&1)),
            other => panic!("expected an ear, got {other:?}"),
        }
    }

    #[test]
    fn root_edges_forming_a_cycle_give_a_chain() {
        // Inner triangle 0-2-4 with a triangle ear on each side.
        let g = polygon_with(6, &[(0, 2), (2, 4), (0, 4)]);
        let emb = outer_embedding(&g).unwrap();
        match find_good_ear_or_chain(&g, &emb, 5).unwrap() {
            EarStructure::Chain(c) => {
                assert_eq!(c.s(), 3);
                assert_eq!(c.root(), (0, 4));
                assert!(!c.vertices().contains(&5));
            }
            other => panic!("expected a chain, got {other:?}"),
        }
    }

    #[test]
    fn preconditions() {
        let c6 = polygon_with(6, &[]);
        let emb = outer_embedding(&c6).unwrap();
        assert_eq!(find_good_ear_or_chain(&c6, &emb, 0), Err(StructureError::IsCycle));
        let g = polygon_with(6, &[(0, 3)]);
        let emb = outer_embedding(&g).unwrap();
        assert_eq!(find_good_ear_or_chain(&g, &emb, 9), Err(StructureError::VertexOutOfRange(9)));
    }

    #[test]
    fn chain_reverse_roundtrip() {
        let g = polygon_with(6, &[(0, 2), (2, 4), (0, 4)]);
        let emb = outer_embedding(&g).unwrap();
        let EarStructure::Chain(c) = find_good_ear_or_chain(&g, &emb, 5).unwrap() else { panic!() };
        let r = c.reversed();
        assert_eq!(r.root(), (c.root().1, c.root().0));
        assert_eq!(r.reversed(), c);
        let mut a = c.vertices();
        let mut b = r.vertices();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
