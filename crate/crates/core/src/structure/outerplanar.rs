use std::collections::BTreeSet;
use std::fmt;

use crate::graph::Graph;

use super::blocks::decompose;

/// Outerplane embedding of a 2-connected graph: a Hamiltonian outer cycle
/// plus the chords drawn inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterEmbedding {
    /// Starts at the smallest vertex; the second entry is smaller than the
    /// last one.
    pub outer_cycle: Vec<usize>,
    /// Edges not on the outer cycle, as `(min, max)`, sorted.
    pub chords: Vec<(usize, usize)>,
}

impl OuterEmbedding {
    /// Position of every vertex on the outer cycle (`usize::MAX` if absent).
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.outer_cycle.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn map_vertices(&self, map: &[usize]) -> OuterEmbedding {
        let outer: Vec<usize> = self.outer_cycle.iter().map(|&v| map[v]).collect();
        let chords = self.chords.iter().map(|&(a, b)| (map[a], map[b])).collect();
        normalize(outer, chords)
    }
}

impl fmt::Display for OuterEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<String> = self.outer_cycle.iter().map(ToString::to_string).collect();
        write!(f, "outer: {}", cyc.join(" "))?;
        let ch: Vec<String> = self.chords.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "\nchords: {}", ch.join(" "))
    }
}

fn normalize(mut outer: Vec<usize>, mut chords: Vec<(usize, usize)>) -> OuterEmbedding {
    if let Some(i) = (0..outer.len()).min_by_key(|&i| outer[i]) {
        outer.rotate_left(i);
    }
    if outer.len() > 2 && outer[1] > outer[outer.len() - 1] {
        outer[1..].reverse();
    }
    for c in &mut chords {
        *c = (c.0.min(c.1), c.0.max(c.1));
    }
    chords.sort_unstable();
    OuterEmbedding { outer_cycle: outer, chords }
}

/// Result of the outerplanarity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outerplanarity {
    /// One embedding per block with at least three vertices, paired with the
    /// block's vertex set.
    Yes(Vec<(Vec<usize>, OuterEmbedding)>),
    /// A block admitting no outerplane embedding.
    No { block: Vec<usize> },
}

impl Outerplanarity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outerplanarity::Yes(_))
    }
}

/// Tests every block independently.
pub fn is_outerplanar(g: &Graph) -> Outerplanarity {
    let decomp = decompose(g);
    let mut out = Vec::new();
    for block in decomp.blocks {
        if block.len() < 3 {
            continue;
        }
        let (h, map) = g.induced_subgraph(&block);
        match outer_embedding(&h) {
            Some(emb) => out.push((block, emb.map_vertices(&map))),
            None => return Outerplanarity::No { block },
        }
    }
    Outerplanarity::Yes(out)
}

/// Outer cycle of a 2-connected graph, or `None` if it has no outerplane
/// embedding.
///
/// Repeatedly removes a degree-2 vertex `v` with neighbors `a`, `b` and adds
/// the edge `ab` when it is missing; once a triangle remains, the removed
/// vertices are reinserted between their two recorded neighbors. The
/// candidate cycle is then checked (Hamiltonian, real edges, non-crossing
/// chords), so a `Some` answer is always a valid certificate.
pub fn outer_embedding(g: &Graph) -> Option<OuterEmbedding> {
    let n = g.n();
    if n < 3 || g.m() > 2 * n - 3 {
        return None;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = n;
    let mut deg2: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() == 2).collect();
    let mut removed: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
    let mut gone = vec![false; n];
    while alive > 3 {
        let v = deg2.pop_first()?;
        let mut it = adj[v].iter();
        let (a, b) = (*it.next()?, *it.next()?);
        gone[v] = true;
        alive -= 1;
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[v].clear();
        adj[a].insert(b);
        adj[b].insert(a);
        for w in [a, b] {
            if adj[w].len() == 2 {
                deg2.insert(w);
            } else {
                deg2.remove(&w);
            }
        }
        removed.push((v, a, b));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    if rest.len() != 3 || rest.iter().any(|&v| adj[v].len() != 2) {
        return None;
    }
    // Doubly linked cyclic list over the outer cycle.
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..3 {
        next[rest[i]] = rest[(i + 1) % 3];
        prev[rest[(i + 1) % 3]] = rest[i];
    }
    while let Some((v, a, b)) = removed.pop() {
        let (x, y) = if next[a] == b {
            (a, b)
        } else if next[b] == a {
            (b, a)
        } else {
            return None;
        };
        next[x] = v;
        prev[v] = x;
        next[v] = y;
        prev[y] = v;
    }
    let mut outer = Vec::with_capacity(n);
    let mut cur = 0;
    for _ in 0..n {
        outer.push(cur);
        cur = next[cur];
        if cur == usize::MAX {
            return None;
        }
    }
    let chords = validate(g, &outer)?;
    Some(normalize(outer, chords))
}

/// Checks that `outer` is a Hamiltonian cycle of `g` and that the remaining
/// edges are pairwise non-crossing; returns those edges.
pub fn validate(g: &Graph, outer: &[usize]) -> Option<Vec<(usize, usize)>> {
    let n = g.n();
    if outer.len() != n || n < 3 {
        return None;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in outer.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = i;
    }
    for i in 0..n {
        if !g.has_edge(outer[i], outer[(i + 1) % n]) {
            return None;
        }
    }
    let mut chords = Vec::new();
    let mut intervals = Vec::new();
    for (a, b) in g.edges() {
        let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        if pb - pa == 1 || (pa == 0 && pb == n - 1) {
            continue;
        }
        chords.push((a, b));
        intervals.push((pa, pb));
    }
    // Non-crossing chords are exactly a laminar family of intervals.
    intervals.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(s, e) in &intervals {
        while stack.last().is_some_and(|top| top.1 <= s) {
            stack.pop();
        }
        if stack.last().is_some_and(|top| e > top.1) {
            return None;
        }
        stack.push((s, e));
    }
    Some(chords)
}

/// Whether chords `(a, b)` and `(c, d)` cross with respect to `pos`.
pub fn chords_cross(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |v: usize| lo < pos[v] && pos[v] < hi;
    inside(c) != inside(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle;

    #[test]
    fn cycle_embedding() {
        let emb = outer_embedding(&cycle(5).unwrap()).unwrap();
        assert_eq!(emb.outer_cycle, vec![0, 1, 2, 3, 4]);
        assert!(emb.chords.is_empty());
    }

    #[test]
    fn k4_is_not_outerplanar() {
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(outer_embedding(&k4).is_none());
        assert!(!is_outerplanar(&k4).is_yes());
        let k23 = Graph::build(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!is_outerplanar(&k23).is_yes());
    }

    #[test]
    fn hexagon_with_chord() {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::build(6, &edges).unwrap();
        let emb = outer_embedding(&g).unwrap();
        assert_eq!(emb.outer_cycle, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(emb.chords, vec![(0, 3)]);
        let pos = emb.positions(6);
        assert!(chords_cross(&pos, (0, 3), (1, 4)));
        assert!(!chords_cross(&pos, (0, 3), (0, 2)));
        assert_eq!(emb.to_string(), "outer: 0 1 2 3 4 5\nchords: 0-3");
    }

    #[test]
    fn scrambled_labels() {
        // Triangulated hexagon with shuffled labels.
        let g = Graph::build(6, &[(3, 5), (5, 0), (0, 2), (2, 4), (4, 1), (1, 3), (3, 0), (0, 4), (4, 3)]).unwrap();
        let emb = outer_embedding(&g).unwrap();
        assert_eq!(emb.outer_cycle, vec![0, 2, 4, 1, 3, 5]);
        assert_eq!(emb.chords.len(), 3);
    }

    #[test]
    fn validate_rejects_crossing() {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        edges.push((1, 4));
        let g = Graph::build(6, &edges).unwrap();
        assert!(validate(&g, &[0, 1, 2, 3, 4, 5]).is_none());
        assert!(outer_embedding(&g).is_none());
    }

    #[test]
    fn separable_graph_per_block() {
        let g = Graph::build(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        match is_outerplanar(&g) {
            Outerplanarity::Yes(blocks) => {
                assert_eq!(blocks.len(), 1);
                assert_eq!(blocks[0].0, vec![0, 1, 2]);
            }
            Outerplanarity::No { .. } => panic!("triangle with a tail is outerplanar"),
        }
    }
}
