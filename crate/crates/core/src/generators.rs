//! Graph families and list assignments used as test instances, plus
//! exhaustive enumeration of small connected (outerplanar) graphs.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::{canonical_labeling, CanonicalKey};
use crate::graph::Graph;
use crate::kernel::{Color, ListAssignment};
use crate::structure::is_outerplanar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("theta parameters {0:?} must be positive with at most one equal to 1")]
    BadTheta((usize, usize, usize)),
    #[error("path lengths ({0}, {1}) must be at least 4 and congruent to 1 mod 3")]
    BadThetaLengths(usize, usize),
    #[error("host graph must be connected and outerplanar")]
    BadHost,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("enumeration is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// What an instance is known to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Sat => "sat",
            Expected::Unsat => "unsat",
            Expected::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedInstance {
    pub name: String,
    pub graph: Graph,
    pub lists: Option<ListAssignment>,
    pub expected: Expected,
}

/// `C_l` on vertices `0..l` in cyclic order.
pub fn cycle(l: usize) -> Result<Graph, GeneratorError> {
    if l < 3 {
        return Err(GeneratorError::CycleTooShort(l));
    }
    let edges: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    Ok(Graph::build(l, &edges).expect("cycle edges are simple"))
}

/// Path on `n` vertices `0 - 1 - … - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &edges).expect("path edges are simple")
}

/// Two hubs `0` and `1` joined by internally disjoint paths of lengths `a`,
/// `b`, `c`; the interior vertices of each path follow in order.
pub fn theta(a: usize, b: usize, c: usize) -> Result<Graph, GeneratorError> {
    let params = [a, b, c];
    if params.contains(&0) || params.iter().filter(|&&p| p == 1).count() > 1 {
        return Err(GeneratorError::BadTheta((a, b, c)));
    }
    let n = 2 + (a - 1) + (b - 1) + (c - 1);
    let mut edges = Vec::with_capacity(a + b + c);
    let mut next = 2;
    for len in params {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Ok(Graph::build(n, &edges).expect("theta edges are simple"))
}

/// `Θ_{1,l1,l2}` with `{1,2,3,4}` on both hubs and `{1,2,3}` elsewhere, which
/// has no proper conflict-free coloring when `l1 ≡ l2 ≡ 1 (mod 3)`.
pub fn theta_hard_lists(l1: usize, l2: usize) -> Result<NamedInstance, GeneratorError> {
    if l1 < 4 || l2 < 4 || l1 % 3 != 1 || l2 % 3 != 1 {
        return Err(GeneratorError::BadThetaLengths(l1, l2));
    }
    let graph = theta(1, l1, l2)?;
    let lists = ListAssignment::from_vecs((0..graph.n()).map(|v| if v < 2 { vec![1, 2, 3, 4] } else { vec![1, 2, 3] }));
    Ok(NamedInstance { name: format!("theta_1_{l1}_{l2}"), graph, lists: Some(lists), expected: Expected::Unsat })
}

/// Glues `d + 1` four-cycles onto `v0` (where `d = d_h(v0)`) and assigns
/// (degree+1)-lists admitting no proper conflict-free coloring.
///
/// Host vertices keep their indices; cycle `i` (1-based) appends
/// `v_1^i, v_2^i, v_3^i`, whose lists are `{3i-2, 3i-1, 3i}`. The hub gets
/// `{1, …, 3d+3}` and every other host vertex `u` gets `{1, …, d_G(u)+1}`.
pub fn degree_plus_one_gadget(h: &Graph, v0: usize) -> Result<NamedInstance, GeneratorError> {
    if v0 >= h.n() {
        return Err(GeneratorError::VertexOutOfRange(v0));
    }
    if !h.is_connected() || !is_outerplanar(h).is_yes() {
        return Err(GeneratorError::BadHost);
    }
    let d = h.degree(v0);
    let base = h.n();
    let mut edges = h.edges();
    for i in 0..=d {
        let (a, b, c) = (base + 3 * i, base + 3 * i + 1, base + 3 * i + 2);
        edges.extend_from_slice(&[(v0, a), (a, b), (b, c), (c, v0)]);
    }
    let n = base + 3 * (d + 1);
    let graph = Graph::build(n, &edges).expect("gadget edges are simple");
    assert_eq!(graph.degree(v0), 3 * d + 2, "hub degree must be 3d+2");
    let lists = ListAssignment::from_vecs((0..n).map(|v| -> Vec<Color> {
        if v == v0 {
            (1..=(3 * d + 3) as Color).collect()
        } else if v < base {
            (1..=(graph.degree(v) + 1) as Color).collect()
        } else {
            let i = ((v - base) / 3 + 1) as Color;
            vec![3 * i - 2, 3 * i - 1, 3 * i]
        }
    }));
    Ok(NamedInstance { name: format!("gadget_n{}_v{v0}", h.n()), graph, lists: Some(lists), expected: Expected::Unsat })
}

/// Largest order accepted by the exhaustive enumerators.
pub const MAX_ENUM_N: usize = 9;

/// Every connected outerplanar graph on `n` vertices, once per isomorphism
/// class, in canonical labeling and sorted by canonical key.
///
/// Each such graph on `n >= 2` vertices has a non-cut vertex of degree at most
/// two (a leaf of a pendant edge, or a degree-2 vertex of an end block other
/// than its cut vertex), so extending the `n - 1` classes by one vertex of
/// degree 1 or 2 reaches all of them.
pub fn enumerate_connected_outerplanar(n: usize) -> Result<Vec<Graph>, GeneratorError> {
    grow(
        n,
        MAX_ENUM_N,
        |g| {
            let k = g.n();
            let mut out: Vec<Vec<usize>> = (0..k).map(|a| vec![a]).collect();
            for b in 1..k {
                for a in 0..b {
                    out.push(vec![a, b]);
                }
            }
            out
        },
        |g| is_outerplanar(g).is_yes(),
    )
}

/// Every connected graph on `n <= 7` vertices, once per isomorphism class.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, GeneratorError> {
    grow(
        n,
        7,
        |g| {
            let k = g.n();
            (1u32..(1 << k)).map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect()).collect()
        },
        |_| true,
    )
}

fn grow(
    n: usize,
    max: usize,
    attachments: impl Fn(&Graph) -> Vec<Vec<usize>>,
    keep: impl Fn(&Graph) -> bool,
) -> Result<Vec<Graph>, GeneratorError> {
    if n > max {
        return Err(GeneratorError::TooLarge { n, max });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nbrs in attachments(g) {
                let h = g.with_new_vertex(&nbrs);
                if !keep(&h) {
                    continue;
                }
                let (key, perm) = canonical_labeling(&h);
                if seen.insert(key) {
                    next.push((key, h.permuted(&perm)));
                }
            }
        }
        next.sort_by_key(|(k, _)| *k);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}

/// A connected outerplanar graph on `n` vertices, reproducible from `seed`.
///
/// Grows from a single vertex by either hanging a pendant vertex or gluing a
/// new polygon block (a random outer cycle with a random set of non-crossing
/// chords) at an existing vertex; labels are shuffled at the end.
pub fn random_outerplanar(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 {
        return Graph::empty(0);
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut count = 1;
    while count < n {
        let at = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.7) {
            let k = rng.gen_range(2..=room.min(8));
            // Polygon at, count, …, count+k-1.
            let poly: Vec<usize> = std::iter::once(at).chain(count..count + k).collect();
            let m = poly.len();
            for i in 0..m {
                edges.push((poly[i], poly[(i + 1) % m]));
            }
            let mut diagonals = Vec::new();
            triangulate(&mut rng, 0, m - 1, &mut diagonals);
            for (i, j) in diagonals {
                if rng.gen_bool(0.5) {
                    edges.push((poly[i], poly[j]));
                }
            }
            count += k;
        } else {
            edges.push((at, count));
            count += 1;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let edges: Vec<_> = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    Graph::build(n, &edges).expect("random outerplanar edges are simple")
}

/// Random triangulation of the polygon `lo..=hi` (positions), collecting
/// its diagonals.
fn triangulate(rng: &mut ChaCha8Rng, lo: usize, hi: usize, out: &mut Vec<(usize, usize)>) {
    if hi - lo < 2 {
        return;
    }
    let apex = rng.gen_range(lo + 1..hi);
    if apex - lo >= 2 {
        out.push((lo, apex));
    }
    if hi - apex >= 2 {
        out.push((apex, hi));
    }
    triangulate(rng, lo, apex, out);
    triangulate(rng, apex, hi, out);
}
