//! Canonical labeling of small graphs by individualization–refinement.
//!
//! Color refinement produces an ordered, isomorphism-invariant partition;
//! the first non-singleton cell is split by individualizing each of its
//! vertices in turn. Every discrete leaf fixes a labeling, and the largest
//! resulting adjacency word is the canonical form. Adequate for `n <= 11`.

use crate::graph::Graph;

/// Canonical form of a graph with at most 11 vertices: vertex count plus the
/// upper-triangle adjacency bits (column-major) under the canonical labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub n: u8,
    pub bits: u64,
}

pub const MAX_CANON_N: usize = 11;

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_labeling(g).0
}

/// Canonical key and a labeling (`perm[v]` = new index of `v`) attaining it.
pub fn canonical_labeling(g: &Graph) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical form supports at most {MAX_CANON_N} vertices");
    let colors = refine(g, vec![0; n]);
    let mut best: Option<(u64, Vec<usize>)> = None;
    search(g, colors, &mut best);
    let (bits, perm) = best.unwrap_or((0, Vec::new()));
    (CanonicalKey { n: n as u8, bits }, perm)
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = g.n();
    let mut size = vec![0usize; n.max(1)];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1);
    let Some(cell) = target else {
        let bits = word(g, &colors);
        if best.as_ref().is_none_or(|b| bits > b.0) {
            *best = Some((bits, colors));
        }
        return;
    };
    for v in 0..n {
        if colors[v] != cell {
            continue;
        }
        // Shift every color up by one inside and after the cell, so `v`
        // alone keeps `cell` and precedes the rest of its old cell.
        let split: Vec<usize> =
            (0..n).map(|u| if u == v || colors[u] < cell { colors[u] } else { colors[u] + 1 }).collect();
        search(g, refine(g, split), best);
    }
}

fn word(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut inv = vec![0; n];
    for v in 0..n {
        inv[perm[v]] = v;
    }
    let mut bits = 0u64;
    for j in 1..n {
        for i in 0..j {
            bits = (bits << 1) | g.has_edge(inv[i], inv[j]) as u64;
        }
    }
    bits
}

/// 1-dimensional Weisfeiler–Leman refinement of an ordered partition. Colors
/// stay dense ranks `0..k`, and new cells inherit the order of their parent.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut cells = count_cells(&colors);
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; n];
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                rank += 1;
            }
            next[sig[i].2] = rank;
        }
        colors = next;
        let c = count_cells(&colors);
        if c == cells {
            return colors;
        }
        cells = c;
    }
}

fn count_cells(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&m| m + 1)
}

/// Brute-force canonical key over all `n!` labelings; only for tiny graphs
/// and used to check the refinement search.
pub fn brute_force_key(g: &Graph) -> CanonicalKey {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = 0u64;
    loop {
        best = best.max(word(g, &perm));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    CanonicalKey { n: n as u8, bits: best }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::build(n, &edges).unwrap()
        })
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(graph_on)
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(g in arb_graph(8), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(canonical_key(&g), canonical_key(&g.permuted(&perm)));
        }

        #[test]
        fn separates_exactly_like_brute_force((g, h) in (1..=5usize).prop_flat_map(|n| (graph_on(n), graph_on(n)))) {
            prop_assert_eq!(
                canonical_key(&g) == canonical_key(&h),
                brute_force_key(&g) == brute_force_key(&h)
            );
        }
    }

    #[test]
    fn labeling_reproduces_key() {
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let (key, perm) = canonical_labeling(&g);
        assert_eq!(word(&g, &perm), key.bits);
    }
}
