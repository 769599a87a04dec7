//! The exhaustive search against plain product enumeration, and its
//! invariance under color and vertex relabeling.

use pcf_core::generators::enumerate_connected;
use pcf_core::graph::Graph;
use pcf_core::kernel::{verify, Color, Coloring, ListAssignment};
use pcf_core::oracle::{self, Status};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Tries every element of the product of the lists with a direct
/// properness and lonely-color test.
fn naive_sat(g: &Graph, lists: &[Vec<Color>]) -> bool {
    fn ok(g: &Graph, colors: &[Color]) -> bool {
        (0..g.n()).all(|v| {
            let nb = g.neighbors(v);
            nb.iter().all(|&w| colors[w] != colors[v])
                && (nb.is_empty() || nb.iter().any(|&a| nb.iter().filter(|&&b| colors[b] == colors[a]).count() == 1))
        })
    }
    fn go(g: &Graph, lists: &[Vec<Color>], colors: &mut Vec<Color>) -> bool {
        if colors.len() == lists.len() {
            return ok(g, colors);
        }
        for &c in &lists[colors.len()] {
            colors.push(c);
            if go(g, lists, colors) {
                return true;
            }
            colors.pop();
        }
        false
    }
    go(g, lists, &mut Vec::with_capacity(lists.len()))
}

fn oracle_verdict(g: &Graph, lists: &[Vec<Color>]) -> bool {
    let la = ListAssignment::from_vecs(lists.to_vec());
    match oracle::solve(g, &la).unwrap().status {
        Status::Sat(phi) => {
            assert!(verify(g, &la, &phi).ok, "oracle certificate fails verification");
            true
        }
        Status::Unsat => false,
    }
}

/// Every assignment of lists of size 1..=3 over `1..=5`, one per color
/// relabeling class: each list is a set of already used colors plus the
/// next few unused ones.
fn canonical_assignments(n: usize, universe: Color) -> Vec<Vec<Vec<Color>>> {
    fn go(n: usize, universe: Color, cur: &mut Vec<Vec<Color>>, out: &mut Vec<Vec<Vec<Color>>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let used = cur.iter().flatten().copied().max().unwrap_or(0);
        for size in 1..=3u32 {
            for fresh in 0..=size.min(universe - used) {
                let old = size - fresh;
                for mask in 0u32..(1 << used) {
                    if mask.count_ones() != old {
                        continue;
                    }
                    let mut list: Vec<Color> = (1..=used).filter(|c| mask >> (c - 1) & 1 == 1).collect();
                    list.extend(used + 1..=used + fresh);
                    cur.push(list);
                    go(n, universe, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, universe, &mut Vec::new(), &mut out);
    out
}

#[test]
fn complete_on_small_connected_graphs() {
    for n in 1..=5 {
        let assignments = canonical_assignments(n, 5);
        for g in enumerate_connected(n).unwrap() {
            assignments.par_iter().for_each(|lists| {
                assert_eq!(oracle_verdict(&g, lists), naive_sat(&g, lists), "{} {lists:?}", g.to_graph6());
            });
        }
    }
}

/// Sampled for n = 6, where the canonical classes are too many to list.
#[test]
fn complete_on_sampled_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool: Vec<Color> = (1..=5).collect();
    for n in 6..=6 {
        for g in enumerate_connected(n).unwrap() {
            for _ in 0..200 {
                let lists: Vec<Vec<Color>> = (0..n)
                    .map(|_| {
                        let k = rng.gen_range(1..=3);
                        pool.choose_multiple(&mut rng, k).copied().collect()
                    })
                    .collect();
                assert_eq!(oracle_verdict(&g, &lists), naive_sat(&g, &lists), "{} {lists:?}", g.to_graph6());
            }
        }
    }
}

fn arb_connected() -> impl Strategy<Value = Graph> {
    (2..=7usize).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let mut edges: Vec<_> = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| *e).collect();
            edges.extend((1..n).map(|v| (v - 1, v)));
            Graph::from_edges_dedup(n, &edges).unwrap()
        })
    })
}

fn arb_case() -> impl Strategy<Value = (Graph, Vec<Vec<Color>>, Vec<usize>, Vec<Color>)> {
    arb_connected().prop_flat_map(|g| {
        let n = g.n();
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        let sigma = Just((1..=6).collect::<Vec<Color>>()).prop_shuffle();
        let lists = proptest::collection::vec(proptest::sample::subsequence((1..=6).collect::<Vec<Color>>(), 2..=4), n);
        (Just(g), lists, perm, sigma)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn invariant_under_color_bijections((g, lists, _, sigma) in arb_case()) {
        let f = |c: Color| sigma[c as usize - 1];
        let la = ListAssignment::from_vecs(lists.clone());
        let mapped = la.relabeled(f);
        let a = oracle::solve(&g, &la).unwrap().status;
        let b = oracle::solve(&g, &mapped).unwrap().status;
        prop_assert_eq!(matches!(a, Status::Sat(_)), matches!(b, Status::Sat(_)));
        if let Status::Sat(phi) = a {
            prop_assert!(verify(&g, &mapped, &phi.relabeled(f)).ok);
        }
        // An order-preserving relabeling maps the certificate exactly.
        let shift = |c: Color| 2 * c + 7;
        let shifted = oracle::solve(&g, &la.relabeled(shift)).unwrap().status;
        match (oracle::solve(&g, &la).unwrap().status, shifted) {
            (Status::Sat(p), Status::Sat(q)) => prop_assert_eq!(p.relabeled(shift), q),
            (Status::Unsat, Status::Unsat) => {}
            (p, q) => prop_assert!(false, "verdicts differ: {:?} {:?}", p, q),
        }
    }

    #[test]
    fn invariant_under_vertex_relabeling((g, lists, perm, _) in arb_case()) {
        let h = g.permuted(&perm);
        let mut moved = vec![Vec::new(); g.n()];
        for v in 0..g.n() {
            moved[perm[v]] = lists[v].clone();
        }
        let mla = ListAssignment::from_vecs(moved);
        let a = oracle_verdict(&g, &lists);
        match oracle::solve(&h, &mla).unwrap().status {
            Status::Sat(psi) => {
                prop_assert!(a);
                // Pull the certificate back to g.
                let back = Coloring::from_total((0..g.n()).map(|v| psi.at(perm[v])).collect());
                prop_assert!(verify(&g, &ListAssignment::from_vecs(lists.clone()), &back).ok);
            }
            Status::Unsat => prop_assert!(!a),
        }
    }
}
