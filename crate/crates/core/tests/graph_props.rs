//! Graph invariants, including an exhaustive graph6 cross-check against a
//! reference decoder written directly from the format description.

use std::collections::BTreeSet;

use pcf_core::generators::enumerate_connected;
use pcf_core::graph::Graph;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let edges: Vec<_> = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| *e).collect();
            Graph::build(n, &edges).unwrap()
        })
    })
}

/// graph6 for `n < 63`: one byte `n + 63`, then the upper triangle read
/// column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`), six bits per byte,
/// most significant first, each byte offset by 63.
fn reference_decode(s: &str) -> (usize, BTreeSet<(usize, usize)>) {
    let bytes = s.as_bytes();
    let n = (bytes[0] - 63) as usize;
    let bits: Vec<bool> =
        bytes[1..].iter().flat_map(|&b| (0..6).rev().map(move |k| ((b - 63) >> k) & 1 == 1)).collect();
    let mut edges = BTreeSet::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.insert((i, j));
            }
            idx += 1;
        }
    }
    (n, edges)
}

#[test]
fn graph6_roundtrip_is_exhaustively_the_identity() {
    let mut count = 0;
    for n in 1..=7 {
        for g in enumerate_connected(n).unwrap() {
            let text = g.to_graph6();
            let (rn, redges) = reference_decode(&text);
            assert_eq!(rn, g.n(), "{text}");
            assert_eq!(redges, g.edges().into_iter().collect::<BTreeSet<_>>(), "{text}");
            assert_eq!(Graph::from_graph6(&text).unwrap(), g, "{text}");
            count += 1;
        }
    }
    assert_eq!(count, 1 + 1 + 2 + 6 + 21 + 112 + 853);
}

proptest! {
    #[test]
    fn degree_sum_is_twice_the_edges(g in arb_graph(12)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        prop_assert_eq!(g.edges().len(), g.m());
    }

    #[test]
    fn components_partition_the_vertices(g in arb_graph(12)) {
        let parts = g.connected_components();
        let mut seen = BTreeSet::new();
        for p in &parts {
            for &v in p {
                prop_assert!(seen.insert(v), "vertex {} in two components", v);
            }
        }
        prop_assert_eq!(seen.len(), g.n());
        for (u, v) in g.edges() {
            prop_assert!(parts.iter().any(|p| p.contains(&u) && p.contains(&v)));
        }
    }

    #[test]
    fn graph6_and_edge_list_roundtrip(g in arb_graph(20)) {
        let text = g.to_graph6();
        if g.n() < 63 {
            let (n, edges) = reference_decode(&text);
            prop_assert_eq!(n, g.n());
            prop_assert_eq!(edges, g.edges().into_iter().collect::<BTreeSet<_>>());
        }
        prop_assert_eq!(Graph::from_graph6(&text).unwrap(), g.clone());
        prop_assert_eq!(Graph::parse_auto(&text).unwrap(), g.clone());
        prop_assert_eq!(Graph::parse_auto(&g.to_edge_list_text()).unwrap(), g);
    }
}
