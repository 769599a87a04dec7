//! List assignments, (partial) colorings and the proper conflict-free
//! verifier.
//!
//! [`verify`] is the single gate every produced coloring goes through.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Colors are positive integers; nothing assumes they are contiguous.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("color universe has {have} colors but a list of size {need} is required")]
    UniverseTooSmall { have: usize, need: usize },
    #[error("color 0 is not a valid color")]
    ZeroColor,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("json: {0}")]
    Json(String),
}

/// Per-vertex allowed colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<Color>>,
}

#[derive(Serialize, Deserialize)]
struct ListsJson {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<Color>>) -> Self {
        ListAssignment { lists }
    }

    pub fn from_vecs<I, J>(lists: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = Color>,
    {
        ListAssignment { lists: lists.into_iter().map(|l| l.into_iter().collect()).collect() }
    }

    /// The same list on every one of `n` vertices.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let set: BTreeSet<Color> = colors.into_iter().collect();
        ListAssignment { lists: vec![set; n] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    pub fn set(&mut self, v: usize, list: BTreeSet<Color>) {
        self.lists[v] = list;
    }

    pub fn lists(&self) -> &[BTreeSet<Color>] {
        &self.lists
    }

    /// Restriction to the vertices named by `map` (new index -> old index).
    pub fn restrict(&self, map: &[usize]) -> ListAssignment {
        ListAssignment { lists: map.iter().map(|&v| self.lists[v].clone()).collect() }
    }

    /// True when `|L(v)| >= d(v) + k` for every vertex.
    pub fn is_degree_plus(&self, g: &Graph, k: usize) -> bool {
        self.lists.len() == g.n() && (0..g.n()).all(|v| self.lists[v].len() >= g.degree(v) + k)
    }

    /// Keeps the `d(v) + k` smallest colors of each list.
    pub fn trimmed(&self, g: &Graph, k: usize) -> ListAssignment {
        ListAssignment {
            lists: (0..self.lists.len())
                .map(|v| self.lists[v].iter().copied().take(g.degree(v) + k).collect())
                .collect(),
        }
    }

    /// Applies a color bijection to every list.
    pub fn relabeled(&self, f: impl Fn(Color) -> Color) -> ListAssignment {
        ListAssignment { lists: self.lists.iter().map(|l| l.iter().map(|&c| f(c)).collect()).collect() }
    }

    pub fn to_json(&self) -> String {
        let j = ListsJson { lists: self.lists.iter().map(|l| l.iter().copied().collect()).collect() };
        serde_json::to_string(&j).expect("lists serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, KernelError> {
        let j: ListsJson = serde_json::from_str(text).map_err(|e| KernelError::Json(e.to_string()))?;
        if j.lists.iter().flatten().any(|&c| c == 0) {
            return Err(KernelError::ZeroColor);
        }
        Ok(ListAssignment::from_vecs(j.lists))
    }
}

/// A total or partial map from vertices to colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn uncolored(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn from_total(colors: Vec<Color>) -> Self {
        Coloring { colors: colors.into_iter().map(Some).collect() }
    }

    pub fn from_options(colors: Vec<Option<Color>>) -> Self {
        Coloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    /// Color of a vertex that the caller knows is colored.
    #[inline]
    pub fn at(&self, v: usize) -> Color {
        self.colors[v].unwrap_or_else(|| panic!("vertex {v} is uncolored"))
    }

    #[inline]
    pub fn set(&mut self, v: usize, c: Color) {
        self.colors[v] = Some(c);
    }

    #[inline]
    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v].is_some()).collect()
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn to_total(&self) -> Option<Vec<Color>> {
        self.colors.iter().copied().collect()
    }

    pub fn relabeled(&self, f: impl Fn(Color) -> Color) -> Coloring {
        Coloring { colors: self.colors.iter().map(|c| c.map(&f)).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ColoringJson { colors: self.colors.clone() }).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, KernelError> {
        let j: ColoringJson = serde_json::from_str(text).map_err(|e| KernelError::Json(e.to_string()))?;
        if j.colors.iter().flatten().any(|&c| c == 0) {
            return Err(KernelError::ZeroColor);
        }
        Ok(Coloring { colors: j.colors })
    }
}

/// Colors appearing exactly once among the colored neighbors of `v`.
pub fn unique_colors(g: &Graph, phi: &Coloring, v: usize) -> Result<BTreeSet<Color>, KernelError> {
    if v >= g.n() {
        return Err(KernelError::VertexOutOfRange(v));
    }
    let mut count: BTreeMap<Color, usize> = BTreeMap::new();
    for &u in g.neighbors(v) {
        if let Some(c) = phi.get(u) {
            *count.entry(c).or_default() += 1;
        }
    }
    Ok(count.into_iter().filter(|&(_, k)| k == 1).map(|(c, _)| c).collect())
}

/// Why a vertex fails the proper conflict-free predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Reason {
    NotProper,
    NoUniqueNeighborColor,
    ColorNotInList,
    Uncolored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn has(&self, vertex: usize, reason: Reason) -> bool {
        self.violations.iter().any(|v| v.vertex == vertex && v.reason == reason)
    }
}

/// Checks that `phi` is a proper conflict-free `L`-coloring of `g`, listing
/// every violation instead of stopping at the first.
pub fn verify(g: &Graph, lists: &ListAssignment, phi: &Coloring) -> Verdict {
    let mut violations = Vec::new();
    let n = g.n();
    // Entries beyond the graph are ignored; missing ones count as uncolored.
    let color = |v: usize| if v < phi.len() { phi.get(v) } else { None };
    for v in 0..n {
        let Some(c) = color(v) else {
            violations.push(Violation { vertex: v, reason: Reason::Uncolored });
            continue;
        };
        if v >= lists.len() || !lists.get(v).contains(&c) {
            violations.push(Violation { vertex: v, reason: Reason::ColorNotInList });
        }
        if g.neighbors(v).iter().any(|&u| color(u) == Some(c)) {
            violations.push(Violation { vertex: v, reason: Reason::NotProper });
        }
        if g.degree(v) > 0 {
            let mut count: BTreeMap<Color, usize> = BTreeMap::new();
            for &u in g.neighbors(v) {
                if let Some(cu) = color(u) {
                    *count.entry(cu).or_default() += 1;
                }
            }
            if !count.values().any(|&k| k == 1) {
                violations.push(Violation { vertex: v, reason: Reason::NoUniqueNeighborColor });
            }
        }
    }
    Verdict { ok: violations.is_empty(), violations }
}

/// Random list assignment with `|L(v)| = d(v) + k` drawn uniformly without
/// replacement from `universe`, reproducible from `seed`.
pub fn degree_plus_k_lists(g: &Graph, k: usize, universe: &[Color], seed: u64) -> Result<ListAssignment, KernelError> {
    let mut pool: Vec<Color> = universe.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if pool.contains(&0) {
        return Err(KernelError::ZeroColor);
    }
    let need = g.max_degree() + k;
    if pool.len() < need {
        return Err(KernelError::UniverseTooSmall { have: pool.len(), need });
    }
    pool.sort_unstable();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = (0..g.n()).map(|v| pool.choose_multiple(&mut rng, g.degree(v) + k).copied().collect()).collect();
    Ok(ListAssignment::new(lists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle;

    #[test]
    fn unique_colors_examples() {
        let c5 = cycle(5).unwrap();
        let phi = Coloring::from_total(vec![1, 2, 3, 1, 2]);
        assert!(unique_colors(&c5, &phi, 0).unwrap().is_empty());

        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let phi = Coloring::from_options(vec![None, Some(2), Some(2), Some(3)]);
        assert_eq!(unique_colors(&star, &phi, 0).unwrap(), BTreeSet::from([3]));

        let k1 = Graph::empty(1);
        assert!(unique_colors(&k1, &Coloring::from_total(vec![1]), 0).unwrap().is_empty());
        assert_eq!(unique_colors(&k1, &Coloring::from_total(vec![1]), 3), Err(KernelError::VertexOutOfRange(3)));
    }

    #[test]
    fn uncolored_neighbors_contribute_nothing() {
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut phi = Coloring::from_options(vec![None, Some(2), Some(2), Some(3)]);
        phi.clear(3);
        assert!(unique_colors(&star, &phi, 0).unwrap().is_empty());
        phi.clear(2);
        assert_eq!(unique_colors(&star, &phi, 0).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn verify_examples() {
        let lists = ListAssignment::uniform(6, 1..=4);
        let c6 = cycle(6).unwrap();
        assert!(verify(&c6, &lists, &Coloring::from_total(vec![1, 2, 3, 1, 2, 3])).ok);

        let c5 = cycle(5).unwrap();
        let v = verify(&c5, &ListAssignment::uniform(5, 1..=4), &Coloring::from_total(vec![1, 2, 3, 1, 2]));
        assert!(!v.ok);
        assert!(v.has(0, Reason::NoUniqueNeighborColor));

        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let v = verify(&k2, &ListAssignment::uniform(2, 1..=3), &Coloring::from_total(vec![1, 1]));
        assert!(v.has(0, Reason::NotProper) && v.has(1, Reason::NotProper));
    }

    #[test]
    fn verify_reports_lists_and_uncolored() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let lists = ListAssignment::from_vecs([vec![1, 2], vec![3]]);
        let v = verify(&k2, &lists, &Coloring::from_options(vec![Some(4), None]));
        assert!(v.has(0, Reason::ColorNotInList));
        assert!(v.has(1, Reason::Uncolored));
        assert!(v.has(0, Reason::NoUniqueNeighborColor));
        assert!(verify(&Graph::empty(1), &ListAssignment::uniform(1, [7]), &Coloring::from_total(vec![7])).ok);
    }

    #[test]
    fn random_lists() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let l = degree_plus_k_lists(&k2, 2, &[1, 2, 3, 4], 9).unwrap();
        assert!(l.lists().iter().all(|s| s.len() == 3));

        let c5 = cycle(5).unwrap();
        let l = degree_plus_k_lists(&c5, 2, &[1, 2, 3, 4], 1).unwrap();
        assert_eq!(l, ListAssignment::uniform(5, 1..=4));

        let a = degree_plus_k_lists(&c5, 2, &(1..=9).collect::<Vec<_>>(), 77).unwrap();
        let b = degree_plus_k_lists(&c5, 2, &(1..=9).collect::<Vec<_>>(), 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(degree_plus_k_lists(&c5, 2, &[1, 2, 3], 0), Err(KernelError::UniverseTooSmall { have: 3, need: 4 }));
    }

    #[test]
    fn json_formats() {
        let l = ListAssignment::from_vecs([vec![3, 1], vec![2]]);
        assert_eq!(l.to_json(), r#"{"lists":[[1,3],[2]]}"#);
        assert_eq!(ListAssignment::from_json(&l.to_json()).unwrap(), l);
        let c = Coloring::from_options(vec![Some(1), None, Some(4)]);
        assert_eq!(c.to_json(), r#"{"colors":[1,null,4]}"#);
        assert_eq!(Coloring::from_json(&c.to_json()).unwrap(), c);
        assert!(Coloring::from_json(r#"{"colors":[0]}"#).is_err());
        assert!(ListAssignment::from_json("nope").is_err());
    }
}
