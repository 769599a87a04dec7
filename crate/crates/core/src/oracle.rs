//! Exhaustive ground truth: a complete backtracking decision procedure for
//! proper conflict-free list coloring, the conflict-free chromatic number, and
//! a bounded search for list assignments that defeat (degree+k)-choosability.
//!
//! The search shares no code with the verifier in [`crate::kernel`]; the
//! unique-neighbor-color test below is written independently so the two can
//! check each other.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::kernel::{Color, Coloring, KernelError, ListAssignment};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("node budget of {budget} exhausted")]
    Budget { budget: u64 },
    #[error("{0}")]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Sat(Coloring),
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, Status::Sat(_))
    }
}

/// Decides proper conflict-free `lists`-colorability with the default budget.
pub fn solve(g: &Graph, lists: &ListAssignment) -> Result<SolveResult, OracleError> {
    solve_with_budget(g, lists, DEFAULT_NODE_BUDGET)
}

/// Complete backtracking search. Vertices are colored in descending degree
/// order, colors tried in ascending order. A branch is cut when the new color
/// clashes with a colored neighbor, or when some vertex next to the newly
/// colored one has its whole neighborhood colored yet no color occurring
/// exactly once there. A vertex with uncolored neighbors is never judged:
/// a later neighbor can still supply its unique color.
pub fn solve_with_budget(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<SolveResult, OracleError> {
    let n = g.n();
    if lists.len() != n {
        return Err(KernelError::LengthMismatch { expected: n, found: lists.len() }.into());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let options: Vec<Vec<Color>> = (0..n).map(|v| lists.get(v).iter().copied().collect()).collect();
    let mut search = Search {
        g,
        options: &options,
        order: &order,
        colors: vec![0; n],
        uncolored_nbrs: g.degrees(),
        nodes: 0,
        budget,
    };
    let found = search.run(0)?;
    let status = if found { Status::Sat(Coloring::from_total(search.colors.clone())) } else { Status::Unsat };
    Ok(SolveResult { status, nodes_explored: search.nodes })
}

struct Search<'a> {
    g: &'a Graph,
    options: &'a [Vec<Color>],
    order: &'a [usize],
    /// 0 marks an uncolored vertex.
    colors: Vec<Color>,
    uncolored_nbrs: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, OracleError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for &c in &self.options[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::Budget { budget: self.budget });
            }
            if self.g.neighbors(v).iter().any(|&w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            for &w in self.g.neighbors(v) {
                self.uncolored_nbrs[w] -= 1;
            }
            let ok = self
                .g
                .neighbors(v)
                .iter()
                .all(|&w| self.uncolored_nbrs[w] > 0 || has_lonely_color(self.g, &self.colors, w))
                && (self.uncolored_nbrs[v] > 0 || self.g.degree(v) == 0 || has_lonely_color(self.g, &self.colors, v));
            if ok && self.run(depth + 1)? {
                return Ok(true);
            }
            for &w in self.g.neighbors(v) {
                self.uncolored_nbrs[w] += 1;
            }
            self.colors[v] = 0;
        }
        Ok(false)
    }
}

/// Whether some color occurs on exactly one neighbor of `v` (pairwise scan).
fn has_lonely_color(g: &Graph, colors: &[Color], v: usize) -> bool {
    let nb = g.neighbors(v);
    nb.iter()
        .enumerate()
        .any(|(i, &a)| colors[a] != 0 && nb.iter().enumerate().all(|(j, &b)| i == j || colors[b] != colors[a]))
}

/// Least `k <= max_k` such that `g` has a proper conflict-free coloring from
/// `{1, …, k}`, or `None`.
pub fn pcf_chromatic_number(g: &Graph, max_k: usize) -> Result<Option<usize>, OracleError> {
    let start = if g.n() == 0 { 0 } else { 1 };
    for k in start..=max_k {
        let lists = ListAssignment::uniform(g.n(), 1..=k as Color);
        if solve(g, &lists)?.is_sat() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RefuterStatus {
    /// A (degree+k)-list assignment with no proper conflict-free coloring.
    NonChoosable { lists: Vec<Vec<Color>> },
    /// Every canonical assignment over the universe is colorable.
    ExhaustedChoosable,
    /// The node budget ran out first.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefuterResult {
    #[serde(flatten)]
    pub status: RefuterStatus,
    pub k: usize,
    pub universe: usize,
    pub assignments_checked: u64,
    pub nodes_explored: u64,
    pub budget: u64,
}

/// Searches (degree+k)-list assignments with colors in `{1, …, U}`, where
/// `U = min(universe_bound, Σ_v (d(v) + k))`, for one without a proper
/// conflict-free coloring. Only lists of size exactly `d(v) + k` are tried
/// (enlarging a list never hurts), and only one representative per color
/// relabeling: each list may reuse colors already seen plus the next unused
/// colors in increasing order. `budget` caps the total oracle nodes.
pub fn refute_choosability(g: &Graph, k: usize, universe_bound: usize, budget: u64) -> RefuterResult {
    let n = g.n();
    let sizes: Vec<usize> = (0..n).map(|v| g.degree(v) + k).collect();
    let universe = universe_bound.min(sizes.iter().sum());
    let mut r = Refuter { g, sizes: &sizes, universe, budget, lists: Vec::with_capacity(n), checked: 0, nodes: 0 };
    let status = match r.descend(0) {
        Ok(Some(bad)) => RefuterStatus::NonChoosable { lists: bad },
        Ok(None) => RefuterStatus::ExhaustedChoosable,
        Err(()) => RefuterStatus::Inconclusive,
    };
    RefuterResult { status, k, universe, assignments_checked: r.checked, nodes_explored: r.nodes, budget }
}

struct Refuter<'a> {
    g: &'a Graph,
    sizes: &'a [usize],
    universe: usize,
    budget: u64,
    lists: Vec<Vec<Color>>,
    checked: u64,
    nodes: u64,
}

impl Refuter<'_> {
    /// `Ok(Some(lists))` on a bad assignment, `Err(())` on budget exhaustion.
    fn descend(&mut self, v: usize) -> Result<Option<Vec<Vec<Color>>>, ()> {
        if v == self.sizes.len() {
            self.checked += 1;
            let la = ListAssignment::from_vecs(self.lists.clone());
            let left = self.budget.saturating_sub(self.nodes);
            return match solve_with_budget(self.g, &la, left) {
                Ok(res) => {
                    self.nodes += res.nodes_explored;
                    Ok((!res.is_sat()).then(|| self.lists.clone()))
                }
                Err(_) => Err(()),
            };
        }
        let used = self.lists.iter().flatten().copied().max().unwrap_or(0) as usize;
        let size = self.sizes[v];
        let fresh_max = size.min(self.universe.saturating_sub(used));
        for fresh in 0..=fresh_max {
            let old = size - fresh;
            if old > used {
                continue;
            }
            let mut combo: Vec<usize> = (1..=old).collect();
            loop {
                let mut list: Vec<Color> = combo.iter().map(|&c| c as Color).collect();
                list.extend((used + 1..=used + fresh).map(|c| c as Color));
                self.lists.push(list);
                let found = self.descend(v + 1)?;
                self.lists.pop();
                if found.is_some() {
                    return Ok(found);
                }
                if !next_combination(&mut combo, used) {
                    break;
                }
            }
        }
        Ok(None)
    }
}

/// Advances a strictly increasing selection from `1..=m` in lexicographic
/// order.
fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - (k - 1 - i) {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};
    use crate::kernel::verify;

    #[test]
    fn c5_uniform_four_is_unsat() {
        let c5 = cycle(5).unwrap();
        let res = solve(&c5, &ListAssignment::uniform(5, 1..=4)).unwrap();
        assert_eq!(res.status, Status::Unsat);
        assert!(res.nodes_explored > 0);
    }

    #[test]
    fn c5_one_different_list_is_sat() {
        let c5 = cycle(5).unwrap();
        let lists = ListAssignment::from_vecs(vec![vec![1, 2, 3, 4]; 4].into_iter().chain([vec![1, 2, 3, 5]]));
        let res = solve(&c5, &lists).unwrap();
        let Status::Sat(phi) = res.status else { panic!("expected sat") };
        assert!(verify(&c5, &lists, &phi).ok);
    }

    #[test]
    fn isolated_vertex_is_sat() {
        let k1 = Graph::empty(1);
        assert!(solve(&k1, &ListAssignment::uniform(1, [7])).unwrap().is_sat());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(pcf_chromatic_number(&cycle(5).unwrap(), 6).unwrap(), Some(5));
        assert_eq!(pcf_chromatic_number(&cycle(6).unwrap(), 6).unwrap(), Some(3));
        assert_eq!(pcf_chromatic_number(&path(2), 6).unwrap(), Some(2));
        assert_eq!(pcf_chromatic_number(&cycle(5).unwrap(), 4).unwrap(), None);
    }

    #[test]
    fn budget_is_reported() {
        let c5 = cycle(5).unwrap();
        let err = solve_with_budget(&c5, &ListAssignment::uniform(5, 1..=4), 3).unwrap_err();
        assert_eq!(err, OracleError::Budget { budget: 3 });
    }

    #[test]
    fn refuter_cases() {
        let r = refute_choosability(&cycle(4).unwrap(), 1, 12, DEFAULT_NODE_BUDGET);
        assert_eq!(r.status, RefuterStatus::NonChoosable { lists: vec![vec![1, 2, 3]; 4] });
        let r = refute_choosability(&path(2), 2, 10, DEFAULT_NODE_BUDGET);
        assert_eq!(r.status, RefuterStatus::ExhaustedChoosable);
        assert_eq!(r.universe, 6);
        let r = refute_choosability(&cycle(6).unwrap(), 1, 12, 10);
        assert_eq!(r.status, RefuterStatus::Inconclusive);
    }

    #[test]
    fn c6_uniform_three_is_sat() {
        let c6 = cycle(6).unwrap();
        assert!(solve(&c6, &ListAssignment::uniform(6, 1..=3)).unwrap().is_sat());
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![1, 2];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![3, 4]);
    }
}
