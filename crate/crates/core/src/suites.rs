//! End-to-end checks of the solver, the structural search and the oracle
//! against each other, on seeded random and exhaustively enumerated inputs.
//!
//! Every suite returns a [`SuiteReport`]; none of them panics on a failed
//! check. Work on independent instances runs in parallel, but results are
//! always gathered in instance order, so reports are reproducible.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::generators::{
    cycle, degree_plus_one_gadget, enumerate_connected, enumerate_connected_outerplanar, path, theta_hard_lists,
    Expected, NamedInstance,
};
use crate::graph::Graph;
use crate::kernel::{degree_plus_k_lists, verify, Color, Coloring, ListAssignment};
use crate::oracle::{self, OracleError, Status};
use crate::solver::{self, color_constrained_path, Obstruction};
use crate::structure::{block_decomposition, find_good_ear_or_chain, outer_embedding, Ear, EarStructure};

/// At most this many failure descriptions are kept per report.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    /// Number of individual checks performed.
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures, human-readable.
    pub failures: Vec<String>,
    /// Some oracle call ran out of budget; the suite is inconclusive.
    pub budget_exhausted: bool,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            passed: true,
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            budget_exhausted: false,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(what);
        }
    }

    fn budget(&mut self, what: String) {
        self.budget_exhausted = true;
        self.fail(format!("budget exhausted: {what}"));
    }

    fn absorb(&mut self, outcome: Outcome) {
        self.checked += outcome.checked;
        for f in outcome.failures {
            self.fail(f);
        }
        if let Some(b) = outcome.budget {
            self.budget(b);
        }
    }

    /// One line: `PASS suite (checked N)` or `FAIL suite (…)`.
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {} (checked {}, failures {})", self.suite, self.checked, self.failure_count);
        if self.budget_exhausted {
            line.push_str(", budget exhausted");
        }
        if let Some(first) = self.failures.first() {
            line.push_str(&format!(": {first}"));
        }
        line
    }
}

/// Results of one parallel work item, merged in order afterwards.
#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<String>,
    budget: Option<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Independent stream of randomness for work item `index`.
fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn oracle_sat(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<Option<Coloring>, OracleError> {
    Ok(match oracle::solve_with_budget(g, lists, budget)?.status {
        Status::Sat(phi) => Some(phi),
        Status::Unsat => None,
    })
}

/// The 5-cycle with five equal 4-lists is the only exception: the oracle
/// proves it uncolorable and the solver reports it. Random 4-lists from
/// `{1..6}` that are not all equal are colorable by both engines.
pub fn c5(samples: usize, seed: u64, budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("c5");
    let c5 = cycle(5).expect("valid length");
    let uniform = ListAssignment::uniform(5, 1..=4);
    match oracle_sat(&c5, &uniform, budget) {
        Ok(sat) => rep.check(sat.is_none(), || "oracle colors C5 from uniform {1,2,3,4}".into()),
        Err(e) => rep.budget(format!("C5 uniform: {e}")),
    }
    let got = solver::solve(&c5, &uniform);
    rep.check(got == Err(Obstruction::IsC5Uniform), || format!("solver on uniform C5 returned {got:?}"));

    let outcomes: Vec<Outcome> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut out = Outcome::default();
            let mut rng = rng_for(seed, i as u64);
            let pool: Vec<Color> = (1..=6).collect();
            let lists = loop {
                let lists: Vec<Vec<Color>> =
                    (0..5).map(|_| pool.choose_multiple(&mut rng, 4).copied().collect()).collect();
                let la = ListAssignment::from_vecs(lists);
                if la.lists().iter().any(|l| l != la.get(0)) {
                    break la;
                }
            };
            match solver::solve(&c5, &lists) {
                Ok(s) => out.check(verify(&c5, &lists, &s.coloring).ok, || format!("sample {i}: solver output fails")),
                Err(e) => out.check(false, || format!("sample {i}: solver says {e}")),
            }
            match oracle_sat(&c5, &lists, budget) {
                Ok(Some(phi)) => out.check(verify(&c5, &lists, &phi).ok, || format!("sample {i}: oracle output fails")),
                Ok(None) => out.check(false, || format!("sample {i}: oracle says unsat for {}", lists.to_json())),
                Err(e) => out.budget = Some(format!("sample {i}: {e}")),
            }
            out
        })
        .collect();
    for o in outcomes {
        rep.absorb(o);
    }
    rep
}

/// The (degree+1) gadgets on hosts `K2` (at an end) and `P3` (at the
/// middle) are uncolorable from their lists.
pub fn gadget(budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("gadget");
    for (host, v0) in [(path(2), 0), (path(3), 1)] {
        match degree_plus_one_gadget(&host, v0) {
            Ok(inst) => check_unsat_instance(&mut rep, &inst, 1, budget),
            Err(e) => rep.fail(format!("gadget on host with {} vertices: {e}", host.n())),
        }
    }
    rep
}

/// `Θ_{1,4,4}`, `Θ_{1,4,7}` and `Θ_{1,7,7}` are uncolorable from their lists.
pub fn theta(budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("theta");
    for (a, b) in [(4, 4), (4, 7), (7, 7)] {
        match theta_hard_lists(a, b) {
            Ok(inst) => check_unsat_instance(&mut rep, &inst, 1, budget),
            Err(e) => rep.fail(format!("theta ({a},{b}): {e}")),
        }
    }
    rep
}

fn check_unsat_instance(rep: &mut SuiteReport, inst: &NamedInstance, k: usize, budget: u64) {
    let Some(lists) = &inst.lists else {
        rep.fail(format!("{}: no lists", inst.name));
        return;
    };
    rep.check(inst.expected == Expected::Unsat, || format!("{}: expected tag is {}", inst.name, inst.expected));
    rep.check(lists.is_degree_plus(&inst.graph, k), || format!("{}: lists smaller than degree+{k}", inst.name));
    match oracle_sat(&inst.graph, lists, budget) {
        Ok(sat) => rep.check(sat.is_none(), || format!("{}: oracle found a coloring", inst.name)),
        Err(e) => rep.budget(format!("{}: {e}", inst.name)),
    }
}

/// Uniform `{1,2,3}` lists on `C_l`, `3 <= l <= 9`: colorable exactly when
/// `3 | l`, witnessed by the repeating pattern `1,2,3`.
pub fn mod3(budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("mod3");
    for l in 3..=9 {
        let g = cycle(l).expect("valid length");
        let lists = ListAssignment::uniform(l, 1..=3);
        let want = l % 3 == 0;
        match oracle_sat(&g, &lists, budget) {
            Ok(sat) => rep.check(sat.is_some() == want, || format!("C{l}: oracle says sat={}", sat.is_some())),
            Err(e) => rep.budget(format!("C{l}: {e}")),
        }
        if want {
            let pattern = Coloring::from_total((0..l).map(|i| (i % 3) as Color + 1).collect());
            rep.check(verify(&g, &lists, &pattern).ok, || format!("C{l}: repeating 1,2,3 fails verification"));
        }
    }
    rep
}

/// Connected outerplanar graphs on `2..=max_n` vertices, `trials` random
/// (degree+2)-list assignments each over `{1..2Δ+4}`: the solver colors and
/// the coloring verifies; up to `oracle_max_n` vertices the oracle agrees.
pub fn corpus(max_n: usize, trials: usize, seed: u64, oracle_max_n: usize, budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("corpus");
    let mut stream = 0u64;
    for n in 2..=max_n {
        let graphs = match enumerate_connected_outerplanar(n) {
            Ok(gs) => gs,
            Err(e) => {
                rep.fail(format!("n = {n}: {e}"));
                continue;
            }
        };
        rep.notes.push(format!("n = {n}: {} graphs", graphs.len()));
        let base = stream;
        stream += graphs.len() as u64;
        let outcomes: Vec<Outcome> = graphs
            .par_iter()
            .enumerate()
            .map(|(gi, g)| corpus_graph(g, trials, rng_for(seed, base + gi as u64), n <= oracle_max_n, budget))
            .collect();
        for o in outcomes {
            rep.absorb(o);
        }
    }
    rep
}

fn corpus_graph(g: &Graph, trials: usize, mut rng: ChaCha8Rng, with_oracle: bool, budget: u64) -> Outcome {
    let mut out = Outcome::default();
    let universe: Vec<Color> = (1..=(2 * g.max_degree() + 4) as Color).collect();
    let g6 = g.to_graph6();
    for t in 0..trials {
        let lists = degree_plus_k_lists(g, 2, &universe, rng.gen()).expect("universe is large enough");
        let tag = || format!("{g6} trial {t} lists {}", lists.to_json());
        let solved = solver::solve(g, &lists);
        let oracle = if with_oracle {
            match oracle_sat(g, &lists, budget) {
                Ok(sat) => Some(sat),
                Err(e) => {
                    out.budget = Some(format!("{}: {e}", tag()));
                    None
                }
            }
        } else {
            None
        };
        match solved {
            Ok(s) => {
                out.check(verify(g, &lists, &s.coloring).ok, || format!("{}: solver output fails", tag()));
                if let Some(sat) = &oracle {
                    out.check(sat.is_some(), || format!("{}: oracle says unsat", tag()));
                }
            }
            // The single excluded case: C5 with five equal 4-lists.
            Err(Obstruction::IsC5Uniform) => {
                out.check(oracle.as_ref().is_none_or(|s| s.is_none()), || format!("{}: excluded case is sat", tag()));
            }
            Err(e) => out.check(false, || format!("{}: solver says {e}", tag())),
        }
    }
    out
}

/// Paths `u_0 … u_s`, `3 <= s <= max_s`, with random lists of sizes 2 at
/// the ends, 3 next to them and 4 elsewhere, over `{1..8}`: the
/// precolored-path rule always colors them.
pub fn paths(max_s: usize, trials: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("paths");
    let pool: Vec<Color> = (1..=8).collect();
    for s in 3..=max_s {
        let g = path(s + 1);
        let mut rng = rng_for(seed, s as u64);
        for t in 0..trials {
            let lists = ListAssignment::from_vecs((0..=s).map(|i| {
                let size = if i == 0 || i == s {
                    2
                } else if i == 1 || i == s - 1 {
                    3
                } else {
                    4
                };
                pool.choose_multiple(&mut rng, size).copied().collect::<Vec<_>>()
            }));
            match color_constrained_path(&lists) {
                Ok(phi) => rep.check(verify(&g, &lists, &phi).ok, || format!("s = {s} trial {t}: output fails")),
                Err(e) => rep.check(false, || format!("s = {s} trial {t} lists {}: {e}", lists.to_json())),
            }
        }
    }
    rep
}

/// Every 2-connected outerplanar non-cycle graph on `min_n..=max_n`
/// vertices and every anchor `x`: the structural search returns an ear or
/// ear-chain accepted by [`is_good_structure`].
pub fn ears(min_n: usize, max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("ears");
    for n in min_n.max(4)..=max_n {
        let graphs = match enumerate_connected_outerplanar(n) {
            Ok(gs) => gs,
            Err(e) => {
                rep.fail(format!("n = {n}: {e}"));
                continue;
            }
        };
        let blocks: Vec<&Graph> = graphs.iter().filter(|g| !g.is_cycle() && is_two_connected(g)).collect();
        rep.notes.push(format!("n = {n}: {} graphs", blocks.len()));
        let outcomes: Vec<Outcome> = blocks
            .par_iter()
            .map(|g| {
                let mut out = Outcome::default();
                let Some(emb) = outer_embedding(g) else {
                    out.check(false, || format!("{}: no outer embedding", g.to_graph6()));
                    return out;
                };
                for x in 0..g.n() {
                    match find_good_ear_or_chain(g, &emb, x) {
                        Ok(s) => out.check(is_good_structure(g, x, &s), || {
                            format!("{} x = {x}: rejected {s:?}", g.to_graph6())
                        }),
                        Err(e) => out.check(false, || format!("{} x = {x}: {e}", g.to_graph6())),
                    }
                }
                out
            })
            .collect();
        for o in outcomes {
            rep.absorb(o);
        }
    }
    rep
}

fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && block_decomposition(g).is_ok_and(|d| d.blocks.len() == 1)
}

/// Checks the defining conditions directly on the graph, without using the
/// search's own bookkeeping.
///
/// * Ear `u_1 … u_r`: `r >= 3`, distinct vertices, the closed walk
///   `u_1 … u_r u_1` uses edges of `g`, interior vertices have degree 2,
///   `d(u_r) = 3`, and `x` is `u_1` or outside the ear.
/// * Chain `v_1 … v_s`: `s >= 3`, `v_1 v_s` is an edge, each `H_i` is an ear
///   on `v_i v_{i+1}`, the ears share only root vertices, every inner `v_i`
///   has degree 4, and `x` is `v_1`, `v_s` or outside the chain.
pub fn is_good_structure(g: &Graph, x: usize, s: &EarStructure) -> bool {
    let in_range = |v: usize| v < g.n();
    let is_ear = |e: &Ear| {
        let vs = e.vertices();
        let distinct = vs.iter().collect::<BTreeSet<_>>().len() == vs.len();
        vs.len() >= 3
            && distinct
            && vs.iter().all(|&v| in_range(v))
            && (0..vs.len()).all(|i| g.has_edge(vs[i], vs[(i + 1) % vs.len()]))
            && e.interior.iter().all(|&v| g.degree(v) == 2)
    };
    match s {
        EarStructure::Ear(e) => is_ear(e) && g.degree(e.last()) == 3 && (x == e.first() || !e.vertices().contains(&x)),
        EarStructure::Chain(c) => {
            let sz = c.path.len();
            if sz < 3 || c.ears.len() != sz - 1 || !c.path.iter().all(|&v| in_range(v)) {
                return false;
            }
            let (v1, vs) = (c.path[0], c.path[sz - 1]);
            let mut seen: BTreeSet<usize> = c.path.iter().copied().collect();
            if seen.len() != sz || !g.has_edge(v1, vs) {
                return false;
            }
            for (i, e) in c.ears.iter().enumerate() {
                if !is_ear(e) || e.root != (c.path[i], c.path[i + 1]) {
                    return false;
                }
                if !e.interior.iter().all(|&v| seen.insert(v)) {
                    return false;
                }
            }
            c.path[1..sz - 1].iter().all(|&v| g.degree(v) == 4) && (x == v1 || x == vs || !seen.contains(&x))
        }
    }
}

/// All connected graphs on `1..=max_n` vertices and every assignment of
/// 3-subsets of `{1,2,3,4}`: the oracle's verdict matches plain enumeration
/// of the product of the lists.
pub fn oracle_consistency(max_n: usize, budget: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle-consistency");
    let subsets: Vec<Vec<Color>> = (1..=4).map(|skip| (1..=4).filter(|&c| c != skip).collect()).collect();
    for n in 1..=max_n {
        let graphs = match enumerate_connected(n) {
            Ok(gs) => gs,
            Err(e) => {
                rep.fail(format!("n = {n}: {e}"));
                continue;
            }
        };
        rep.notes.push(format!("n = {n}: {} graphs", graphs.len()));
        let outcomes: Vec<Outcome> = graphs
            .par_iter()
            .map(|g| {
                let mut out = Outcome::default();
                let total = 4usize.pow(n as u32);
                for code in 0..total {
                    let lists =
                        ListAssignment::from_vecs((0..n).map(|v| subsets[(code / 4usize.pow(v as u32)) % 4].clone()));
                    let naive = naive_sat(g, &lists);
                    match oracle_sat(g, &lists, budget) {
                        Ok(sat) => {
                            let valid = sat.as_ref().is_none_or(|phi| verify(g, &lists, phi).ok);
                            out.check(sat.is_some() == naive && valid, || {
                                format!(
                                    "{} lists {}: oracle {} naive {naive}",
                                    g.to_graph6(),
                                    lists.to_json(),
                                    sat.is_some()
                                )
                            });
                        }
                        Err(e) => out.budget = Some(format!("{}: {e}", g.to_graph6())),
                    }
                }
                out
            })
            .collect();
        for o in outcomes {
            rep.absorb(o);
        }
    }
    rep
}

/// Tries every element of the product of the lists.
fn naive_sat(g: &Graph, lists: &ListAssignment) -> bool {
    let opts: Vec<Vec<Color>> = lists.lists().iter().map(|l| l.iter().copied().collect()).collect();
    let mut idx = vec![0usize; g.n()];
    loop {
        let phi = Coloring::from_total(idx.iter().enumerate().map(|(v, &i)| opts[v][i]).collect());
        if verify(g, lists, &phi).ok {
            return true;
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return false;
            }
            idx[v] += 1;
            if idx[v] < opts[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_NODE_BUDGET;

    #[test]
    fn small_runs_pass() {
        assert!(c5(50, 1, DEFAULT_NODE_BUDGET).passed);
        assert!(mod3(DEFAULT_NODE_BUDGET).passed);
        assert!(paths(5, 50, 3).passed);
        assert!(corpus(5, 5, 9, 5, DEFAULT_NODE_BUDGET).passed);
        assert!(ears(4, 6).passed);
        assert!(oracle_consistency(3, DEFAULT_NODE_BUDGET).passed);
    }

    #[test]
    fn goodness_predicate_rejects_bad_structures() {
        // Hexagon 0..5 with chord (0,3): ears 0-1-2-3 and 3-4-5-0.
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::build(6, &edges).unwrap();
        let good = EarStructure::Ear(Ear { root: (0, 3), interior: vec![1, 2] });
        assert!(is_good_structure(&g, 0, &good));
        assert!(is_good_structure(&g, 5, &good));
        assert!(!is_good_structure(&g, 2, &good));
        assert!(!is_good_structure(&g, 3, &good));
        let not_an_ear = EarStructure::Ear(Ear { root: (0, 3), interior: vec![1, 4] });
        assert!(!is_good_structure(&g, 5, &not_an_ear));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let rep = theta(10);
        assert!(!rep.passed);
        assert!(rep.budget_exhausted);
    }

    #[test]
    fn naive_enumeration_examples() {
        let c4 = cycle(4).unwrap();
        assert!(!naive_sat(&c4, &ListAssignment::uniform(4, 1..=3)));
        assert!(naive_sat(&c4, &ListAssignment::uniform(4, 1..=4)));
    }
}
