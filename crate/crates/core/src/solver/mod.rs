//! Constructive proper conflict-free coloring of connected outerplanar graphs
//! from (degree+2)-lists.
//!
//! The solver follows an induction on the number of vertices: pick an end
//! block `B` with anchor `x`, delete part of `B`, color the smaller graph
//! recursively, then color the deleted part by a rule depending on the shape
//! of `B`:
//!
//! * a pendant edge,
//! * a cycle hanging off `x`,
//! * an ear whose far end has degree 3 ([`StepTag::GoodEar`]),
//! * an ear on at least six vertices avoiding `x` ([`StepTag::LongEar`]),
//! * an ear-chain avoiding `x` ([`StepTag::EarChain`]).
//!
//! Every rule picks the smallest admissible color. Lists longer than needed
//! are used as given for the recursive part; the vertices a rule colors use
//! their `d(v) + 2` smallest colors, which is exactly what the rule's
//! counting needs. The coloring of every intermediate graph is checked by
//! [`crate::kernel::verify`]; a failure there would be a bug and aborts with
//! the trace so far.

mod cases;
mod primitives;
mod trace;

pub use primitives::{color_constrained_path, color_cycle, extend_ear};
pub use trace::{ChainSub, LongEarSub, SolverTrace, StepTag, TraceStep};

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::kernel::{unique_colors, verify, Color, Coloring, ListAssignment};
use crate::structure::{is_outerplanar, Outerplanarity};

/// Why an input cannot be colored (or is outside the solver's guarantee).
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason")]
pub enum Obstruction {
    /// A 5-cycle whose five lists are one and the same 4-set.
    #[error("5-cycle with five identical lists of size 4")]
    IsC5Uniform,
    #[error("block {block:?} is not outerplanar")]
    NotOuterplanar { block: Vec<usize> },
    #[error("vertex {vertex} has {have} colors but needs {need}")]
    ListTooSmall { vertex: usize, have: usize, need: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{found} lists given for {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
}

impl Obstruction {
    pub fn reason(&self) -> &'static str {
        match self {
            Obstruction::IsC5Uniform => "IsC5Uniform",
            Obstruction::NotOuterplanar { .. } => "NotOuterplanar",
            Obstruction::ListTooSmall { .. } => "ListTooSmall",
            Obstruction::Disconnected => "Disconnected",
            Obstruction::LengthMismatch { .. } => "LengthMismatch",
        }
    }
}

/// Contract violations of the standalone building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("path of length {0} is shorter than 3")]
    PathTooShort(usize),
    #[error("vertex {vertex} has {have} colors but needs {need}")]
    ListTooSmall { vertex: usize, have: usize, need: usize },
    #[error("ear root {vertex} has neither a unique neighbor color nor a single neighbor color")]
    EarPrecondition { vertex: usize },
    #[error("not an ear of the host graph")]
    BadEar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub coloring: Coloring,
    pub trace: SolverTrace,
}

/// Colors a connected outerplanar graph from lists with `|L(v)| >= d(v) + 2`.
///
/// Succeeds on every such input except the 5-cycle with five equal 4-lists.
/// Inputs outside the guarantee are reported as an [`Obstruction`].
pub fn solve(g: &Graph, lists: &ListAssignment) -> Result<Solved, Obstruction> {
    let n = g.n();
    if lists.len() != n {
        return Err(Obstruction::LengthMismatch { expected: n, found: lists.len() });
    }
    if !g.is_connected() {
        return Err(Obstruction::Disconnected);
    }
    if let Outerplanarity::No { block } = is_outerplanar(g) {
        return Err(Obstruction::NotOuterplanar { block });
    }
    if let Some(v) = (0..n).find(|&v| lists.get(v).len() < g.degree(v) + 2) {
        return Err(Obstruction::ListTooSmall { vertex: v, have: lists.get(v).len(), need: g.degree(v) + 2 });
    }
    if is_c5_uniform(g, lists) {
        return Err(Obstruction::IsC5Uniform);
    }
    let mut run = Run { g, phi: Coloring::uncolored(n), trace: SolverTrace::default() };
    let all: Vec<usize> = (0..n).collect();
    run.rec(&all, lists, 0);
    Ok(Solved { coloring: run.phi, trace: run.trace })
}

fn is_c5_uniform(g: &Graph, lists: &ListAssignment) -> bool {
    g.n() == 5 && g.is_cycle() && lists.get(0).len() == 4 && lists.lists().iter().all(|l| l == lists.get(0))
}

/// Mutable state of one solve call. Vertex ids are always those of the input
/// graph; the current graph is the subgraph induced by an `alive` set.
pub(crate) struct Run<'a> {
    g: &'a Graph,
    phi: Coloring,
    trace: SolverTrace,
}

impl Run<'_> {
    fn bug(&self, msg: &str) -> ! {
        panic!("internal solver failure: {msg}\ntrace so far:\n{}", self.trace.to_json_lines())
    }

    fn color(&self, v: usize) -> Color {
        self.phi.get(v).unwrap_or_else(|| self.bug(&format!("vertex {v} expected to be colored")))
    }

    /// Colors occurring exactly once among the colored neighbors of `v`.
    fn unique(&self, v: usize) -> BTreeSet<Color> {
        unique_colors(self.g, &self.phi, v).expect("vertex in range")
    }

    fn min_unique(&self, v: usize) -> Color {
        self.unique(v).first().copied().unwrap_or_else(|| self.bug(&format!("vertex {v} has no unique color")))
    }

    /// The `deg + 2` smallest colors of `L(v)`.
    fn trimmed(lists: &ListAssignment, v: usize, deg: usize) -> Vec<Color> {
        lists.get(v).iter().copied().take(deg + 2).collect()
    }

    fn choose(&self, list: &[Color], forbid: &[Color], what: &str) -> Color {
        primitives::pick(list, forbid)
            .unwrap_or_else(|| self.bug(&format!("no color for {what}: list {list:?}, forbidden {forbid:?}")))
    }

    fn fix(&mut self, v: usize, c: Color, fixed: &mut Vec<(usize, Color)>) {
        self.phi.set(v, c);
        fixed.push((v, c));
    }

    fn push(&mut self, depth: usize, tag: StepTag, removed: Vec<usize>, fixed: Vec<(usize, Color)>) {
        self.trace.steps.push(TraceStep { depth, tag, removed, fixed });
    }

    /// Colors the subgraph induced by `alive` (sorted) from `lists`.
    fn rec(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize) {
        let (h, map) = self.g.induced_subgraph(alive);
        debug_assert!(h.is_connected(), "intermediate graph must be connected");
        debug_assert!(is_outerplanar(&h).is_yes(), "intermediate graph must be outerplanar");
        if h.n() <= 3 {
            self.base(&h, &map, lists, depth);
        } else if let Some(order) = h.cycle_order() {
            let cyc: Vec<BTreeSet<Color>> = order.iter().map(|&i| lists.get(map[i]).clone()).collect();
            let cols = primitives::cycle_colors(&cyc).unwrap_or_else(|e| self.bug(&format!("cycle: {e}")));
            let mut fixed = Vec::new();
            for (i, &c) in order.iter().zip(&cols) {
                self.fix(map[*i], c, &mut fixed);
            }
            self.push(depth, StepTag::CycleProp, Vec::new(), fixed);
        } else {
            self.dispatch(&h, &map, alive, lists, depth);
        }
        let local = Coloring::from_options(map.iter().map(|&v| self.phi.get(v)).collect());
        let verdict = verify(&h, &lists.restrict(&map), &local);
        if !verdict.ok {
            let bad: Vec<_> = verdict.violations.iter().map(|x| (map[x.vertex], x.reason)).collect();
            self.bug(&format!("coloring at depth {depth} fails verification: {bad:?}"));
        }
    }

    /// Graphs on at most three vertices.
    fn base(&mut self, h: &Graph, map: &[usize], lists: &ListAssignment, depth: usize) {
        let mut fixed = Vec::new();
        let order: Vec<usize> = match h.n() {
            3 if h.m() == 2 => {
                // Path: both ends first (distinct colors), then the center.
                let center = (0..3).find(|&v| h.degree(v) == 2).expect("path center");
                let mut ends: Vec<usize> = (0..3).filter(|&v| v != center).collect();
                ends.push(center);
                ends
            }
            k => (0..k).collect(),
        };
        let mut used = Vec::new();
        for i in order {
            let v = map[i];
            let c = self.choose(&Self::trimmed(lists, v, h.degree(i)), &used, "small graph");
            used.push(c);
            self.fix(v, c, &mut fixed);
        }
        self.push(depth, StepTag::Base, Vec::new(), fixed);
    }
}
