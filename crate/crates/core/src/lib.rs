//! Proper conflict-free list coloring of outerplanar graphs.
//!
//! A coloring is *proper conflict-free* when adjacent vertices get distinct
//! colors and every non-isolated vertex sees some color exactly once among
//! its neighbors. The crate provides:
//!
//! * [`graph`]: simple undirected graphs with graph6 / edge-list I/O,
//! * [`kernel`]: list assignments, colorings and the verifier,
//! * [`structure`]: blocks, outerplanarity, ears and ear-chains,
//! * [`solver`]: a constructive coloring from (degree+2)-lists,
//! * [`oracle`]: exhaustive search used as ground truth,
//! * [`generators`]: graph families, hard instances and corpus enumeration,
//! * [`suites`]: the end-to-end checks behind `pcfcolor check`.

pub mod canon;
pub mod generators;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod solver;
pub mod structure;
pub mod suites;
