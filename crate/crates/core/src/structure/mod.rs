//! Block structure, outerplane embeddings and the ear / ear-chain structures
//! that drive the inductive coloring.

mod blocks;
mod ears;
mod outerplanar;

pub use blocks::{block_decomposition, BlockDecomposition};
pub use ears::{ears, find_good_ear_or_chain, Ear, EarChain, EarStructure};
pub use outerplanar::{chords_cross, is_outerplanar, outer_embedding, validate, OuterEmbedding, Outerplanarity};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is a cycle")]
    IsCycle,
    #[error("graph has only {0} vertices")]
    TooSmall(usize),
    #[error("block {0:?} is not outerplanar")]
    NotOuterplanar(Vec<usize>),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("no good ear or ear-chain found")]
    NoGoodStructure,
}

/// How the inductive step treats the chosen end block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndBlockKind {
    K2,
    /// Cycle order starting at the anchor.
    Cycle(Vec<usize>),
    /// Good ear, `u_r` the good endpoint.
    Ear(Ear),
    /// Ear with at least six vertices avoiding the anchor entirely.
    LongEar(Ear),
    /// Good ear-chain with the anchor outside `V(H) \ {v_1}` and a last ear
    /// of at most five vertices.
    EarChain(EarChain),
}

impl EndBlockKind {
    pub fn tag(&self) -> &'static str {
        match self {
            EndBlockKind::K2 => "K2",
            EndBlockKind::Cycle(_) => "Cycle",
            EndBlockKind::Ear(_) => "EarCase",
            EndBlockKind::LongEar(_) => "LongEarCase",
            EndBlockKind::EarChain(_) => "EarChainCase",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndBlockCase {
    pub block: Vec<usize>,
    pub anchor: usize,
    pub kind: EndBlockKind,
}

/// Picks the end block with the smallest minimum vertex, its anchor (the
/// block's cut vertex, or the block's smallest vertex when the graph is
/// 2-connected) and the case that applies to it.
pub fn classify_end_block(decomp: &BlockDecomposition, g: &Graph) -> Result<EndBlockCase, StructureError> {
    let b = decomp.end_blocks().into_iter().min_by_key(|&b| decomp.blocks[b][0]).ok_or(StructureError::Disconnected)?;
    let block = decomp.blocks[b].clone();
    let anchor = decomp.block_tree[b].first().copied().unwrap_or(block[0]);
    let kind = classify_block(g, &block, anchor)?;
    Ok(EndBlockCase { block, anchor, kind })
}

/// Case analysis for one block with anchor `x`; all returned vertices are
/// indices of `g`.
pub fn classify_block(g: &Graph, block: &[usize], x: usize) -> Result<EndBlockKind, StructureError> {
    if block.len() <= 2 {
        return Ok(EndBlockKind::K2);
    }
    let (h, map) = g.induced_subgraph(block);
    let lx = block.iter().position(|&v| v == x).ok_or(StructureError::VertexOutOfRange(x))?;
    if let Some(mut order) = h.cycle_order() {
        let i = order.iter().position(|&v| v == lx).expect("anchor on cycle");
        order.rotate_left(i);
        return Ok(EndBlockKind::Cycle(order.into_iter().map(|v| map[v]).collect()));
    }
    let emb = outer_embedding(&h).ok_or_else(|| StructureError::NotOuterplanar(block.to_vec()))?;
    match find_good_ear_or_chain(&h, &emb, lx)?.map_vertices(&map) {
        EarStructure::Ear(e) => Ok(EndBlockKind::Ear(e)),
        EarStructure::Chain(mut c) => {
            if c.root().1 == x {
                c = c.reversed();
            }
            let last = c.ears.last().expect("chain has ears");
            if last.order() >= 6 {
                Ok(EndBlockKind::LongEar(last.clone()))
            } else {
                Ok(EndBlockKind::EarChain(c))
            }
        }
    }
}
