use std::collections::BTreeSet;

use crate::graph::Graph;

use super::StructureError;

/// Blocks (maximal 2-connected subgraphs or bridges) and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, ordered by smallest vertex.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// For each block, the cut vertices it contains.
    pub block_tree: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Blocks containing at most one cut vertex.
    pub fn end_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.block_tree[b].len() <= 1).collect()
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn blocks_containing(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].binary_search(&v).is_ok()).collect()
    }
}

/// Block decomposition of a connected graph.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    Ok(decompose(g))
}

/// Hopcroft–Tarjan with an explicit edge stack; works on any graph, isolated
/// vertices become singleton blocks.
pub(crate) fn decompose(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        // frame: (vertex, parent, next neighbor index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(frame) = frames.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut set = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            set.insert(a);
                            set.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(set.into_iter().collect());
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let block_tree = blocks.iter().map(|b| b.iter().copied().filter(|&v| count[v] >= 2).collect()).collect();
    BlockDecomposition { blocks, cut_vertices, block_tree }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_one_block() {
        let c5 = crate::generators::cycle(5).unwrap();
        let d = block_decomposition(&c5).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn path_blocks() {
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = block_decomposition(&p4).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(d.cut_vertices, vec![1, 2]);
        assert_eq!(d.end_blocks(), vec![0, 2]);
    }

    #[test]
    fn bowtie() {
        let g = Graph::build(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.cut_vertices, vec![2]);
        assert_eq!(d.block_tree, vec![vec![2], vec![2]]);
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g =
            Graph::build(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 5), (0, 7)])
                .unwrap();
        let d = block_decomposition(&g).unwrap();
        for (u, v) in g.edges() {
            let hits = d.blocks.iter().filter(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()).count();
            assert_eq!(hits, 1, "edge {u}-{v}");
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(block_decomposition(&g), Err(StructureError::Disconnected));
        assert_eq!(block_decomposition(&Graph::empty(1)).unwrap().blocks, vec![vec![0]]);
    }
}
