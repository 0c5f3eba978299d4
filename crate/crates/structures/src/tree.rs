use crate::EdgeAcc;
use graph_core::{vocab, vocab::roles, LabeledGraph, NodeId};

/// A perfect binary tree of the given height with every layer joined into a
/// path. Node (depth, index) has id `2^depth - 1 + index`; layer paths run in
/// index order, `R` toward the larger index.
pub struct TreeLike {
    pub graph: LabeledGraph,
    pub height: u32,
}

impl TreeLike {
    pub fn build(height: u32) -> TreeLike {
        let n = (1u32 << (height + 1)) - 1;
        let mut acc = EdgeAcc::new();
        for d in 0..=height {
            let width = 1u32 << d;
            for i in 0..width {
                let v = Self::id(d, i);
                if d < height {
                    acc.add(v, Self::id(d + 1, 2 * i), (roles::TREE, "CL"), (roles::TREE, "P"));
                    acc.add(v, Self::id(d + 1, 2 * i + 1), (roles::TREE, "CR"), (roles::TREE, "P"));
                }
                if i + 1 < width {
                    acc.add(v, Self::id(d, i + 1), (roles::TREE, "R"), (roles::TREE, "L"));
                }
            }
        }
        TreeLike { graph: acc.build(n), height }
    }

    pub fn id(depth: u32, index: u32) -> NodeId {
        (1 << depth) - 1 + index
    }

    pub fn coords(v: NodeId) -> (u32, u32) {
        let depth = (v + 1).ilog2();
        (depth, v + 1 - (1 << depth))
    }

    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    /// Instance for the marked-node search problem: every node carries a mark
    /// flag, set on the listed nodes.
    pub fn marked_instance(&self, marks: &[NodeId]) -> LabeledGraph {
        self.graph.with_node_inputs(|v, _| {
            Some(vocab::with_mark(&vocab::struct_node(), marks.contains(&v)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{path_trace, Traced};

    #[test]
    fn coords_round_trip() {
        for d in 0..5 {
            for i in 0..(1 << d) {
                assert_eq!(TreeLike::coords(TreeLike::id(d, i)), (d, i));
            }
        }
    }

    #[test]
    fn counts_and_traces() {
        let t = TreeLike::build(3);
        assert_eq!(t.n(), 15);
        // Parent edge from a leaf, then layer steps.
        let leaf = TreeLike::id(3, 5);
        assert_eq!(
            path_trace(&t.graph, leaf, &[vocab::tree_edge("P")]),
            Traced::Node(TreeLike::id(2, 2))
        );
        assert_eq!(
            path_trace(&t.graph, leaf, &[vocab::tree_edge("R"), vocab::tree_edge("R")]),
            Traced::Node(TreeLike::id(3, 7))
        );
        assert_eq!(path_trace(&t.graph, TreeLike::id(3, 7), &[vocab::tree_edge("R")]), Traced::Undefined);
        // Sibling through the parent and directly along the layer agree.
        assert_eq!(
            path_trace(&t.graph, TreeLike::id(2, 2), &[vocab::tree_edge("CL"), vocab::tree_edge("R")]),
            path_trace(&t.graph, TreeLike::id(2, 2), &[vocab::tree_edge("CR")])
        );
        let root = TreeLike::id(0, 0);
        assert_eq!(t.graph.degree(root), 2);
    }
}
