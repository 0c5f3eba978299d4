use crate::EdgeAcc;
use graph_core::{vocab, vocab::roles, LabeledGraph, NodeId};

/// A `2^l x w` grid whose columns are the leaf layers of `w` height-`l`
/// layered trees. Grid row `r` of column `c` is leaf position `2^l - 1 - r`
/// of tree `c`, so a vertical step down pairs grid `D` with tree layer `L`
/// on the same half-edge.
pub struct AliasedGrid {
    pub graph: LabeledGraph,
    pub l: u32,
    pub w: u32,
    pub h: u32,
}

impl AliasedGrid {
    pub fn build(l: u32, w: u32) -> AliasedGrid {
        assert!(w >= 1);
        let h = 1u32 << l;
        let per_tree = 2 * h - 1;
        let tree_id = |c: u32, d: u32, i: u32| c * per_tree + (1 << d) - 1 + i;
        let mut acc = EdgeAcc::new();
        for c in 0..w {
            for d in 0..=l {
                for i in 0..(1u32 << d) {
                    let v = tree_id(c, d, i);
                    if d < l {
                        acc.add(v, tree_id(c, d + 1, 2 * i), (roles::TREE, "CL"), (roles::TREE, "P"));
                        acc.add(v, tree_id(c, d + 1, 2 * i + 1), (roles::TREE, "CR"), (roles::TREE, "P"));
                    }
                    if i + 1 < (1 << d) {
                        let right = tree_id(c, d, i + 1);
                        if d == l {
                            // Leaf layer: position i+1 sits one grid row up.
                            acc.add(v, right, (roles::TREE, "R"), (roles::TREE, "L"));
                            acc.add(v, right, (roles::GRID, "U"), (roles::GRID, "D"));
                        } else {
                            acc.add(v, right, (roles::TREE, "R"), (roles::TREE, "L"));
                        }
                    }
                }
            }
        }
        for r in 0..h {
            for c in 0..w.saturating_sub(1) {
                let v = tree_id(c, l, h - 1 - r);
                let left = tree_id(c + 1, l, h - 1 - r);
                acc.add(v, left, (roles::GRID, "L"), (roles::GRID, "R"));
            }
        }
        AliasedGrid { graph: acc.build(w * per_tree), l, w, h }
    }

    /// Tree node (depth, index) of column `c`.
    pub fn tree_id(&self, c: u32, d: u32, i: u32) -> NodeId {
        c * (2 * self.h - 1) + (1 << d) - 1 + i
    }

    /// Grid node at (row, col).
    pub fn grid_id(&self, row: u32, col: u32) -> NodeId {
        self.tree_id(col, self.l, self.h - 1 - row)
    }

    pub fn is_grid(&self, v: NodeId) -> bool {
        let within = v % (2 * self.h - 1);
        within >= self.h - 1
    }

    pub fn grid_coords(&self, v: NodeId) -> Option<(u32, u32)> {
        let col = v / (2 * self.h - 1);
        let within = v % (2 * self.h - 1);
        (within >= self.h - 1).then(|| (self.h - 1 - (within - (self.h - 1)), col))
    }

    /// Labels every node for the aliased-grid labeling problem: internal tree
    /// nodes plain, grid nodes carrying `bits(row, col)`.
    pub fn labeled(&self, bits: impl Fn(u32, u32) -> u8) -> LabeledGraph {
        self.graph.with_node_inputs(|v, _| {
            Some(match self.grid_coords(v) {
                Some((r, c)) => vocab::ag_grid(bits(r, c)),
                None => vocab::ag_tree(),
            })
        })
    }

    /// The one valid certificate assignment for this structure's grid part.
    pub fn diagonal_bits(&self) -> impl Fn(u32, u32) -> u8 + '_ {
        move |r, c| u8::from(r == c && r < self.w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{path_trace, path_trace_by, Traced};

    #[test]
    fn aliasing_counts() {
        let ag = AliasedGrid::build(3, 4);
        assert_eq!(ag.graph.n(), 4 * 15);
        assert_eq!(ag.h, 8);
        assert!(ag.is_grid(ag.grid_id(5, 2)));
        assert!(!ag.is_grid(ag.tree_id(2, 1, 1)));
        assert_eq!(ag.grid_coords(ag.grid_id(5, 2)), Some((5, 2)));
    }

    #[test]
    fn fused_vertical_edges() {
        let ag = AliasedGrid::build(2, 2);
        let v = ag.grid_id(1, 0);
        // One physical edge serves both the grid step down and the layer step left.
        let down = path_trace_by(&ag.graph, v, &[|l: &graph_core::Label| {
            vocab::edge_has(l, roles::GRID, "D")
        }]);
        let left_in_layer = path_trace_by(&ag.graph, v, &[|l: &graph_core::Label| {
            vocab::edge_has(l, roles::TREE, "L")
        }]);
        assert_eq!(down, Traced::Node(ag.grid_id(2, 0)));
        assert_eq!(down, left_in_layer);
        // Horizontal edges carry no tree component.
        let lw = path_trace(&ag.graph, v, &[vocab::grid_edge("L")]);
        assert_eq!(lw, Traced::Node(ag.grid_id(1, 1)));
    }

    #[test]
    fn grid_rows_align_with_leaf_positions() {
        let ag = AliasedGrid::build(2, 1);
        // Row 0 is the highest leaf position; going D decreases position.
        assert_eq!(ag.grid_id(0, 0), AliasedGrid::build(2, 1).tree_id(0, 2, 3));
        let top = ag.grid_id(0, 0);
        assert_eq!(path_trace(&ag.graph, top, &[vocab::tree_edge("P")]), Traced::Node(ag.tree_id(0, 1, 1)));
    }
}
