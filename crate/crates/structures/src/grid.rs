use crate::EdgeAcc;
use graph_core::{vocab, vocab::roles, LabeledGraph, NodeId};

/// An `h x w` grid. Rows grow downward (`D` toward larger row); columns grow
/// leftward, so column 0 is the rightmost and `L` leads toward larger column
/// index. Node (row, col) has id `row * w + col`.
pub struct Grid {
    pub graph: LabeledGraph,
    pub h: u32,
    pub w: u32,
}

impl Grid {
    pub fn build(h: u32, w: u32) -> Grid {
        assert!(h >= 1 && w >= 1);
        let mut acc = EdgeAcc::new();
        for r in 0..h {
            for c in 0..w {
                let v = r * w + c;
                if r + 1 < h {
                    acc.add(v, v + w, (roles::GRID, "D"), (roles::GRID, "U"));
                }
                if c + 1 < w {
                    acc.add(v, v + 1, (roles::GRID, "L"), (roles::GRID, "R"));
                }
            }
        }
        Grid { graph: acc.build(h * w), h, w }
    }

    pub fn id(&self, row: u32, col: u32) -> NodeId {
        row * self.w + col
    }

    pub fn coords(&self, v: NodeId) -> (u32, u32) {
        (v / self.w, v % self.w)
    }
}

/// A grid at least as tall as wide whose nodes carry the one valid bit
/// certificate: ones exactly on the diagonal walked down-left from the
/// top-right corner.
pub struct VGrid {
    pub grid: Grid,
    pub graph: LabeledGraph,
}

impl VGrid {
    pub fn build(h: u32, w: u32) -> VGrid {
        assert!(h >= w, "certificate requires height >= width");
        let grid = Grid::build(h, w);
        let graph = grid
            .graph
            .with_node_inputs(|v, _| Some(vocab::bit_node(u8::from(Self::diagonal_bit(&grid, v)))));
        VGrid { grid, graph }
    }

    fn diagonal_bit(grid: &Grid, v: NodeId) -> bool {
        let (r, c) = grid.coords(v);
        r == c && r < grid.w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{path_trace, Traced};

    #[test]
    fn orientation() {
        let g = Grid::build(3, 4);
        let v = g.id(1, 1);
        assert_eq!(path_trace(&g.graph, v, &[vocab::grid_edge("U")]), Traced::Node(g.id(0, 1)));
        assert_eq!(path_trace(&g.graph, v, &[vocab::grid_edge("D")]), Traced::Node(g.id(2, 1)));
        assert_eq!(path_trace(&g.graph, v, &[vocab::grid_edge("L")]), Traced::Node(g.id(1, 2)));
        assert_eq!(path_trace(&g.graph, v, &[vocab::grid_edge("R")]), Traced::Node(g.id(1, 0)));
        // The rightmost column has no R half-edge; the top row no U.
        assert_eq!(path_trace(&g.graph, g.id(1, 0), &[vocab::grid_edge("R")]), Traced::Undefined);
        assert_eq!(path_trace(&g.graph, g.id(0, 2), &[vocab::grid_edge("U")]), Traced::Undefined);
    }

    #[test]
    fn diagonal_certificate() {
        let v = VGrid::build(5, 3);
        let ones: Vec<(u32, u32)> = (0..v.grid.h)
            .flat_map(|r| (0..v.grid.w).map(move |c| (r, c)))
            .filter(|&(r, c)| {
                vocab::bit_of(v.graph.node_input(v.grid.id(r, c)).unwrap()) == Some(1)
            })
            .collect();
        assert_eq!(ones, vec![(0, 0), (1, 1), (2, 2)]);
    }
}
