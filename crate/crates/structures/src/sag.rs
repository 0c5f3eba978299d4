use crate::EdgeAcc;
use graph_core::{vocab, vocab::roles, Label, LabeledGraph, NodeId};
use tm_engine::Run;

/// One node of a spine-aliased grid, by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKey {
    /// Transcript cell (row, col) of the `2^l x 2^lp` bottom grid.
    Bottom { row: u32, col: u32 },
    /// Cell (row, col) of the `l x 2^lp` side grid; row `l-1` holds the
    /// column-tree roots.
    Side { row: u32, col: u32 },
    /// Column-tree node of `col` off the spine: depth < l, index >= 1.
    ColInner { col: u32, d: u32, i: u32 },
    /// Top-tree node above the roots row: depth < lp.
    TopInner { d: u32, i: u32 },
}

/// A spine-aliased grid: one column tree per bottom-grid column with its
/// leaves aliased to the column and its left spine aliased to a side-grid
/// column, plus a top tree whose leaves are the column-tree roots.
pub struct Sag {
    pub graph: LabeledGraph,
    pub l: u32,
    pub lp: u32,
    /// Bottom grid height `2^l`.
    pub h: u32,
    /// Width `2^lp` shared by the bottom grid, side grid, and roots row.
    pub w: u32,
    keys: Vec<NodeKey>,
}

impl Sag {
    pub fn build(l: u32, lp: u32) -> Sag {
        assert!(l >= 1, "side grid needs at least one row");
        let h = 1u32 << l;
        let w = 1u32 << lp;
        // Ids: bottom cells row-major, then side cells row-major, then
        // per-column off-spine tree nodes, then top-tree internals.
        let bottom = |row: u32, col: u32| row * w + col;
        let side = |row: u32, col: u32| h * w + row * w + col;
        let col_inner_base = (h + l) * w;
        let per_col_inner = h - 1 - l; // internal nodes minus the spine
        let mut inner_ids = std::collections::HashMap::new();
        let mut next = col_inner_base;
        for col in 0..w {
            for d in 1..l {
                for i in 1..(1u32 << d) {
                    inner_ids.insert((col, d, i), next);
                    next += 1;
                }
            }
        }
        debug_assert_eq!(next, col_inner_base + per_col_inner * w);
        let top_base = next;
        for d in 0..lp {
            for i in 0..(1u32 << d) {
                inner_ids.insert((w, d, i), top_base + (1 << d) - 1 + i);
            }
        }
        let n = top_base + w - 1;

        // Column tree node (d, i) of column `col`, resolving aliases.
        let col_node = |col: u32, d: u32, i: u32| -> NodeId {
            if d == l {
                bottom(h - 1 - i, col)
            } else if i == 0 {
                side(l - 1 - d, col)
            } else {
                inner_ids[&(col, d, i)]
            }
        };
        // Top tree node (d, i): leaves are column-tree roots, position = column.
        let top_node = |d: u32, i: u32| -> NodeId {
            if d == lp {
                side(l - 1, i)
            } else {
                inner_ids[&(w, d, i)]
            }
        };

        let mut acc = EdgeAcc::new();
        for col in 0..w {
            for d in 0..=l {
                for i in 0..(1u32 << d) {
                    let v = col_node(col, d, i);
                    if d < l {
                        // Child edges; the spine edge between two side cells
                        // also carries the side grid's vertical step.
                        let cl = col_node(col, d + 1, 2 * i);
                        acc.add(v, cl, (roles::COL_TREE, "CL"), (roles::COL_TREE, "P"));
                        if i == 0 && d + 1 < l {
                            acc.add(v, cl, (roles::SIDE_GRID, "U"), (roles::SIDE_GRID, "D"));
                        }
                        let cr = col_node(col, d + 1, 2 * i + 1);
                        acc.add(v, cr, (roles::COL_TREE, "CR"), (roles::COL_TREE, "P"));
                    }
                    if i + 1 < (1 << d) {
                        let right = col_node(col, d, i + 1);
                        acc.add(v, right, (roles::COL_TREE, "R"), (roles::COL_TREE, "L"));
                        if d == l {
                            acc.add(v, right, (roles::BOTTOM_GRID, "U"), (roles::BOTTOM_GRID, "D"));
                        }
                    }
                }
            }
        }
        // Bottom grid horizontals: column c+1 lies leftward.
        for row in 0..h {
            for col in 0..w - 1 {
                acc.add(
                    bottom(row, col),
                    bottom(row, col + 1),
                    (roles::BOTTOM_GRID, "L"),
                    (roles::BOTTOM_GRID, "R"),
                );
            }
        }
        // Side grid horizontals; on the roots row they are also the top
        // tree's leaf-layer edges (leaf position grows leftward).
        for row in 0..l {
            for col in 0..w - 1 {
                let v = side(row, col);
                let left = side(row, col + 1);
                acc.add(v, left, (roles::SIDE_GRID, "L"), (roles::SIDE_GRID, "R"));
                if row == l - 1 {
                    acc.add(v, left, (roles::TOP_TREE, "R"), (roles::TOP_TREE, "L"));
                }
            }
        }
        // Top tree above the roots.
        for d in 0..lp {
            for i in 0..(1u32 << d) {
                let v = top_node(d, i);
                acc.add(v, top_node(d + 1, 2 * i), (roles::TOP_TREE, "CL"), (roles::TOP_TREE, "P"));
                acc.add(v, top_node(d + 1, 2 * i + 1), (roles::TOP_TREE, "CR"), (roles::TOP_TREE, "P"));
                if i + 1 < (1 << d) {
                    acc.add(v, top_node(d, i + 1), (roles::TOP_TREE, "R"), (roles::TOP_TREE, "L"));
                }
            }
        }

        let mut keys = vec![NodeKey::TopInner { d: 0, i: 0 }; n as usize];
        for row in 0..h {
            for col in 0..w {
                keys[bottom(row, col) as usize] = NodeKey::Bottom { row, col };
            }
        }
        for row in 0..l {
            for col in 0..w {
                keys[side(row, col) as usize] = NodeKey::Side { row, col };
            }
        }
        for (&(col, d, i), &id) in &inner_ids {
            keys[id as usize] = if col == w {
                NodeKey::TopInner { d, i }
            } else {
                NodeKey::ColInner { col, d, i }
            };
        }

        Sag { graph: acc.build(n), l, lp, h, w, keys }
    }

    pub fn key(&self, v: NodeId) -> NodeKey {
        self.keys[v as usize]
    }

    pub fn bottom_id(&self, row: u32, col: u32) -> NodeId {
        row * self.w + col
    }

    pub fn side_id(&self, row: u32, col: u32) -> NodeId {
        self.h * self.w + row * self.w + col
    }

    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    /// Labels bottom cells with a transcript laid out as columns-by-time and
    /// everything else plain. Cell (row, col) shows tape cell `row` after
    /// `col` transitions.
    pub fn transcript_instance(&self, run: &Run) -> Option<LabeledGraph> {
        let cells = tm_engine::transcript_grid(run, self.h as usize, self.w as usize)?;
        Some(self.instance_from_cells(&cells))
    }

    pub fn instance_from_cells(&self, cells: &[Vec<Label>]) -> LabeledGraph {
        self.graph.with_node_inputs(|v, _| {
            Some(match self.key(v) {
                NodeKey::Bottom { row, col } => cells[row as usize][col as usize].clone(),
                _ => vocab::plain_node(),
            })
        })
    }

    /// Adds a mark flag to every node of an instance labeling.
    pub fn marked(instance: &LabeledGraph, marks: &[NodeId]) -> LabeledGraph {
        instance.with_node_inputs(|v, l| {
            Some(vocab::with_mark(l.expect("instance labels every node"), marks.contains(&v)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{path_trace_by, Traced};

    fn has(role: &'static str, dir: &'static str) -> impl Fn(&Label) -> bool {
        move |l| vocab::edge_has(l, role, dir)
    }

    #[test]
    fn node_count_matches_closed_form() {
        for (l, lp) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let s = Sag::build(l, lp);
            let (h, w) = (1u32 << l, 1u32 << lp);
            assert_eq!(s.n(), w * (2 * h - 1) + w - 1, "l={l} lp={lp}");
            let max_deg = (0..s.n()).map(|v| s.graph.degree(v)).max().unwrap();
            assert!(max_deg <= 7);
        }
    }

    #[test]
    fn aliases_fuse_the_right_roles() {
        let s = Sag::build(2, 1);
        // Bottom vertical: D pairs with the column tree's leaf-layer L.
        let v = s.bottom_id(1, 0);
        let d = path_trace_by(&s.graph, v, &[has(roles::BOTTOM_GRID, "D")]);
        assert_eq!(d, Traced::Node(s.bottom_id(2, 0)));
        assert_eq!(d, path_trace_by(&s.graph, v, &[has(roles::COL_TREE, "L")]));
        // Side vertical: D pairs with P (deeper spine nodes sit higher).
        let root = s.side_id(1, 0);
        let spine_up = path_trace_by(&s.graph, root, &[has(roles::COL_TREE, "CL")]);
        assert_eq!(spine_up, Traced::Node(s.side_id(0, 0)));
        assert_eq!(spine_up, path_trace_by(&s.graph, root, &[has(roles::SIDE_GRID, "U")]));
        assert_eq!(
            path_trace_by(&s.graph, s.side_id(0, 0), &[has(roles::SIDE_GRID, "D")]),
            Traced::Node(root)
        );
        // Deepest side row's child edge into the leaves carries no side role.
        let leaf = path_trace_by(&s.graph, s.side_id(0, 0), &[has(roles::COL_TREE, "CL")]);
        assert_eq!(leaf, Traced::Node(s.bottom_id(s.h - 1, 0)));
        assert_eq!(
            path_trace_by(&s.graph, s.side_id(0, 0), &[has(roles::SIDE_GRID, "U")]),
            Traced::Undefined
        );
        // Roots row: horizontal fuses side L with top tree R.
        let lw = path_trace_by(&s.graph, root, &[has(roles::SIDE_GRID, "L")]);
        assert_eq!(lw, Traced::Node(s.side_id(1, 1)));
        assert_eq!(lw, path_trace_by(&s.graph, root, &[has(roles::TOP_TREE, "R")]));
        // Top tree parent above the two roots.
        let top = path_trace_by(&s.graph, root, &[has(roles::TOP_TREE, "P")]);
        assert!(matches!(top, Traced::Node(_)));
        let Traced::Node(t) = top else { unreachable!() };
        assert_eq!(s.key(t), NodeKey::TopInner { d: 0, i: 0 });
    }

    #[test]
    fn transcript_lands_on_bottom_cells() {
        let s = Sag::build(3, 4);
        let run = tm_engine::run(&tm_engine::flip_machine(), &[0, 0, 1], 100);
        let g = s.transcript_instance(&run).unwrap();
        let initial_head = g.node_input(s.bottom_id(0, 0)).unwrap();
        assert_eq!(vocab::tm_parts(initial_head), Some(("#L", true, Some(0))));
        // Column 9 holds the halting configuration; cell 1 is the flipped bit.
        let out1 = g.node_input(s.bottom_id(1, 9)).unwrap();
        assert_eq!(vocab::tm_parts(out1), Some(("1", false, None)));
        // Columns beyond T repeat it.
        assert_eq!(g.node_input(s.bottom_id(1, 15)), Some(out1));
        let plain = g.node_input(s.side_id(0, 0)).unwrap();
        assert_eq!(plain, &vocab::plain_node());
    }
}
