use crate::{AliasedGrid, NodeKey, Sag};
use graph_core::{vocab, GraphBuilder, Label, LabeledGraph, NodeId};

/// Shape of a composed two-sided instance graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    /// Aliased-grid height exponent: `h_ag = 2^l_ag` rows.
    pub l_ag: u32,
    /// Aliased-grid width in columns.
    pub w_ag: u32,
    /// Transcript grid height exponent: `2^l_sag` tape rows.
    pub l_sag: u32,
    /// Transcript grid width exponent: `2^lp_sag` time columns.
    pub lp_sag: u32,
}

/// An aliased grid and a transcript carrier joined by connect edges: each
/// right-column grid node pairs with the same row of the transcript's output
/// (leftmost) column, except the bottom grid row, which pairs with the
/// transcript's last (filler) row.
pub struct FamilyG {
    pub graph: LabeledGraph,
    pub ag: AliasedGrid,
    pub sag: Sag,
    pub params: FamilyParams,
    satm_offset: u32,
}

impl FamilyG {
    pub fn build(params: FamilyParams) -> FamilyG {
        let ag = AliasedGrid::build(params.l_ag, params.w_ag);
        let sag = Sag::build(params.l_sag, params.lp_sag);
        assert!(sag.h >= ag.h, "transcript must cover every connected row");
        let n_ag = ag.graph.n();
        let n = n_ag + sag.graph.n();
        let mut b = GraphBuilder::new(n);
        let mut copy = |src: &LabeledGraph, offset: u32, wrap: &dyn Fn(&Label) -> Label| {
            for &(u, v) in src.edges() {
                b.add_edge(u + offset, v + offset).unwrap();
                for (x, y) in [(u, v), (v, u)] {
                    if let Some(l) = src.half_edge_input(x, y) {
                        b.set_half_edge_input(x + offset, y + offset, wrap(l)).unwrap();
                    }
                }
            }
        };
        copy(&ag.graph, 0, &vocab::pi_ag_edge);
        copy(&sag.graph, n_ag, &vocab::pi_satm_edge);
        for r in 0..ag.h {
            let u = ag.grid_id(r, 0);
            let row = if r == ag.h - 1 { sag.h - 1 } else { r };
            let v = n_ag + sag.bottom_id(row, sag.w - 1);
            b.add_edge(u, v).unwrap();
            b.set_half_edge_input(u, v, vocab::connect()).unwrap();
            b.set_half_edge_input(v, u, vocab::connect()).unwrap();
        }
        let graph = b.finish().expect("composed structure is degree-bounded");
        FamilyG { graph, ag, sag, params, satm_offset: n_ag }
    }

    pub fn satm_node(&self, sag_id: NodeId) -> NodeId {
        sag_id + self.satm_offset
    }

    pub fn is_satm(&self, v: NodeId) -> bool {
        v >= self.satm_offset
    }

    /// Full input labeling: transcript cells with marks on the carrier side,
    /// target bits over the diagonal certificate on the grid side.
    pub fn instance(
        &self,
        cells: &[Vec<Label>],
        marked: impl Fn(NodeId) -> bool,
        target_bit: impl Fn(u32, u32) -> u8,
    ) -> LabeledGraph {
        let diag = self.ag.diagonal_bits();
        self.graph.with_node_inputs(|v, _| {
            Some(if let Some(sag_id) = v.checked_sub(self.satm_offset) {
                let cell = match self.sag.key(sag_id) {
                    NodeKey::Bottom { row, col } => cells[row as usize][col as usize].clone(),
                    _ => vocab::plain_node(),
                };
                vocab::pi_satm_in(&vocab::with_mark(&cell, marked(v)))
            } else {
                match self.ag.grid_coords(v) {
                    Some((r, c)) => vocab::pi_ag_in(target_bit(r, c), vocab::AgIn::Grid(diag(r, c))),
                    None => vocab::pi_ag_in(0, vocab::AgIn::Tree),
                }
            })
        })
    }
}

/// A stand-alone aliased grid dressed in the composed vocabulary: every
/// half-edge wrapped as a grid-side edge and every node carrying a target
/// bit over its structural label. The carrier half of a composed instance,
/// for games that need no transcript side.
pub fn pi_ag_instance(ag: &AliasedGrid, target_bit: impl Fn(u32, u32) -> u8) -> LabeledGraph {
    let diag = ag.diagonal_bits();
    let g = &ag.graph;
    let mut b = GraphBuilder::new(g.n());
    for &(u, v) in g.edges() {
        b.add_edge(u, v).unwrap();
        for (x, y) in [(u, v), (v, u)] {
            if let Some(l) = g.half_edge_input(x, y) {
                b.set_half_edge_input(x, y, vocab::pi_ag_edge(l)).unwrap();
            }
        }
    }
    for v in 0..g.n() {
        let label = match ag.grid_coords(v) {
            Some((r, c)) => vocab::pi_ag_in(target_bit(r, c), vocab::AgIn::Grid(diag(r, c))),
            None => vocab::pi_ag_in(0, vocab::AgIn::Tree),
        };
        b.set_node_input(v, label);
    }
    b.finish().expect("rewrapping a well-formed graph")
}
