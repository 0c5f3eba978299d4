use graph_core::{vocab, GraphBuilder, LabeledGraph, NodeId};
use std::collections::BTreeMap;

/// Accumulates role/direction pairs per half-edge, so an edge shared by
/// several structures ends up with one fused set label per side.
#[derive(Default)]
pub(crate) struct EdgeAcc {
    sides: BTreeMap<(NodeId, NodeId), Vec<(&'static str, &'static str)>>,
}

impl EdgeAcc {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one role to the `a`-`b` edge: `at_a` holds on `a`'s half-edge,
    /// `at_b` on `b`'s.
    pub fn add(
        &mut self,
        a: NodeId,
        b: NodeId,
        at_a: (&'static str, &'static str),
        at_b: (&'static str, &'static str),
    ) {
        self.sides.entry((a, b)).or_default().push(at_a);
        self.sides.entry((b, a)).or_default().push(at_b);
    }

    pub fn build(self, n: u32) -> LabeledGraph {
        let mut b = GraphBuilder::new(n);
        for (&(u, v), pairs) in &self.sides {
            if u < v {
                b.add_edge(u, v).expect("structure edges are valid");
                b.set_half_edge_input(u, v, vocab::edge(pairs)).unwrap();
                let twin = &self.sides[&(v, u)];
                b.set_half_edge_input(v, u, vocab::edge(twin)).unwrap();
            }
        }
        b.finish().expect("structure graphs satisfy the degree bound")
    }
}
