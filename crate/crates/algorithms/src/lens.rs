//! Reading a composed two-sided instance as one of its halves.
//!
//! Programs for the stand-alone problems run unchanged inside the composed
//! problem by viewing every label through a lens that unwraps the side
//! wrappers. The unwrapping mirrors the checker's projection exactly: node
//! inputs keep only their structural part, edges survive only where the
//! carried label belongs to this side, everything else vanishes.

use graph_core::{vocab, vocab::AgIn, Label, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lens {
    /// Stand-alone instance: labels are taken verbatim.
    Raw,
    /// Grid side of a composed instance.
    PiAg,
    /// Transcript side of a composed instance.
    PiSatm,
}

impl Lens {
    /// Does a node carrying this input belong to the lens's side?
    pub fn member(&self, input: Option<&Label>) -> bool {
        match self {
            Lens::Raw => true,
            Lens::PiAg => {
                input.is_some_and(|l| l.tag == "agIn" && vocab::pi_ag_in_parts(l).is_some())
            }
            Lens::PiSatm => {
                input.is_some_and(|l| l.tag == "saIn" && vocab::pi_satm_in_parts(l).is_some())
            }
        }
    }

    /// The structural node input the side's rules read.
    pub fn node_inner(&self, input: &Label) -> Option<Label> {
        match self {
            Lens::Raw => Some(input.clone()),
            Lens::PiAg => vocab::pi_ag_in_parts(input).map(|(_, inner)| match inner {
                AgIn::Tree => vocab::ag_tree(),
                AgIn::Grid(b) => vocab::ag_grid(b),
            }),
            Lens::PiSatm => vocab::pi_satm_in_parts(input),
        }
    }

    /// The structural half-edge label, if the edge belongs to this side.
    pub fn edge_inner(&self, lab: &Label) -> Option<Label> {
        match self {
            Lens::Raw => Some(lab.clone()),
            Lens::PiAg => vocab::pi_ag_edge_parts(lab),
            Lens::PiSatm => vocab::pi_satm_edge_parts(lab),
        }
    }
}

/// A node's own incident half-edges, unwrapped through a lens once and then
/// consulted for role-directed steps all over the protocols.
pub struct FanView {
    entries: Vec<(NodeId, Option<Label>)>,
}

impl FanView {
    pub fn new(lens: Lens, neighbors: &[(NodeId, Option<Label>)]) -> FanView {
        FanView {
            entries: neighbors
                .iter()
                .map(|(w, l)| (*w, l.as_ref().and_then(|l| lens.edge_inner(l))))
                .collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (NodeId, &Label)> {
        self.entries.iter().filter_map(|(w, l)| l.as_ref().map(|l| (*w, l)))
    }

    pub fn has(&self, role: &str, dir: &str) -> bool {
        self.step(role, dir).is_some()
    }

    /// The unique neighbor in direction `dir` of `role`; `None` when absent
    /// or ambiguous.
    pub fn step(&self, role: &str, dir: &str) -> Option<NodeId> {
        let mut it = self
            .entries()
            .filter(|(_, l)| vocab::edge_has(l, role, dir))
            .map(|(w, _)| w);
        let first = it.next();
        if it.next().is_some() {
            return None;
        }
        first
    }

    /// Whether any incident half-edge carries `role` at all.
    pub fn member(&self, role: &str) -> bool {
        self.entries().any(|(_, l)| vocab::edge_dir(l, role).is_some())
    }

    /// Neighbors reachable through any of the given roles.
    pub fn scoped(&self, scope: &[&str]) -> Vec<NodeId> {
        self.entries()
            .filter(|(_, l)| scope.iter().any(|role| vocab::edge_dir(l, role).is_some()))
            .map(|(w, _)| w)
            .collect()
    }
}
