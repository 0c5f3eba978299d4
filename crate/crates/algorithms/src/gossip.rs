//! Neighborhood record exchange and ball reconstruction.
//!
//! A node's *record* is its id, input, and incident half-edge labels. The
//! per-node validity rules read, from a node, at most: its own record, its
//! neighbors' records, the inputs of grid cells two steps away, and the
//! records of its layer-mates' parents (the cousin rules). Two targeted
//! rounds deliver exactly that:
//!
//! - round 0: every node sends its full record to every neighbor;
//! - round 1: it forwards its parent's record to its layer mates (per tree
//!   role), and input-only records of its vertical grid neighbors to its
//!   horizontal ones and vice versa (per grid role).
//!
//! The gadget-carrying variant instead floods full records for a fixed
//! number of rounds: its component shapes read whole fans up to four steps
//! out, and its instances are small.
//!
//! From the collected records a node rebuilds the labeled ball around
//! itself — through a lens, so composed instances project to one side — and
//! evaluates its checker obligation on that ball. Ids referenced by known
//! fans but lacking records join as bare padding nodes: rules compare such
//! far endpoints by identity only.

use std::collections::{BTreeMap, BTreeSet};

use graph_core::{GraphBuilder, Label, LabeledGraph, NodeId};

use crate::lens::{FanView, Lens};
use crate::wire::{Dec, Enc};

#[derive(Debug, Clone)]
pub struct Rec {
    pub input: Option<Label>,
    /// `None` for input-only records.
    pub fan: Option<Vec<(NodeId, Option<Label>)>>,
}

#[derive(Debug, Clone, Copy)]
pub enum GossipMode {
    /// Two rounds, forwarding only what the rules read.
    Targeted {
        /// Tree roles whose cousin rules need layer-mates' parents.
        roles: &'static [&'static str],
        /// Grid roles whose cell rules need two-step inputs.
        grids: &'static [&'static str],
    },
    /// Forward all first-seen records for `rounds` rounds.
    Flood { rounds: u32 },
}

impl GossipMode {
    /// First round at which the ball is complete.
    pub fn settle_round(&self) -> u32 {
        match self {
            GossipMode::Targeted { .. } => 2,
            GossipMode::Flood { rounds } => *rounds,
        }
    }
}

pub struct Gossip {
    mode: GossipMode,
    records: BTreeMap<NodeId, Rec>,
    fresh: Vec<NodeId>,
}

fn enc_rec(id: NodeId, rec: &Rec) -> Label {
    let mut e = Enc::new();
    e.id(id).opt_label(rec.input.as_ref());
    match &rec.fan {
        None => e.finish("rs"),
        Some(fan) => {
            e.int(fan.len() as i64);
            for (w, l) in fan {
                e.id(*w).opt_label(l.as_ref());
            }
            e.finish("rc")
        }
    }
}

fn dec_rec(l: &Label) -> Option<(NodeId, Rec)> {
    let mut d = Dec::new(l);
    let id = d.id()?;
    let input = d.opt_label()?;
    if l.tag == "rs" {
        return Some((id, Rec { input, fan: None }));
    }
    let deg = usize::try_from(d.int()?).ok()?;
    let mut fan = Vec::with_capacity(deg);
    for _ in 0..deg {
        fan.push((d.id()?, d.opt_label()?));
    }
    Some((id, Rec { input, fan: Some(fan) }))
}

impl Gossip {
    pub fn new(mode: GossipMode) -> Gossip {
        Gossip { mode, records: BTreeMap::new(), fresh: Vec::new() }
    }

    pub fn record(&self, v: NodeId) -> Option<&Rec> {
        self.records.get(&v)
    }

    pub fn mode(&self) -> GossipMode {
        self.mode
    }

    /// Frees the collected records once the obligation is extracted.
    pub fn discard(&mut self) {
        self.records = BTreeMap::new();
        self.fresh = Vec::new();
    }

    /// Absorbs one gossip part; `true` if it was a record message.
    pub fn absorb(&mut self, part: &Label) -> bool {
        if part.tag != "rc" && part.tag != "rs" {
            return false;
        }
        if let Some((id, rec)) = dec_rec(part) {
            let full = rec.fan.is_some();
            let known = self.records.get(&id);
            let upgrade = match known {
                None => true,
                Some(old) => full && old.fan.is_none(),
            };
            if upgrade {
                if full {
                    self.fresh.push(id);
                }
                self.records.insert(id, rec);
            }
        }
        true
    }

    /// Queues this round's gossip parts per neighbor. Records travel raw;
    /// `fan` is this node's lens view used only to aim the forwards.
    pub fn emit(
        &mut self,
        round: u32,
        me: NodeId,
        input: Option<&Label>,
        neighbors: &[(NodeId, Option<Label>)],
        fan: &FanView,
        out: &mut Vec<(NodeId, Vec<Label>)>,
    ) {
        let mut push = |to: NodeId, l: Label| match out.iter_mut().find(|(w, _)| *w == to) {
            Some((_, parts)) => parts.push(l),
            None => out.push((to, vec![l])),
        };
        match (self.mode, round) {
            (_, 0) => {
                let own = Rec { input: input.cloned(), fan: Some(neighbors.to_vec()) };
                for &(w, _) in neighbors {
                    push(w, enc_rec(me, &own));
                }
            }
            (GossipMode::Targeted { roles, grids }, 1) => {
                for role in roles {
                    let parent = fan
                        .step(role, "P")
                        .and_then(|p| self.records.get(&p).map(|r| enc_rec(p, r)));
                    if let Some(msg) = parent {
                        for dir in ["L", "R"] {
                            if let Some(mate) = fan.step(role, dir) {
                                push(mate, msg.clone());
                            }
                        }
                    }
                }
                for grid in grids {
                    let slim = |u: NodeId| {
                        self.records
                            .get(&u)
                            .map(|r| enc_rec(u, &Rec { input: r.input.clone(), fan: None }))
                    };
                    for (srcs, dsts) in [(["U", "D"], ["L", "R"]), (["L", "R"], ["U", "D"])] {
                        let msgs: Vec<Label> =
                            srcs.iter().filter_map(|d| fan.step(grid, d)).filter_map(slim).collect();
                        for dir in dsts {
                            if let Some(mate) = fan.step(grid, dir) {
                                for m in &msgs {
                                    push(mate, m.clone());
                                }
                            }
                        }
                    }
                }
            }
            (GossipMode::Flood { rounds }, r) if r < rounds => {
                let fresh = std::mem::take(&mut self.fresh);
                for id in fresh {
                    let msg = enc_rec(id, &self.records[&id]);
                    for &(w, _) in neighbors {
                        if w != id {
                            push(w, msg.clone());
                        }
                    }
                }
            }
            _ => {}
        }
    }

    /// Rebuilds the labeled ball around `me` from everything collected,
    /// projected through `lens`. Returns the ball and this node's id in it.
    pub fn ball(
        &self,
        me: NodeId,
        input: Option<&Label>,
        neighbors: &[(NodeId, Option<Label>)],
        lens: Lens,
    ) -> (LabeledGraph, NodeId) {
        let own = Rec { input: input.cloned(), fan: Some(neighbors.to_vec()) };
        let rec_of =
            |v: NodeId| if v == me { Some(&own) } else { self.records.get(&v) };
        let mut members = BTreeSet::new();
        members.insert(me);
        for (&v, r) in &self.records {
            if lens.member(r.input.as_ref()) {
                members.insert(v);
            }
        }

        // An edge joins the ball unless a known side disqualifies it: under
        // a projection lens a label that fails to unwrap — or a missing
        // one — drops the edge, exactly as the checker's projection does.
        let mut edges: BTreeMap<(NodeId, NodeId), [Option<Label>; 2]> = BTreeMap::new();
        let mut banned: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for &v in &members {
            let Some(fan) = rec_of(v).and_then(|r| r.fan.as_ref()) else {
                continue;
            };
            for (w, raw) in fan {
                let key = (v.min(*w), v.max(*w));
                let side = usize::from(*w < v);
                match (lens, raw.as_ref()) {
                    (Lens::Raw, None) => {
                        edges.entry(key).or_default();
                    }
                    (_, Some(raw)) => match lens.edge_inner(raw) {
                        Some(inner) => {
                            edges.entry(key).or_default()[side] = Some(inner);
                        }
                        None => {
                            banned.insert(key);
                        }
                    },
                    (_, None) => {
                        banned.insert(key);
                    }
                }
            }
        }
        for key in &banned {
            edges.remove(key);
        }

        let mut nodes: BTreeSet<NodeId> = members.clone();
        for &(u, w) in edges.keys() {
            nodes.insert(u);
            nodes.insert(w);
        }
        let sub: BTreeMap<NodeId, NodeId> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i as NodeId)).collect();
        let mut b = GraphBuilder::new(nodes.len() as u32);
        for (&(u, w), sides) in &edges {
            let (su, sw) = (sub[&u], sub[&w]);
            b.add_edge(su, sw).expect("ball edges are deduplicated");
            if let Some(l) = &sides[0] {
                b.set_half_edge_input(su, sw, l.clone()).unwrap();
            }
            if let Some(l) = &sides[1] {
                b.set_half_edge_input(sw, su, l.clone()).unwrap();
            }
        }
        for &v in &members {
            let inner =
                rec_of(v).and_then(|r| r.input.as_ref()).and_then(|l| lens.node_inner(l));
            if let Some(l) = inner {
                b.set_node_input(sub[&v], l);
            }
        }
        (b.finish().expect("ball respects degree bounds"), sub[&me])
    }
}
