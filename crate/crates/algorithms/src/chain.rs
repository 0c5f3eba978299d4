//! Pointer-chain programs for the error-pointer constraint systems.
//!
//! Every node gossips enough of its neighborhood to evaluate its own
//! checker obligation locally, learns its tree coordinates, and floods the
//! minimum-id obligated position through the structure. At the round
//! horizon, obligated nodes confess with an error label and clean nodes
//! point one canonical hop toward the agreed target, so the checker can
//! walk each chain to an error. Clean nodes that heard no proposal stay
//! silent — on the column-error systems that silence is what marks a clean
//! column.

use std::sync::Arc;

use graph_core::{vocab, vocab::roles, Label, NodeId};
use lcl_checkers::{ag_obligation, agg_gadget_broken, agg_obligation, satm_obligation, tree_obligation};
use local_runtime::{Action, Ctx, Msg, NodeProgram, Program};
use tm_engine::TuringMachine;

use crate::flood::{Flood, FloodPos};
use crate::gossip::{Gossip, GossipMode};
use crate::lens::{FanView, Lens};
use crate::pos::{hop_sag, hop_tree, SagCoords, SagTarget, TreeCoords, TreePos};
use crate::wire::{bundle, unbundle};
use crate::{agg_horizon, chain_horizon};

pub const TREE_SCOPE: &[&str] = &[roles::TREE];
pub const SAG_SCOPE: &[&str] =
    &[roles::COL_TREE, roles::TOP_TREE, roles::BOTTOM_GRID, roles::SIDE_GRID];

#[derive(Clone)]
pub enum ChainVariant {
    Tree,
    Ag,
    Agg,
    Satm(Arc<TuringMachine>),
}

impl ChainVariant {
    fn gossip_mode(&self) -> GossipMode {
        match self {
            ChainVariant::Tree => GossipMode::Targeted { roles: &[roles::TREE], grids: &[] },
            ChainVariant::Ag => {
                GossipMode::Targeted { roles: &[roles::TREE], grids: &[roles::GRID] }
            }
            ChainVariant::Agg => GossipMode::Flood { rounds: 4 },
            ChainVariant::Satm(_) => GossipMode::Targeted {
                roles: &[roles::COL_TREE, roles::TOP_TREE],
                grids: &[roles::BOTTOM_GRID, roles::SIDE_GRID],
            },
        }
    }

    fn horizon(&self, n: u32) -> u32 {
        match self {
            ChainVariant::Agg => agg_horizon(n),
            _ => chain_horizon(n),
        }
    }
}

/// Spawns one chain state machine per node.
pub struct PointerChain {
    pub variant: ChainVariant,
}

impl Program for PointerChain {
    fn spawn(&self) -> Box<dyn NodeProgram> {
        Box::new(ChainNode::new(self.variant.clone(), Lens::Raw))
    }
}

pub(crate) struct ChainNode {
    variant: ChainVariant,
    lens: Lens,
    gossip: Gossip,
    tree_coords: Option<TreeCoords>,
    sag_coords: Option<SagCoords>,
    flood: Flood,
    obligated: Option<bool>,
    offered: bool,
}

impl ChainNode {
    pub(crate) fn new(variant: ChainVariant, lens: Lens) -> ChainNode {
        let gossip = Gossip::new(variant.gossip_mode());
        let (tree_coords, sag_coords, flood) = match variant {
            ChainVariant::Satm(_) => (None, Some(SagCoords::new()), Flood::new_sag(SAG_SCOPE)),
            _ => (Some(TreeCoords::new(roles::TREE)), None, Flood::new_tree(TREE_SCOPE)),
        };
        ChainNode {
            variant,
            lens,
            gossip,
            tree_coords,
            sag_coords,
            flood,
            obligated: None,
            offered: false,
        }
    }

    fn is_gadget(&self, ctx: &Ctx) -> bool {
        matches!(self.variant, ChainVariant::Agg)
            && ctx.input == Some(&vocab::gadget_node())
    }

    fn own_pos(&self) -> Option<FloodPos> {
        match &self.variant {
            ChainVariant::Satm(_) => {
                let me = self.sag_coords.as_ref()?.me();
                if let Some((c, d, i)) = me.col {
                    return Some(FloodPos::Sag(SagTarget::Col { c, d, i }));
                }
                me.top.map(|TreePos { d, i }| FloodPos::Sag(SagTarget::Top { d, i }))
            }
            _ => {
                let TreePos { d, i } = self.tree_coords.as_ref()?.pos?;
                Some(FloodPos::Tree(TreePos { d, i }))
            }
        }
    }

    /// Absorb, settle the obligation, relay, and queue this round's parts.
    /// Returns the outgoing bundles; `None` while gossip has not settled
    /// enough to evaluate the obligation.
    pub(crate) fn step(&mut self, ctx: &Ctx, inbox: &[Msg]) -> Vec<(NodeId, Vec<Label>)> {
        let fan = FanView::new(self.lens, ctx.neighbors);
        for msg in inbox {
            for part in unbundle(&msg.body) {
                if self.gossip.absorb(&part) {
                    continue;
                }
                if let Some(tc) = &mut self.tree_coords {
                    if tc.absorb(&part) {
                        continue;
                    }
                }
                if let Some(sc) = &mut self.sag_coords {
                    if sc.absorb(&part, &fan) {
                        continue;
                    }
                }
                self.flood.absorb(&part);
            }
        }
        if ctx.round >= self.gossip.mode().settle_round() && self.obligated.is_none() {
            let (ball, me) = self.gossip.ball(ctx.node, ctx.input, ctx.neighbors, self.lens);
            let duty = match &self.variant {
                ChainVariant::Tree => tree_obligation(&ball, me),
                ChainVariant::Ag => ag_obligation(&ball, me),
                ChainVariant::Agg if self.is_gadget(ctx) => agg_gadget_broken(&ball, me),
                ChainVariant::Agg => agg_obligation(&ball, me),
                ChainVariant::Satm(m) => satm_obligation(&ball, m, me),
            };
            self.obligated = Some(duty);
            self.gossip.discard();
        }

        let mut out: Vec<(NodeId, Vec<Label>)> = Vec::new();
        let mut push = |w: NodeId, l: Label| match out.iter_mut().find(|(v, _)| *v == w) {
            Some((_, parts)) => parts.push(l),
            None => out.push((w, vec![l])),
        };
        self.gossip.emit(ctx.round, ctx.node, ctx.input, ctx.neighbors, &fan, &mut out);
        let mut push = |w: NodeId, l: Label| match out.iter_mut().find(|(v, _)| *v == w) {
            Some((_, parts)) => parts.push(l),
            None => out.push((w, vec![l])),
        };
        if let Some(tc) = &mut self.tree_coords {
            tc.emit(&fan, &mut push);
        }
        if let Some(sc) = &mut self.sag_coords {
            sc.emit(&fan, &mut push);
        }
        if !self.offered && self.obligated == Some(true) {
            if let Some(pos) = self.own_pos() {
                self.flood.offer(ctx.node, pos);
                self.offered = true;
            }
        }
        self.flood.emit(&fan, &mut push);
        out
    }

    /// The chain output for this node once the horizon is reached.
    pub(crate) fn decide(&self, ctx: &Ctx) -> Action {
        let fan = FanView::new(self.lens, ctx.neighbors);
        self.decide_with(&fan)
    }

    pub(crate) fn decide_with(&self, fan: &FanView) -> Action {
        let obligated = self.obligated.unwrap_or(false);
        if obligated {
            return Action::halt_node(vocab::err());
        }
        let Some(&(_, target)) = self.flood.best() else {
            return Action::halt_silent();
        };
        if self.own_pos() == Some(target) {
            return Action::halt_silent();
        }
        match (&self.variant, target) {
            (ChainVariant::Satm(_), FloodPos::Sag(t)) => {
                let me = self.sag_coords.as_ref().map(|sc| sc.me()).unwrap_or_default();
                let Some((c, p, role)) = hop_sag(&me, &t) else {
                    return Action::halt_silent();
                };
                let Some(w) = fan.step(role, p) else {
                    return Action::halt_silent();
                };
                Action::Halt {
                    node: Some(vocab::ptr_mark()),
                    half_edges: vec![(w, vocab::sag_ptr(c, p, role))],
                }
            }
            (variant, FloodPos::Tree(t)) => {
                let Some(pos) = self.tree_coords.as_ref().and_then(|tc| tc.pos) else {
                    return Action::halt_silent();
                };
                let p = hop_tree(pos, t);
                if fan.step(roles::TREE, p).is_none() {
                    return Action::halt_silent();
                }
                let label = match variant {
                    ChainVariant::Tree => vocab::ptr_node(p),
                    _ => vocab::colerr_ptr(p),
                };
                Action::halt_node(label)
            }
            _ => Action::halt_silent(),
        }
    }

    pub(crate) fn obligated(&self) -> Option<bool> {
        self.obligated
    }

    pub(crate) fn flood_best(&self) -> Option<&(NodeId, FloodPos)> {
        self.flood.best()
    }

    pub(crate) fn settle_round(&self) -> u32 {
        self.gossip.mode().settle_round()
    }
}

impl NodeProgram for ChainNode {
    fn activate(&mut self, ctx: &mut Ctx, inbox: &[Msg]) -> Action {
        // Gadget carriers decide their own duty as soon as gossip settles;
        // they take no part in coordinates or flooding.
        if self.is_gadget(ctx) {
            let settle = self.gossip.mode().settle_round();
            let out = self.step(ctx, inbox);
            if ctx.round >= settle {
                return if self.obligated == Some(true) {
                    Action::halt_node(vocab::err_kind("gadget"))
                } else {
                    Action::halt_silent()
                };
            }
            return Action::Continue(
                out.into_iter().map(|(w, parts)| (w, bundle(parts))).collect(),
            );
        }
        let out = self.step(ctx, inbox);
        if ctx.round >= self.variant.horizon(ctx.n) {
            return self.decide(ctx);
        }
        Action::Continue(out.into_iter().map(|(w, parts)| (w, bundle(parts))).collect())
    }
}
