//! Minimum-id flood of violated positions.
//!
//! Every obligated node that knows its coordinates proposes itself; every
//! node keeps the smallest proposer id seen and rebroadcasts improvements
//! through the scope's role edges. After diameter-many rounds the whole
//! scope agrees on one target, so the pointer hops of distinct nodes
//! compose into a single monotone walk.

use graph_core::{Label, NodeId};

use crate::lens::FanView;
use crate::pos::{SagTarget, TreePos};
use crate::wire::{Dec, Enc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloodPos {
    Tree(TreePos),
    Sag(SagTarget),
}

pub struct Flood {
    tag: &'static str,
    scope: &'static [&'static str],
    best: Option<(NodeId, FloodPos)>,
    changed: bool,
}

fn enc_best(tag: &'static str, id: NodeId, pos: &FloodPos) -> Label {
    let mut e = Enc::new();
    e.id(id);
    match pos {
        FloodPos::Tree(TreePos { d, i }) => {
            e.int(i64::from(*d)).int(i64::from(*i));
        }
        FloodPos::Sag(SagTarget::Col { c, d, i }) => {
            e.int(0).int(i64::from(*c)).int(i64::from(*d)).int(i64::from(*i));
        }
        FloodPos::Sag(SagTarget::Top { d, i }) => {
            e.int(1).int(0).int(i64::from(*d)).int(i64::from(*i));
        }
    }
    e.finish(tag)
}

fn dec_best(tag: &str, l: &Label) -> Option<(NodeId, FloodPos)> {
    let mut d = Dec::new(l);
    let id = d.id()?;
    let int = |d: &mut Dec| -> Option<u32> { u32::try_from(d.int()?).ok() };
    let pos = if tag == "vg" {
        FloodPos::Tree(TreePos { d: int(&mut d)?, i: int(&mut d)? })
    } else {
        let kind = int(&mut d)?;
        let c = int(&mut d)?;
        let depth = int(&mut d)?;
        let i = int(&mut d)?;
        FloodPos::Sag(match kind {
            0 => SagTarget::Col { c, d: depth, i },
            _ => SagTarget::Top { d: depth, i },
        })
    };
    Some((id, pos))
}

impl Flood {
    pub fn new_tree(scope: &'static [&'static str]) -> Flood {
        Flood { tag: "vg", scope, best: None, changed: false }
    }

    pub fn new_sag(scope: &'static [&'static str]) -> Flood {
        Flood { tag: "vs", scope, best: None, changed: false }
    }

    pub fn best(&self) -> Option<&(NodeId, FloodPos)> {
        self.best.as_ref()
    }

    fn improve(&mut self, id: NodeId, pos: FloodPos) {
        if self.best.is_none_or(|(b, _)| id < b) {
            self.best = Some((id, pos));
            self.changed = true;
        }
    }

    /// This node's own proposal.
    pub fn offer(&mut self, id: NodeId, pos: FloodPos) {
        self.improve(id, pos);
    }

    pub fn absorb(&mut self, part: &Label) -> bool {
        if part.tag != self.tag {
            return false;
        }
        if let Some((id, pos)) = dec_best(self.tag, part) {
            self.improve(id, pos);
        }
        true
    }

    pub fn emit(&mut self, fan: &FanView, mut push: impl FnMut(NodeId, Label)) {
        if !self.changed {
            return;
        }
        self.changed = false;
        let (id, pos) = self.best.expect("changed implies a best");
        for w in fan.scoped(self.scope) {
            push(w, enc_best(self.tag, id, &pos));
        }
    }
}
