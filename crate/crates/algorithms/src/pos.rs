//! Tree coordinates and canonical pointer hops.
//!
//! Roots detect themselves from their fans and relay `(depth, index)`
//! coordinates to their children, one layer per round. A hop is one pointer
//! step toward a target position, chosen so that the hops of consecutive
//! nodes on the induced walk always satisfy the chain checkers' direction
//! monotonicity: climb `P` while too deep, move `L`/`R` along the layer,
//! descend `CR` while too shallow. Descents reach the target's layer and
//! then slide sideways, so the right-child bias is harmless.

use graph_core::{vocab::roles, Label, NodeId};

use crate::lens::FanView;
use crate::wire::{Dec, Enc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreePos {
    pub d: u32,
    pub i: u32,
}

pub fn hop_tree(from: TreePos, to: TreePos) -> &'static str {
    if from.d > to.d {
        "P"
    } else if from.d < to.d {
        "CR"
    } else if from.i < to.i {
        "R"
    } else {
        "L"
    }
}

/// Where a carrier-structure node sits: `col` is `(column, depth, index)`
/// inside its column tree, `top` its position in the root tree. Column
/// roots carry both; plain top nodes only `top`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SagSelf {
    pub col: Option<(u32, u32, u32)>,
    pub top: Option<TreePos>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SagTarget {
    Col { c: u32, d: u32, i: u32 },
    Top { d: u32, i: u32 },
}

/// One `(counter, dir, role)` pointer hop toward the target: phase 1 climbs
/// the own column, phase 2 crosses the root tree, phase 3 descends the
/// target's column. Roots sit on the root tree's leaf layer, so crossing is
/// a monotone `L`/`R` slide there.
pub fn hop_sag(me: &SagSelf, target: &SagTarget) -> Option<(u8, &'static str, &'static str)> {
    match *target {
        SagTarget::Col { c: ct, d: dt, i: it } => {
            if let Some((c, d, i)) = me.col {
                if c == ct {
                    return Some((3, hop_tree(TreePos { d, i }, TreePos { d: dt, i: it }), roles::COL_TREE));
                }
                if me.top.is_some() {
                    return Some((2, if ct > c { "R" } else { "L" }, roles::TOP_TREE));
                }
                return Some((1, "P", roles::COL_TREE));
            }
            me.top.map(|_| (2, "CR", roles::TOP_TREE))
        }
        SagTarget::Top { d: dt, i: it } => {
            if let Some(t) = me.top {
                return Some((2, hop_tree(t, TreePos { d: dt, i: it }), roles::TOP_TREE));
            }
            me.col.map(|_| (1, "P", roles::COL_TREE))
        }
    }
}

fn enc_pos(tag: &'static str, d: u32, i: u32) -> Label {
    let mut e = Enc::new();
    e.int(i64::from(d)).int(i64::from(i));
    e.finish(tag)
}

fn dec_pos(l: &Label) -> Option<TreePos> {
    let mut dec = Dec::new(l);
    let d = u32::try_from(dec.int()?).ok()?;
    let i = u32::try_from(dec.int()?).ok()?;
    Some(TreePos { d, i })
}

/// Coordinate relay over one tree role: the root self-starts at `(0, 0)`
/// and every node forwards child coordinates downward exactly once.
pub struct TreeCoords {
    role: &'static str,
    pub pos: Option<TreePos>,
    sent: bool,
}

impl TreeCoords {
    pub fn new(role: &'static str) -> TreeCoords {
        TreeCoords { role, pos: None, sent: false }
    }

    pub fn absorb(&mut self, part: &Label) -> bool {
        if part.tag != "tc" {
            return false;
        }
        if self.pos.is_none() {
            self.pos = dec_pos(part);
        }
        true
    }

    pub fn emit(&mut self, fan: &FanView, mut push: impl FnMut(NodeId, Label)) {
        if self.pos.is_none() && fan.member(self.role) && !fan.has(self.role, "P") {
            self.pos = Some(TreePos { d: 0, i: 0 });
        }
        let Some(TreePos { d, i }) = self.pos else {
            return;
        };
        if self.sent {
            return;
        }
        self.sent = true;
        for (dir, j) in [("CL", 2 * i), ("CR", 2 * i + 1)] {
            if let Some(w) = fan.step(self.role, dir) {
                push(w, enc_pos("tc", d + 1, j));
            }
        }
    }
}

/// Coordinate relay for the carrier structure: root-tree positions flow
/// down the root tree; a column root converts its leaf position into a
/// column id and relays column coordinates down its own tree. A lone
/// column root (no root tree above it) self-starts both.
pub struct SagCoords {
    pub top: Option<TreePos>,
    pub col: Option<(u32, u32, u32)>,
    top_sent: bool,
    col_sent: bool,
}

impl SagCoords {
    pub fn new() -> SagCoords {
        SagCoords { top: None, col: None, top_sent: false, col_sent: false }
    }

    pub fn me(&self) -> SagSelf {
        SagSelf { col: self.col, top: self.top }
    }

    pub fn absorb(&mut self, part: &Label, fan: &FanView) -> bool {
        match part.tag {
            "pc" => {
                let pos = dec_pos(part);
                if self.top.is_none() {
                    self.top = pos;
                }
                if self.col.is_none() && fan.member(roles::COL_TREE) {
                    if let Some(TreePos { i, .. }) = pos {
                        self.col = Some((i, 0, 0));
                    }
                }
                true
            }
            "cc" => {
                if self.col.is_none() {
                    let mut d = Dec::new(part);
                    self.col = (|| {
                        let c = u32::try_from(d.int()?).ok()?;
                        let depth = u32::try_from(d.int()?).ok()?;
                        let i = u32::try_from(d.int()?).ok()?;
                        Some((c, depth, i))
                    })();
                }
                true
            }
            _ => false,
        }
    }

    pub fn emit(&mut self, fan: &FanView, mut push: impl FnMut(NodeId, Label)) {
        let in_col = fan.member(roles::COL_TREE);
        let in_top = fan.member(roles::TOP_TREE);
        if self.top.is_none() && in_top && !fan.has(roles::TOP_TREE, "P") && !in_col {
            self.top = Some(TreePos { d: 0, i: 0 });
        }
        if self.col.is_none() && in_col && !fan.has(roles::COL_TREE, "P") && !in_top {
            self.top = Some(TreePos { d: 0, i: 0 });
            self.col = Some((0, 0, 0));
        }
        if !self.top_sent {
            if let Some(TreePos { d, i }) = self.top {
                self.top_sent = true;
                for (dir, j) in [("CL", 2 * i), ("CR", 2 * i + 1)] {
                    if let Some(w) = fan.step(roles::TOP_TREE, dir) {
                        push(w, enc_pos("pc", d + 1, j));
                    }
                }
            }
        }
        if !self.col_sent {
            if let Some((c, d, i)) = self.col {
                self.col_sent = true;
                for (dir, j) in [("CL", 2 * i), ("CR", 2 * i + 1)] {
                    if let Some(w) = fan.step(roles::COL_TREE, dir) {
                        let mut e = Enc::new();
                        e.int(i64::from(c)).int(i64::from(d + 1)).int(i64::from(j));
                        push(w, e.finish("cc"));
                    }
                }
            }
        }
    }
}

impl Default for SagCoords {
    fn default() -> SagCoords {
        SagCoords::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32, i: u32) -> TreePos {
        TreePos { d, i }
    }

    #[test]
    fn hops_walk_monotonically() {
        assert_eq!(hop_tree(p(3, 5), p(1, 0)), "P");
        assert_eq!(hop_tree(p(1, 0), p(3, 5)), "CR");
        assert_eq!(hop_tree(p(2, 1), p(2, 3)), "R");
        assert_eq!(hop_tree(p(2, 3), p(2, 1)), "L");
    }

    #[test]
    fn carrier_hops_phase_correctly() {
        let mid = SagSelf { col: Some((1, 2, 0)), top: None };
        let root = SagSelf { col: Some((1, 0, 0)), top: Some(p(2, 1)) };
        let inner = SagSelf { col: None, top: Some(p(1, 0)) };
        let same_col = SagTarget::Col { c: 1, d: 3, i: 4 };
        let other_col = SagTarget::Col { c: 3, d: 3, i: 4 };
        let top_t = SagTarget::Top { d: 1, i: 1 };
        assert_eq!(hop_sag(&mid, &same_col), Some((3, "CR", roles::COL_TREE)));
        assert_eq!(hop_sag(&mid, &other_col), Some((1, "P", roles::COL_TREE)));
        assert_eq!(hop_sag(&root, &other_col), Some((2, "R", roles::TOP_TREE)));
        assert_eq!(hop_sag(&root, &same_col), Some((3, "CR", roles::COL_TREE)));
        assert_eq!(hop_sag(&inner, &other_col), Some((2, "CR", roles::TOP_TREE)));
        assert_eq!(hop_sag(&inner, &top_t), Some((2, "R", roles::TOP_TREE)));
        assert_eq!(hop_sag(&mid, &top_t), Some((1, "P", roles::COL_TREE)));
    }
}
