//! The label vocabulary shared by structure builders, constraint checkers,
//! and node programs.
//!
//! Structural half-edge labels are role/direction sets encoded in one flat
//! payload, so an edge that plays several roles at once (a grid edge that is
//! also a tree layer edge) carries all of them on the same half-edge, and
//! projections match by containment.

use crate::{intern, Label, Scalar};

pub mod roles {
    pub const TREE: &str = "tree";
    pub const GRID: &str = "grid";
    pub const COL_TREE: &str = "colTree";
    pub const TOP_TREE: &str = "topTree";
    pub const BOTTOM_GRID: &str = "bottomGrid";
    pub const SIDE_GRID: &str = "sideGrid";
    pub const GADGET: &str = "gadget";
}

/// Tree directions: parent, left/right child, and same-layer left/right.
pub const TREE_DIRS: [&str; 5] = ["P", "CL", "CR", "L", "R"];
pub const GRID_DIRS: [&str; 4] = ["U", "D", "L", "R"];

const EDGE_TAG: &str = "e";

/// A role/direction set label. Pairs are stored sorted, so two sets with the
/// same members compare equal.
pub fn edge(pairs: &[(&str, &str)]) -> Label {
    let mut sorted: Vec<(&str, &str)> = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let payload = sorted
        .iter()
        .flat_map(|&(role, dir)| [Scalar::S(intern(role)), Scalar::S(intern(dir))])
        .collect();
    Label::new(EDGE_TAG, payload)
}

pub fn tree_edge(dir: &str) -> Label {
    edge(&[(roles::TREE, dir)])
}

pub fn grid_edge(dir: &str) -> Label {
    edge(&[(roles::GRID, dir)])
}

pub fn is_edge_label(l: &Label) -> bool {
    l.tag == EDGE_TAG && l.payload.len().is_multiple_of(2)
}

/// Direction this half-edge carries for `role`, if any.
pub fn edge_dir(l: &Label, role: &str) -> Option<&'static str> {
    if l.tag != EDGE_TAG {
        return None;
    }
    l.payload.chunks_exact(2).find_map(|pair| match pair {
        [Scalar::S(r), Scalar::S(d)] if *r == role => Some(*d),
        _ => None,
    })
}

pub fn edge_has(l: &Label, role: &str, dir: &str) -> bool {
    edge_dir(l, role) == Some(intern(dir))
}

pub fn edge_pairs(l: &Label) -> Vec<(&'static str, &'static str)> {
    l.payload
        .chunks_exact(2)
        .filter_map(|pair| match pair {
            [Scalar::S(r), Scalar::S(d)] => Some((*r, *d)),
            _ => None,
        })
        .collect()
}

// ---- node inputs ----

/// Bit-valued node input (vertical-path certificates, row games).
pub fn bit_node(b: u8) -> Label {
    Label::new("bit", vec![Scalar::I(i64::from(b))])
}

pub fn bit_of(l: &Label) -> Option<u8> {
    (l.tag == "bit").then(|| l.int(0)).flatten().map(|v| v as u8)
}

/// Transcript cell: tape symbol, head flag, and machine state (`None` = no state).
pub fn tm_node(sym: &str, head: bool, state: Option<u32>) -> Label {
    Label::new(
        "tm",
        vec![
            Scalar::S(intern(sym)),
            Scalar::B(head),
            Scalar::I(state.map_or(-1, i64::from)),
        ],
    )
}

pub fn tm_parts(l: &Label) -> Option<(&'static str, bool, Option<u32>)> {
    if l.tag != "tm" {
        return None;
    }
    let sym = l.str(0)?;
    let head = l.bool(1)?;
    let state = match l.int(2)? {
        -1 => None,
        s => Some(u32::try_from(s).ok()?),
    };
    Some((sym, head, state))
}

/// Node that carries no transcript cell.
pub fn plain_node() -> Label {
    Label::bare("plain")
}

/// Structure node carrying nothing but a mark slot.
pub fn struct_node() -> Label {
    Label::bare("node")
}

/// Appends a mark flag to any node input label.
pub fn with_mark(l: &Label, marked: bool) -> Label {
    let mut payload = l.payload.clone();
    payload.push(Scalar::B(marked));
    Label { tag: l.tag, payload }
}

/// Reads the mark appended by [`with_mark`].
pub fn mark_of(l: &Label) -> Option<bool> {
    match l.payload.last() {
        Some(Scalar::B(m)) => Some(*m),
        _ => None,
    }
}

pub fn strip_mark(l: &Label) -> Label {
    let mut payload = l.payload.clone();
    if matches!(payload.last(), Some(Scalar::B(_))) {
        payload.pop();
    }
    Label { tag: l.tag, payload }
}

/// Aliased-grid node inputs: every node is a tree node; grid rows additionally
/// carry a certificate bit.
pub fn ag_tree() -> Label {
    Label::new("agN", vec![Scalar::S(intern("t"))])
}

pub fn ag_grid(bit: u8) -> Label {
    Label::new("agN", vec![Scalar::S(intern("tg")), Scalar::I(i64::from(bit))])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgIn {
    Tree,
    Grid(u8),
}

pub fn ag_parts(l: &Label) -> Option<AgIn> {
    if l.tag != "agN" {
        return None;
    }
    match l.str(0)? {
        "t" => Some(AgIn::Tree),
        "tg" => Some(AgIn::Grid(l.int(1)? as u8)),
        _ => None,
    }
}

pub fn gadget_node() -> Label {
    Label::bare("gadg")
}

// ---- outputs ----

pub fn err() -> Label {
    Label::bare("err")
}

/// Err variant naming the violated family: "tree", "grid", "vert", "gadget".
pub fn err_kind(kind: &str) -> Label {
    Label::new("err", vec![Scalar::S(intern(kind))])
}

pub fn colerr_err() -> Label {
    Label::new("colErr", vec![Scalar::S(intern("E"))])
}

pub fn colerr_ptr(dir: &str) -> Label {
    Label::new("colErr", vec![Scalar::S(intern("ptr")), Scalar::S(intern(dir))])
}

pub fn colerr_ptr_dir(l: &Label) -> Option<&'static str> {
    (l.tag == "colErr" && l.str(0) == Some(intern("ptr")))
        .then(|| l.str(1))
        .flatten()
}

/// Any of the error variants a violating node may emit.
pub fn is_err_family(l: &Label) -> bool {
    l.tag == "err" || (l.tag == "colErr" && l.str(0) == Some(intern("E")))
}

/// Pointer node output carrying the direction of its next hop.
pub fn ptr_node(dir: &str) -> Label {
    Label::new("point", vec![Scalar::S(intern(dir))])
}

pub fn ptr_node_dir(l: &Label) -> Option<&'static str> {
    (l.tag == "point").then(|| l.str(0)).flatten()
}

/// Bare pointer node output (hop carried on an edge output instead).
pub fn ptr_mark() -> Label {
    Label::bare("point")
}

/// Edge-output pointer hop: leg counter `c`, tree direction `p`, tree kind `t`.
pub fn sag_ptr(c: u8, p: &str, t: &str) -> Label {
    Label::new(
        "sptr",
        vec![Scalar::I(i64::from(c)), Scalar::S(intern(p)), Scalar::S(intern(t))],
    )
}

pub fn sag_ptr_parts(l: &Label) -> Option<(u8, &'static str, &'static str)> {
    if l.tag != "sptr" {
        return None;
    }
    Some((l.int(0)? as u8, l.str(1)?, l.str(2)?))
}

pub fn vote(yes: bool) -> Label {
    Label::new("vote", vec![Scalar::B(yes)])
}

pub fn vote_parts(l: &Label) -> Option<bool> {
    (l.tag == "vote").then(|| l.bool(0)).flatten()
}

pub fn bit_vote(b: u8, yes: bool) -> Label {
    Label::new("bvote", vec![Scalar::I(i64::from(b)), Scalar::B(yes)])
}

pub fn bit_vote_parts(l: &Label) -> Option<(u8, bool)> {
    if l.tag != "bvote" {
        return None;
    }
    Some((l.int(0)? as u8, l.bool(1)?))
}

// ---- composed instance inputs ----

/// Aliased-grid-side node input: target bit plus the structural label.
pub fn pi_ag_in(b: u8, inner: AgIn) -> Label {
    let mut payload = vec![Scalar::I(i64::from(b))];
    payload.extend(match inner {
        AgIn::Tree => ag_tree().payload,
        AgIn::Grid(bit) => ag_grid(bit).payload,
    });
    Label::new("agIn", payload)
}

pub fn pi_ag_in_parts(l: &Label) -> Option<(u8, AgIn)> {
    if l.tag != "agIn" {
        return None;
    }
    let b = l.int(0)? as u8;
    let inner = Label::new("agN", l.payload[1..].to_vec());
    Some((b, ag_parts(&inner)?))
}

/// Transcript-side node input: a marked cell or plain label.
pub fn pi_satm_in(inner: &Label) -> Label {
    let mut payload = vec![Scalar::S(intern(inner.tag))];
    payload.extend(inner.payload.iter().copied());
    Label::new("saIn", payload)
}

pub fn pi_satm_in_parts(l: &Label) -> Option<Label> {
    if l.tag != "saIn" {
        return None;
    }
    let tag = l.str(0)?;
    Some(Label::new(tag, l.payload[1..].to_vec()))
}

fn wrap_edge(tag: &str, inner: &Label) -> Label {
    Label::new(tag, inner.payload.clone())
}

fn unwrap_edge(tag: &str, l: &Label) -> Option<Label> {
    (l.tag == tag).then(|| Label::new(EDGE_TAG, l.payload.clone()))
}

pub fn pi_ag_edge(inner: &Label) -> Label {
    wrap_edge("agE", inner)
}

pub fn pi_ag_edge_parts(l: &Label) -> Option<Label> {
    unwrap_edge("agE", l)
}

pub fn pi_satm_edge(inner: &Label) -> Label {
    wrap_edge("saE", inner)
}

pub fn pi_satm_edge_parts(l: &Label) -> Option<Label> {
    unwrap_edge("saE", l)
}

pub fn connect() -> Label {
    Label::bare("connect")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_sets_are_order_insensitive() {
        let a = edge(&[(roles::BOTTOM_GRID, "D"), (roles::COL_TREE, "L")]);
        let b = edge(&[(roles::COL_TREE, "L"), (roles::BOTTOM_GRID, "D")]);
        assert_eq!(a, b);
        assert_eq!(edge_dir(&a, roles::COL_TREE), Some("L"));
        assert_eq!(edge_dir(&a, roles::TOP_TREE), None);
        assert!(edge_has(&a, roles::BOTTOM_GRID, "D"));
        assert!(!edge_has(&a, roles::BOTTOM_GRID, "U"));
    }

    #[test]
    fn tm_parts_round_trip() {
        assert_eq!(tm_parts(&tm_node("#L", true, Some(0))), Some(("#L", true, Some(0))));
        assert_eq!(tm_parts(&tm_node("1", false, None)), Some(("1", false, None)));
        assert_eq!(tm_parts(&plain_node()), None);
    }

    #[test]
    fn marks_stack_and_strip() {
        let cell = tm_node("0", false, None);
        let marked = with_mark(&cell, true);
        assert_eq!(mark_of(&marked), Some(true));
        assert_eq!(strip_mark(&marked), cell);
        assert_eq!(mark_of(&cell), None, "unmarked cell ends in a state int");
        assert_eq!(mark_of(&with_mark(&struct_node(), false)), Some(false));
    }

    #[test]
    fn composed_inputs_round_trip() {
        let (b, inner) = pi_ag_in_parts(&pi_ag_in(1, AgIn::Grid(0))).unwrap();
        assert_eq!((b, inner), (1, AgIn::Grid(0)));
        let cell = with_mark(&tm_node("1", true, Some(3)), false);
        assert_eq!(pi_satm_in_parts(&pi_satm_in(&cell)), Some(cell));
        let e = edge(&[(roles::GRID, "L"), (roles::TREE, "R")]);
        assert_eq!(pi_ag_edge_parts(&pi_ag_edge(&e)), Some(e));
    }

    #[test]
    fn err_family_membership() {
        assert!(is_err_family(&err()));
        assert!(is_err_family(&err_kind("vert")));
        assert!(is_err_family(&colerr_err()));
        assert!(!is_err_family(&colerr_ptr("P")));
        assert!(!is_err_family(&vote(true)));
        assert_eq!(colerr_ptr_dir(&colerr_ptr("CR")), Some("CR"));
    }
}
