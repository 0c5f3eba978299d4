//! Checkers for the marked-error output problems: given a structure whose
//! nodes carry mark bits (or whose labels are broken), a valid output labels
//! exactly the marked/broken nodes Err, lets clean nodes stay silent, and
//! allows pointer chains that walk toward an Err along monotone directions.
//!
//! Structural damage to the *input* is never itself a violation here — it
//! changes which outputs the rules demand.

use crate::proj::{edges_well_formed, Roled};
use crate::report::CheckReport;
use crate::structural::{ag_node_violations_with, par_nodes, pushed, sag_node_violations};
use crate::tm_rules::tm_violations;
use crate::tree_rules::tree_violations;
use crate::vert_rules::vert_violations;
use graph_core::vocab::{self, roles, AgIn, TREE_DIRS};
use graph_core::{Label, LabeledGraph, NodeId};

/// Chain monotonicity: a pointer in direction `p` may hand off to these
/// directions. Parent hops may turn into one layer sweep, sibling hops into a
/// layer sweep across the target subtree; layer sweeps never turn again.
pub(crate) fn ptr_next(p: &str) -> &'static [&'static str] {
    match p {
        "L" => &["L"],
        "R" => &["R"],
        "P" => &["P", "L", "R"],
        "CR" => &["CR", "L", "R"],
        _ => &[],
    }
}

const PTR_DIRS: [&str; 4] = ["P", "CR", "L", "R"];

fn is_bare(l: &Label, tag: &str) -> bool {
    l.tag == tag && l.payload.is_empty()
}

// ---- marked layered trees ----

fn tree_local(g: &LabeledGraph, v: NodeId) -> (bool, bool) {
    let mut bad = !edges_well_formed(g, v, &[(roles::TREE, &TREE_DIRS)]);
    {
        let mut sink = |_: &'static str| bad = true;
        tree_violations(&Roled::new(g, roles::TREE), v, &mut sink);
    }
    let marked = match g.node_input(v) {
        Some(l) if vocab::strip_mark(l) == vocab::struct_node() => vocab::mark_of(l),
        _ => None,
    };
    (!bad && marked.is_some(), marked.unwrap_or(false))
}

/// Marked layered trees: Err exactly on marked or locally broken nodes;
/// pointer chains walk via P then one layer direction, or CR then one layer
/// direction, ending at an Err.
pub fn check_bad_tree(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::TREE);
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        let (local, marked) = tree_local(g, v);
        let needs_err = marked || !local;
        match g.node_output(v) {
            None => {
                if needs_err {
                    push("badtree.err-iff");
                }
            }
            Some(l) if is_bare(l, "err") => {
                if !needs_err {
                    push("badtree.err-iff");
                }
            }
            Some(l) => match vocab::ptr_node_dir(l) {
                Some(p) if PTR_DIRS.contains(&p) => {
                    if needs_err {
                        push("badtree.err-iff");
                    }
                    let ok = match t.step(v, p) {
                        Some(u) => match g.node_output(u) {
                            Some(ul) if is_bare(ul, "err") => true,
                            Some(ul) => vocab::ptr_node_dir(ul)
                                .is_some_and(|q| ptr_next(p).contains(&q)),
                            None => false,
                        },
                        None => false,
                    };
                    if !ok {
                        push("badtree.chain");
                    }
                }
                _ => push("badtree.output"),
            },
        }
        if g.half_edge_outputs_at(v).any(|(_, l)| l.is_some()) {
            push("badtree.edge-output");
        }
    }))
}

// ---- labeled tree-aliased grids ----

fn ag_local(g: &LabeledGraph, v: NodeId, allow_gadget: bool) -> bool {
    let mut sink = |_: &'static str| {};
    let structural_ok = ag_node_violations_with(g, v, allow_gadget, &mut sink);
    let tr = Roled::new(g, roles::TREE);
    let is_leaf = tr.has(v, "P") && !tr.has(v, "CL");
    let input_ok = match g.node_input(v).and_then(vocab::ag_parts) {
        Some(AgIn::Grid(b)) if is_leaf && b <= 1 => {
            let gr = Roled::new(g, roles::GRID);
            let bit = |u: NodeId| match g.node_input(u).and_then(vocab::ag_parts) {
                Some(AgIn::Grid(b)) => Some(b),
                _ => None,
            };
            let mut vert_ok = true;
            let mut sink = |_: &'static str| vert_ok = false;
            vert_violations(&gr, v, &bit, &mut sink);
            vert_ok
        }
        Some(AgIn::Tree) => !is_leaf,
        _ => false,
    };
    structural_ok && input_ok
}

struct ErrRules {
    iff: &'static str,
    chain: &'static str,
    output: &'static str,
}

/// Shared output discipline of the column-error problems: silence iff clean,
/// an err-family label iff erring, and column-error pointers only on clean
/// nodes, hopping monotonically through the tree role toward an error.
fn colerr_discipline(
    g: &LabeledGraph,
    t: &Roled,
    v: NodeId,
    needs_err: bool,
    rules: &ErrRules,
    push: &mut impl FnMut(&'static str),
) {
    match g.node_output(v) {
        None => {
            if needs_err {
                push(rules.iff);
            }
        }
        Some(l) if vocab::is_err_family(l) => {
            if !needs_err {
                push(rules.iff);
            }
        }
        Some(l) => match vocab::colerr_ptr_dir(l) {
            Some(p) if PTR_DIRS.contains(&p) => {
                if needs_err {
                    push(rules.iff);
                }
                let ok = match t.step(v, p) {
                    Some(u) => match g.node_output(u) {
                        Some(ul) if vocab::is_err_family(ul) => true,
                        Some(ul) => {
                            vocab::colerr_ptr_dir(ul).is_some_and(|q| ptr_next(p).contains(&q))
                        }
                        None => false,
                    },
                    None => false,
                };
                if !ok {
                    push(rules.chain);
                }
            }
            _ => push(rules.output),
        },
    }
}

/// Labeled tree-aliased grids: nodes where the structure, the tree/grid
/// membership of the input, or the diagonal certificate is broken must emit
/// an error label, clean nodes must not, and column-error pointers trace
/// through the tree toward an error.
pub fn check_bad_ag(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::TREE);
    const RULES: ErrRules =
        ErrRules { iff: "badag.err-iff", chain: "badag.chain", output: "badag.output" };
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        colerr_discipline(g, &t, v, !ag_local(g, v, false), &RULES, &mut push);
        if g.half_edge_outputs_at(v).any(|(_, l)| l.is_some()) {
            push("badag.edge-output");
        }
    }))
}

// ---- gadget-carrying tree-aliased grids ----

fn gadget_edge() -> Label {
    vocab::edge(&[(roles::GADGET, "G")])
}

/// Largest well-formed gadget has five members; anything bigger is junk.
const GADGET_CAP: usize = 6;

/// Node-induced connected component of gadget-labeled nodes around `v`,
/// abandoned once it outgrows every well-formed shape.
fn gadget_component(g: &LabeledGraph, v: NodeId) -> Vec<NodeId> {
    let is_gadget = |u: NodeId| g.node_input(u) == Some(&vocab::gadget_node());
    let mut seen = vec![v];
    let mut queue = vec![v];
    while let Some(u) = queue.pop() {
        for w in g.neighbors(u) {
            if is_gadget(w) && !seen.contains(&w) {
                seen.push(w);
                if seen.len() > GADGET_CAP {
                    return seen;
                }
                queue.push(w);
            }
        }
    }
    seen
}

/// True when the component is one of the two carved-bit shapes hanging off
/// exactly one structure node: a two-node tail from the site, closing into a
/// triangle (bit 1) or through a far fourth node (bit 0), every edge
/// gadget-tagged on both sides.
fn gadget_component_ok(g: &LabeledGraph, comp: &[NodeId]) -> bool {
    if comp.len() != 4 && comp.len() != 5 {
        return false;
    }
    let ge = gadget_edge();
    let tagged = |x: NodeId, y: NodeId| {
        g.half_edge_input(x, y) == Some(&ge) && g.half_edge_input(y, x) == Some(&ge)
    };
    let mut attach = None;
    for &u in comp {
        for w in g.neighbors(u) {
            if comp.contains(&w) {
                if !tagged(u, w) {
                    return false;
                }
            } else if attach.replace((u, w)).is_some() {
                return false;
            }
        }
    }
    let Some((anchor, site)) = attach else {
        return false;
    };
    if !tagged(anchor, site) || g.node_input(site).and_then(vocab::ag_parts).is_none() {
        return false;
    }
    let inner =
        |x: NodeId| -> Vec<NodeId> { g.neighbors(x).filter(|w| comp.contains(w)).collect() };
    let &[a] = inner(anchor).as_slice() else {
        return false;
    };
    let far: Vec<NodeId> = inner(a).into_iter().filter(|&w| w != anchor).collect();
    let &[b1, b2] = far.as_slice() else {
        return false;
    };
    if g.degree(anchor) != 2 || g.degree(a) != 3 || g.degree(b1) != 2 || g.degree(b2) != 2 {
        return false;
    }
    if comp.len() == 4 {
        g.has_edge(b1, b2)
    } else {
        let d = comp.iter().copied().find(|&x| x != anchor && x != a && x != b1 && x != b2);
        match d {
            Some(d) => {
                g.degree(d) == 2 && g.has_edge(b1, d) && g.has_edge(b2, d) && !g.has_edge(b1, b2)
            }
            None => false,
        }
    }
}

/// The gadget-side obligations of a structure node: internal tree nodes must
/// never touch gadgets, and a grid node must carry exactly one gadget edge
/// leading to a gadget-labeled, silent anchor.
fn gadget_demands_err(g: &LabeledGraph, v: NodeId) -> bool {
    let ge = gadget_edge();
    let anchors: Vec<NodeId> =
        g.half_edges_at(v).filter(|&(_, l)| l == Some(&ge)).map(|(w, _)| w).collect();
    let is_grid = matches!(g.node_input(v).and_then(vocab::ag_parts), Some(AgIn::Grid(_)));
    if !is_grid {
        return !anchors.is_empty();
    }
    let &[u] = anchors.as_slice() else {
        return true;
    };
    g.node_input(u) != Some(&vocab::gadget_node()) || g.node_output(u).is_some()
}

/// Gadget-carrying tree-aliased grids: the aliased-grid discipline where
/// every grid node additionally hangs exactly one carved-bit gadget. Tree
/// nodes touching gadgets and grid nodes with missing, extra, malformed, or
/// noisy gadgets must err; gadget nodes answer for their component's shape
/// and otherwise stay silent.
pub fn check_bad_agg(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::TREE);
    const RULES: ErrRules =
        ErrRules { iff: "badagg.err-iff", chain: "badagg.chain", output: "badagg.output" };
    let gadget_err = vocab::err_kind("gadget");
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        if g.node_input(v) == Some(&vocab::gadget_node()) {
            let ok = gadget_component_ok(g, &gadget_component(g, v));
            match (ok, g.node_output(v)) {
                (true, None) => {}
                (false, Some(l)) if *l == gadget_err => {}
                _ => push("badagg.gadget"),
            }
        } else {
            let needs_err = !ag_local(g, v, true) || gadget_demands_err(g, v);
            colerr_discipline(g, &t, v, needs_err, &RULES, &mut push);
        }
        if g.half_edge_outputs_at(v).any(|(_, l)| l.is_some()) {
            push("badagg.edge-output");
        }
    }))
}

// ---- marked transcript carriers ----

fn satm_input_ok(g: &LabeledGraph, v: NodeId, is_bottom: bool) -> Option<bool> {
    let l = g.node_input(v)?;
    let marked = vocab::mark_of(l)?;
    let inner = vocab::strip_mark(l);
    let shape_ok = if is_bottom {
        vocab::tm_parts(&inner).is_some()
    } else {
        inner == vocab::plain_node()
    };
    shape_ok.then_some(marked)
}

fn bad_sag_core(
    g: &LabeledGraph,
    local_and_mark: impl Fn(NodeId) -> (bool, bool) + Sync,
) -> CheckReport {
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        let (local, marked) = local_and_mark(v);
        let needs_err = marked || !local;
        let outgoing: Vec<(NodeId, &Label)> = g
            .half_edge_outputs_at(v)
            .filter_map(|(w, l)| l.map(|l| (w, l)))
            .collect();
        match g.node_output(v) {
            None => {
                if needs_err {
                    push("badsag.err-iff");
                }
                if !outgoing.is_empty() {
                    push("badsag.edge-output");
                }
            }
            Some(l) if is_bare(l, "err") => {
                if !needs_err {
                    push("badsag.err-iff");
                }
                if !outgoing.is_empty() {
                    push("badsag.edge-output");
                }
            }
            Some(l) if is_bare(l, "point") => {
                if needs_err {
                    push("badsag.err-iff");
                }
                match outgoing.as_slice() {
                    [(w, hop)] => {
                        if !hop_ok(g, v, *w, hop) {
                            push("badsag.chain");
                        }
                    }
                    _ => push("badsag.chain"),
                }
            }
            Some(_) => push("badsag.output"),
        }
    }))
}

/// One pointer hop: leg counter in range, the hop direction really is carried
/// by that half-edge for the named tree, and the target either errs, or
/// continues the same leg monotonically, or starts a later leg.
fn hop_ok(g: &LabeledGraph, v: NodeId, w: NodeId, hop: &Label) -> bool {
    let Some((c, p, t)) = vocab::sag_ptr_parts(hop) else {
        return false;
    };
    if !(1..=3).contains(&c) || !PTR_DIRS.contains(&p) {
        return false;
    }
    if (c == 2) != (t == roles::TOP_TREE) || (t != roles::TOP_TREE && t != roles::COL_TREE) {
        return false;
    }
    let carried = g
        .half_edge_input(v, w)
        .is_some_and(|l| vocab::edge_has(l, t, p));
    if !carried {
        return false;
    }
    match g.node_output(w) {
        Some(wl) if is_bare(wl, "err") => true,
        Some(wl) if is_bare(wl, "point") => {
            let mut nexts = g.half_edge_outputs_at(w).filter_map(|(_, l)| l);
            match (nexts.next(), nexts.next()) {
                (Some(next), None) => match vocab::sag_ptr_parts(next) {
                    Some((c2, p2, t2)) => {
                        c2 > c || (c2 == c && t2 == t && ptr_next(p).contains(&p2))
                    }
                    None => false,
                },
                _ => false,
            }
        }
        _ => false,
    }
}

/// Marked bare carriers: structure rules only.
pub fn check_bad_sag(g: &LabeledGraph) -> CheckReport {
    bad_sag_core(g, |v| {
        let mut sink = |_: &'static str| {};
        let ok = sag_node_violations(g, v, &mut sink);
        match g.node_input(v) {
            Some(l)
                if vocab::strip_mark(l) == vocab::struct_node() && vocab::mark_of(l).is_some() =>
            {
                (ok, vocab::mark_of(l).unwrap())
            }
            _ => (false, false),
        }
    })
}

/// Local validity and mark of one carrier node under the transcript rules.
pub(crate) fn satm_local_and_mark(
    g: &LabeledGraph,
    m: &tm_engine::TuringMachine,
    v: NodeId,
) -> (bool, bool) {
    let mut sink = |_: &'static str| {};
    let mut ok = sag_node_violations(g, v, &mut sink);
    let col = Roled::new(g, roles::COL_TREE);
    let is_bottom = col.has(v, "P") && !col.has(v, "CL");
    let marked = match satm_input_ok(g, v, is_bottom) {
        Some(mk) => mk,
        None => {
            ok = false;
            false
        }
    };
    if is_bottom {
        let bot = Roled::new(g, roles::BOTTOM_GRID);
        let cell = |u: NodeId| {
            g.node_input(u)
                .map(vocab::strip_mark)
                .and_then(|l| vocab::tm_parts(&l))
        };
        let mut tm_sink = |_: &'static str| ok = false;
        tm_violations(&bot, v, m, &cell, &mut tm_sink);
    }
    (ok, marked)
}

/// Marked transcript carriers: structure rules, cell membership, and the
/// machine rules over the bottom cells.
pub fn check_bad_satm(g: &LabeledGraph, m: &tm_engine::TuringMachine) -> CheckReport {
    bad_sag_core(g, |v| satm_local_and_mark(g, m, v))
}

// ---- node-local obligations ----
//
// The per-node "must err" decisions behind the checkers above, exported so
// distributed programs computing outputs from a reconstructed neighborhood
// demand of themselves exactly what the checkers will.

/// Marked-tree obligation: marked or locally broken.
pub fn tree_obligation(g: &LabeledGraph, v: NodeId) -> bool {
    let (local, marked) = tree_local(g, v);
    marked || !local
}

/// Aliased-grid obligation: a structure or certificate rule broken at `v`.
pub fn ag_obligation(g: &LabeledGraph, v: NodeId) -> bool {
    !ag_local(g, v, false)
}

/// Gadget-carrying obligation of a structure (non-gadget) node. Where the
/// checker reads the anchor's confession, this reads the component shape the
/// confession will report, so a program erring here and confessing at broken
/// gadgets satisfies the checker exactly.
pub fn agg_obligation(g: &LabeledGraph, v: NodeId) -> bool {
    if !ag_local(g, v, true) {
        return true;
    }
    let ge = gadget_edge();
    let anchors: Vec<NodeId> =
        g.half_edges_at(v).filter(|&(_, l)| l == Some(&ge)).map(|(w, _)| w).collect();
    let is_grid = matches!(g.node_input(v).and_then(vocab::ag_parts), Some(AgIn::Grid(_)));
    if !is_grid {
        return !anchors.is_empty();
    }
    let &[u] = anchors.as_slice() else {
        return true;
    };
    g.node_input(u) != Some(&vocab::gadget_node()) || agg_gadget_broken(g, u)
}

/// Whether the gadget component through gadget node `v` fails its shape rules.
pub fn agg_gadget_broken(g: &LabeledGraph, v: NodeId) -> bool {
    !gadget_component_ok(g, &gadget_component(g, v))
}

/// Transcript-carrier obligation: marked or breaking structure, membership,
/// or machine rules.
pub fn satm_obligation(g: &LabeledGraph, m: &tm_engine::TuringMachine, v: NodeId) -> bool {
    let (local, marked) = satm_local_and_mark(g, m, v);
    marked || !local
}
