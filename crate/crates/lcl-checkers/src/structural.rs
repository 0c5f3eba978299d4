use crate::grid_rules::{grid_flags, grid_violations};
use crate::proj::{edges_well_formed, Roled};
use crate::report::{CheckReport, Violation};
use crate::tm_rules::{tm_violations, Cell};
use crate::tree_rules::tree_violations;
use crate::vert_rules::vert_violations;
use graph_core::vocab::{self, roles, GRID_DIRS, TREE_DIRS};
use graph_core::{LabeledGraph, NodeId};
use rayon::prelude::*;

pub(crate) fn par_nodes<F>(g: &LabeledGraph, f: F) -> Vec<Violation>
where
    F: Fn(NodeId, &mut Vec<Violation>) + Sync,
{
    (0..g.n())
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            f(v, &mut out);
            out
        })
        .collect()
}

pub(crate) fn pushed<'a>(
    node: NodeId,
    out: &'a mut Vec<Violation>,
) -> impl FnMut(&'static str) + 'a {
    move |rule| out.push(Violation { node, rule })
}

/// Layered-tree instances: no node inputs, every edge a single tree direction.
pub fn check_tree(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::TREE);
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        if !edges_well_formed(g, v, &[(roles::TREE, &TREE_DIRS)]) || g.node_input(v).is_some() {
            push("tree.input");
        }
        tree_violations(&t, v, &mut push);
    }))
}

/// Rectangular-grid instances. The two named flags are the graph-level
/// conditions that per-node rules cannot see (a torus satisfies all of them).
pub fn check_grid(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::GRID);
    let violations = par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        if !edges_well_formed(g, v, &[(roles::GRID, &GRID_DIRS)]) || g.node_input(v).is_some() {
            push("grid.input");
        }
        grid_violations(&t, v, &mut push);
    });
    let nodes: Vec<NodeId> = (0..g.n()).collect();
    CheckReport::from_violations(violations).with_flags(grid_flags(&t, &nodes).to_vec())
}

/// Grid instances carrying the diagonal 0/1 certificate on every node.
pub fn check_vgrid(g: &LabeledGraph) -> CheckReport {
    let t = Roled::new(g, roles::GRID);
    let bit = |v: NodeId| g.node_input(v).and_then(vocab::bit_of);
    let violations = par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        if !edges_well_formed(g, v, &[(roles::GRID, &GRID_DIRS)]) {
            push("grid.input");
        }
        grid_violations(&t, v, &mut push);
        vert_violations(&t, v, &bit, &mut push);
    });
    let nodes: Vec<NodeId> = (0..g.n()).collect();
    CheckReport::from_violations(violations).with_flags(grid_flags(&t, &nodes).to_vec())
}

/// A transcript grid: a plain grid whose every node carries a (symbol, head,
/// state) cell, spelling a complete run of `m` column by column.
pub fn check_tm_grid(g: &LabeledGraph, m: &tm_engine::TuringMachine) -> CheckReport {
    let t = Roled::new(g, roles::GRID);
    let cell = |v: NodeId| g.node_input(v).and_then(vocab::tm_parts);
    let violations = par_nodes(g, |v, out| {
        let mut push = pushed(v, out);
        if !edges_well_formed(g, v, &[(roles::GRID, &GRID_DIRS)]) {
            push("grid.input");
        }
        grid_violations(&t, v, &mut push);
        tm_violations(&t, v, m, &cell, &mut push);
    });
    let nodes: Vec<NodeId> = (0..g.n()).collect();
    CheckReport::from_violations(violations).with_flags(grid_flags(&t, &nodes).to_vec())
}

/// Per-node structural rules for a tree-aliased grid: every node is a tree
/// node, grid labels appear exactly on leaves, and leaf layer edges double as
/// vertical grid edges (row r sits at leaf position h-1-r, so tree-L is
/// grid-D).
pub(crate) fn ag_node_violations(
    g: &LabeledGraph,
    v: NodeId,
    push: &mut dyn FnMut(&'static str),
) -> bool {
    ag_node_violations_with(g, v, false, push)
}

/// Gadget-tolerant variant: when `allow_gadget` is set, half-edges carrying
/// the gadget role are legitimate (their multiplicity is someone else's
/// rule), everything else is unchanged.
pub(crate) fn ag_node_violations_with(
    g: &LabeledGraph,
    v: NodeId,
    allow_gadget: bool,
    push: &mut dyn FnMut(&'static str),
) -> bool {
    let mut bad = false;
    let mut push_track = |rule: &'static str| {
        bad = true;
        push(rule);
    };
    let tr = Roled::new(g, roles::TREE);
    let gr = Roled::new(g, roles::GRID);
    const GADGET_DIRS: [&str; 1] = ["G"];
    let strict: [(&str, &[&str]); 2] =
        [(roles::TREE, &TREE_DIRS), (roles::GRID, &GRID_DIRS)];
    let tolerant: [(&str, &[&str]); 3] =
        [(roles::TREE, &TREE_DIRS), (roles::GRID, &GRID_DIRS), (roles::GADGET, &GADGET_DIRS)];
    let ok = if allow_gadget {
        edges_well_formed(g, v, &tolerant)
    } else {
        edges_well_formed(g, v, &strict)
    };
    if !ok {
        push_track("ag.edge");
    }
    tree_violations(&tr, v, &mut push_track);
    let is_leaf = tr.has(v, "P") && !tr.has(v, "CL");
    if gr.member(v) != is_leaf {
        push_track("ag.membership");
    }
    if is_leaf {
        grid_violations(&gr, v, &mut push_track);
        for (_, lab) in g.half_edges_at(v) {
            if let Some(l) = lab {
                let pair_ok = (vocab::edge_has(l, roles::TREE, "L")
                    == vocab::edge_has(l, roles::GRID, "D"))
                    && (vocab::edge_has(l, roles::TREE, "R")
                        == vocab::edge_has(l, roles::GRID, "U"))
                    && !(vocab::edge_has(l, roles::TREE, "P")
                        && vocab::edge_dir(l, roles::GRID).is_some());
                if !pair_ok {
                    push_track("ag.fusion");
                }
            }
        }
    }
    !bad
}

/// Unlabeled tree-aliased grids (node inputs, if any, are ignored here; the
/// labeled variant is the business of the marked-error checkers).
pub fn check_ag(g: &LabeledGraph) -> CheckReport {
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut sink = pushed(v, out);
        ag_node_violations(g, v, &mut sink);
    }))
}

/// Per-node structural rules for the spine-aliased transcript carrier:
/// column trees over the bottom grid (leaves aliased to cells, deeper rows to
/// the left), their left spines forming the side grid (deeper spine nodes in
/// higher side rows), and a top tree whose leaves are the column-tree roots.
pub(crate) fn sag_node_violations(
    g: &LabeledGraph,
    v: NodeId,
    push: &mut dyn FnMut(&'static str),
) -> bool {
    let mut bad = false;
    let mut push_track = |rule: &'static str| {
        bad = true;
        push(rule);
    };
    let col = Roled::new(g, roles::COL_TREE);
    let top = Roled::new(g, roles::TOP_TREE);
    let bot = Roled::new(g, roles::BOTTOM_GRID);
    let side = Roled::new(g, roles::SIDE_GRID);
    if !edges_well_formed(
        g,
        v,
        &[
            (roles::COL_TREE, &TREE_DIRS),
            (roles::TOP_TREE, &TREE_DIRS),
            (roles::BOTTOM_GRID, &GRID_DIRS),
            (roles::SIDE_GRID, &GRID_DIRS),
        ],
    ) {
        push_track("sag.edge");
    }

    if col.member(v) {
        tree_violations(&col, v, &mut push_track);
    }
    if top.member(v) {
        tree_violations(&top, v, &mut push_track);
    }
    if !col.member(v) && !top.member(v) {
        push_track("sag.membership");
    }

    let is_bottom = col.has(v, "P") && !col.has(v, "CL");
    let is_side = col.member(v) && !col.has(v, "L") && col.has(v, "CL");
    let is_root = col.member(v) && !col.has(v, "P");

    // bottom cells are exactly the column-tree leaves
    if bot.member(v) != is_bottom {
        push_track("sag.membership");
    }
    if is_bottom {
        grid_violations(&bot, v, &mut push_track);
        for (_, lab) in g.half_edges_at(v) {
            if let Some(l) = lab {
                let ok = (vocab::edge_has(l, roles::COL_TREE, "L")
                    == vocab::edge_has(l, roles::BOTTOM_GRID, "D"))
                    && (vocab::edge_has(l, roles::COL_TREE, "R")
                        == vocab::edge_has(l, roles::BOTTOM_GRID, "U"))
                    && !(vocab::edge_has(l, roles::COL_TREE, "P")
                        && vocab::edge_pairs(l).len() > 1)
                    && vocab::edge_dir(l, roles::SIDE_GRID).is_none()
                    && vocab::edge_dir(l, roles::TOP_TREE).is_none();
                if !ok {
                    push_track("sag.fusion");
                }
            }
        }
    }

    // side cells are exactly the spine nodes; climbing the spine is moving up
    // the side grid
    if side.member(v) != is_side {
        push_track("sag.membership");
    }
    if is_side {
        grid_violations(&side, v, &mut push_track);
        for (w, lab) in g.half_edges_at(v) {
            if let Some(l) = lab {
                let has_d = vocab::edge_has(l, roles::SIDE_GRID, "D");
                let has_u = vocab::edge_has(l, roles::SIDE_GRID, "U");
                let has_p = vocab::edge_has(l, roles::COL_TREE, "P");
                let has_cl = vocab::edge_has(l, roles::COL_TREE, "CL");
                if has_d != has_p {
                    push_track("sag.fusion");
                }
                if has_u && !has_cl {
                    push_track("sag.fusion");
                }
                if has_cl {
                    let wcol = Roled::new(g, roles::COL_TREE);
                    let w_is_bottom = wcol.has(w, "P") && !wcol.has(w, "CL");
                    if has_u == w_is_bottom {
                        push_track("sag.fusion");
                    }
                }
                for (dh, dt) in [("L", "R"), ("R", "L")] {
                    if vocab::edge_has(l, roles::SIDE_GRID, dh) {
                        let top_fused = vocab::edge_has(l, roles::TOP_TREE, dt);
                        if top_fused != is_root {
                            push_track("sag.fusion");
                        }
                        let extra = vocab::edge_pairs(l)
                            .iter()
                            .any(|&(r, d)| {
                                !(r == roles::SIDE_GRID && d == dh)
                                    && !(r == roles::TOP_TREE && d == dt)
                            });
                        if extra {
                            push_track("sag.fusion");
                        }
                    }
                }
            }
        }
    }

    // top-tree labels sit exactly on column roots and the pure top nodes
    let top_allowed = is_root || !col.member(v);
    if top.member(v) && !top_allowed {
        push_track("sag.membership");
    }
    if is_root && !top.member(v) {
        push_track("sag.membership");
    }
    if top.member(v) {
        for (_, lab) in g.half_edges_at(v) {
            if let Some(l) = lab {
                if vocab::edge_has(l, roles::TOP_TREE, "P") && vocab::edge_pairs(l).len() > 1 {
                    push_track("sag.fusion");
                }
                for (dt, dh) in [("R", "L"), ("L", "R")] {
                    if vocab::edge_has(l, roles::TOP_TREE, dt)
                        && vocab::edge_has(l, roles::SIDE_GRID, dh) != is_root
                    {
                        push_track("sag.fusion");
                    }
                }
                if !col.member(v)
                    && vocab::edge_pairs(l).iter().any(|&(r, _)| r != roles::TOP_TREE)
                {
                    push_track("sag.fusion");
                }
            }
        }
    }
    !bad
}

/// Unlabeled spine-aliased carriers.
pub fn check_sag(g: &LabeledGraph) -> CheckReport {
    CheckReport::from_violations(par_nodes(g, |v, out| {
        let mut sink = pushed(v, out);
        sag_node_violations(g, v, &mut sink);
    }))
}

/// Carrier plus transcript: structural rules, cell inputs exactly on the
/// bottom grid, and the machine rules over the bottom cells.
pub fn check_satm(g: &LabeledGraph, m: &tm_engine::TuringMachine) -> CheckReport {
    let bot = Roled::new(g, roles::BOTTOM_GRID);
    let cell = |u: NodeId| -> Option<Cell> { g.node_input(u).and_then(vocab::tm_parts) };
    CheckReport::from_violations(par_nodes(g, |v, out| {
        {
            let mut sink = pushed(v, out);
            sag_node_violations(g, v, &mut sink);
        }
        let col = Roled::new(g, roles::COL_TREE);
        let is_bottom = col.has(v, "P") && !col.has(v, "CL");
        let mut push = pushed(v, out);
        if is_bottom {
            tm_violations(&bot, v, m, &cell, &mut push);
        } else if g.node_input(v) != Some(&vocab::plain_node()) {
            push("satm.input");
        }
    }))
}
