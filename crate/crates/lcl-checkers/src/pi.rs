//! Checker for the composed problem: a labeled tree-aliased grid joined by
//! connect edges to a marked transcript carrier, with votes percolating up
//! the grid-side trees. Its valid outputs are engineered so that a solver is
//! forced to reproduce the transcript's output column in its row bits
//! whenever the carrier side is clean.

use crate::bad::{check_bad_ag, check_bad_satm};
use crate::proj::Roled;
use crate::report::{CheckReport, Violation};
use crate::structural::par_nodes;
use crate::tm_rules::Cell;
use graph_core::vocab::{self, roles, AgIn};
use graph_core::{GraphBuilder, Label, LabeledGraph, NodeId};
use rayon::prelude::*;
use tm_engine::{TuringMachine, BLANK_R};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiKind {
    /// Grid-and-trees side; the payload is the node id in the projected graph.
    Ag(NodeId),
    /// Transcript-carrier side.
    Satm(NodeId),
    /// A gadget node (only legal in the gadgeted variant).
    Gadget,
    /// Unrecognized input label.
    Other,
}

/// The two projected instances hidden inside a composed instance, plus the
/// id maps between them and the composed graph.
pub struct PiParts {
    pub ag: LabeledGraph,
    pub satm: LabeledGraph,
    pub ag_orig: Vec<NodeId>,
    pub satm_orig: Vec<NodeId>,
    pub kind: Vec<PiKind>,
}

/// Splits a composed instance by node-input tag and unwraps the side-tagged
/// edge labels. Grid-side vote outputs are projected away (the grid-side
/// checker treats voting nodes as silent); carrier-side outputs and edge
/// outputs are kept verbatim. Edges whose wrapping is inconsistent are simply
/// dropped from the projections — the composed checker reports them itself.
pub fn split_pi(g: &LabeledGraph) -> PiParts {
    let n = g.n();
    let mut kind = Vec::with_capacity(n as usize);
    let mut ag_orig = Vec::new();
    let mut satm_orig = Vec::new();
    for v in 0..n {
        let k = match g.node_input(v) {
            Some(l) if l.tag == "agIn" && vocab::pi_ag_in_parts(l).is_some() => {
                ag_orig.push(v);
                PiKind::Ag(ag_orig.len() as NodeId - 1)
            }
            Some(l) if l.tag == "saIn" && vocab::pi_satm_in_parts(l).is_some() => {
                satm_orig.push(v);
                PiKind::Satm(satm_orig.len() as NodeId - 1)
            }
            Some(l) if *l == vocab::gadget_node() => PiKind::Gadget,
            _ => PiKind::Other,
        };
        kind.push(k);
    }

    let mut ab = GraphBuilder::new(ag_orig.len() as u32);
    let mut sb = GraphBuilder::new(satm_orig.len() as u32);
    for &(u, v) in g.edges() {
        match (kind[u as usize], kind[v as usize]) {
            (PiKind::Ag(su), PiKind::Ag(sv)) => {
                let lu = g.half_edge_input(u, v).and_then(vocab::pi_ag_edge_parts);
                let lv = g.half_edge_input(v, u).and_then(vocab::pi_ag_edge_parts);
                if let (Some(lu), Some(lv)) = (lu, lv) {
                    ab.add_edge(su, sv).unwrap();
                    ab.set_half_edge_input(su, sv, lu).unwrap();
                    ab.set_half_edge_input(sv, su, lv).unwrap();
                }
            }
            (PiKind::Satm(su), PiKind::Satm(sv)) => {
                let lu = g.half_edge_input(u, v).and_then(vocab::pi_satm_edge_parts);
                let lv = g.half_edge_input(v, u).and_then(vocab::pi_satm_edge_parts);
                if let (Some(lu), Some(lv)) = (lu, lv) {
                    sb.add_edge(su, sv).unwrap();
                    sb.set_half_edge_input(su, sv, lu).unwrap();
                    sb.set_half_edge_input(sv, su, lv).unwrap();
                    for (x, y, a, b) in [(u, v, su, sv), (v, u, sv, su)] {
                        if let Some(o) = g.half_edge_output(x, y) {
                            sb.set_half_edge_output(a, b, o.clone()).unwrap();
                        }
                    }
                }
            }
            _ => {}
        }
    }
    for (sub, &orig) in ag_orig.iter().enumerate() {
        let (_, inner) = vocab::pi_ag_in_parts(g.node_input(orig).unwrap()).unwrap();
        let label = match inner {
            AgIn::Tree => vocab::ag_tree(),
            AgIn::Grid(b) => vocab::ag_grid(b),
        };
        ab.set_node_input(sub as NodeId, label);
        if let Some(o) = g.node_output(orig) {
            if vocab::vote_parts(o).is_none() && vocab::bit_vote_parts(o).is_none() {
                ab.set_node_output(sub as NodeId, o.clone());
            }
        }
    }
    for (sub, &orig) in satm_orig.iter().enumerate() {
        let inner = vocab::pi_satm_in_parts(g.node_input(orig).unwrap()).unwrap();
        sb.set_node_input(sub as NodeId, inner);
        if let Some(o) = g.node_output(orig) {
            sb.set_node_output(sub as NodeId, o.clone());
        }
    }
    PiParts {
        ag: ab.finish().expect("projection of a degree-bounded graph"),
        satm: sb.finish().expect("projection of a degree-bounded graph"),
        ag_orig,
        satm_orig,
        kind,
    }
}

fn remap(report: CheckReport, orig: &[NodeId]) -> Vec<Violation> {
    report
        .sample
        .into_iter()
        .map(|v| Violation { node: orig[v.node as usize], rule: v.rule })
        .collect()
}

/// Inputs to the connect-column decision at one right-column grid node.
struct ConnectView<'g> {
    parts: &'g PiParts,
    g: &'g LabeledGraph,
}

impl<'g> ConnectView<'g> {
    /// The unique carrier node behind this grid node's connect edge.
    fn target(&self, u_orig: NodeId) -> Option<NodeId> {
        let mut found = None;
        for (w, lab) in self.g.half_edges_at(u_orig) {
            if lab == Some(&vocab::connect()) {
                if found.is_some() {
                    return None;
                }
                found = Some(w);
            }
        }
        found
    }

    fn satm_sub(&self, v_orig: NodeId) -> Option<NodeId> {
        match self.parts.kind[v_orig as usize] {
            PiKind::Satm(s) => Some(s),
            _ => None,
        }
    }

    fn cell(&self, v_sub: NodeId) -> Option<Cell> {
        self.parts
            .satm
            .node_input(v_sub)
            .map(vocab::strip_mark)
            .and_then(|l| vocab::tm_parts(&l))
    }

    /// True when the carrier node disqualifies its row from the input-output
    /// comparison: the solver's verdict there is forced YES.
    fn forced_yes(&self, u_orig: NodeId, u_sub: NodeId, gr: &Roled) -> bool {
        let Some(v_orig) = self.target(u_orig) else {
            return true;
        };
        let Some(v_sub) = self.satm_sub(v_orig) else {
            return true;
        };
        let Some((sym, _, _)) = self.cell(v_sub) else {
            return true;
        };
        let bot = Roled::new(&self.parts.satm, roles::BOTTOM_GRID);
        (!gr.has(u_sub, "D") && sym != BLANK_R)
            || (!gr.has(u_sub, "U") && bot.has(v_sub, "U"))
            || self.g.node_output(v_orig).is_some()
            || bot.has(v_sub, "L")
    }

    /// The transcript bit this row must echo, when the row qualifies.
    fn row_bit(&self, u_orig: NodeId) -> Option<u8> {
        let v_sub = self.satm_sub(self.target(u_orig)?)?;
        match self.cell(v_sub)?.0 {
            "0" => Some(0),
            "1" => Some(1),
            _ => None,
        }
    }
}

fn check_pi_inner(g: &LabeledGraph, m: &TuringMachine, allow_gadgets: bool) -> CheckReport {
    let parts = split_pi(g);
    let mut count = 0usize;
    let mut sample: Vec<Violation> = Vec::new();

    // projected-side constraint systems
    let satm_report = check_bad_satm(&parts.satm, m);
    count += satm_report.violation_count;
    sample.extend(remap(satm_report, &parts.satm_orig));
    let ag_report = check_bad_ag(&parts.ag);
    count += ag_report.violation_count;
    sample.extend(remap(ag_report, &parts.ag_orig));

    let mut all: Vec<Violation> = Vec::new();

    // node input kinds and edge wrapping
    let kind = &parts.kind;
    all.extend(par_nodes(g, |v, out| {
        let bad_kind = match kind[v as usize] {
            PiKind::Other => true,
            PiKind::Gadget => !allow_gadgets,
            _ => false,
        };
        if bad_kind {
            out.push(Violation { node: v, rule: "pi.input" });
        }
    }));
    let gadget_edge = vocab::edge(&[(roles::GADGET, "G")]);
    all.extend(
        g.edges()
            .par_iter()
            .flat_map_iter(|&(u, v)| {
                let lu = g.half_edge_input(u, v);
                let lv = g.half_edge_input(v, u);
                let ok = match (kind[u as usize], kind[v as usize]) {
                    (PiKind::Ag(_), PiKind::Ag(_)) => {
                        lu.is_some_and(|l| vocab::pi_ag_edge_parts(l).is_some())
                            && lv.is_some_and(|l| vocab::pi_ag_edge_parts(l).is_some())
                    }
                    (PiKind::Satm(_), PiKind::Satm(_)) => {
                        lu.is_some_and(|l| vocab::pi_satm_edge_parts(l).is_some())
                            && lv.is_some_and(|l| vocab::pi_satm_edge_parts(l).is_some())
                    }
                    (PiKind::Ag(_), PiKind::Satm(_)) | (PiKind::Satm(_), PiKind::Ag(_)) => {
                        lu == Some(&vocab::connect()) && lv == Some(&vocab::connect())
                    }
                    (PiKind::Gadget, PiKind::Gadget)
                    | (PiKind::Ag(_), PiKind::Gadget)
                    | (PiKind::Gadget, PiKind::Ag(_)) => {
                        allow_gadgets && lu == Some(&gadget_edge) && lv == Some(&gadget_edge)
                    }
                    _ => false,
                };
                let mut out = Vec::new();
                if !ok {
                    out.push(Violation { node: u.min(v), rule: "pi.edge" });
                }
                // only carrier-internal edges may carry edge outputs
                if !matches!(
                    (kind[u as usize], kind[v as usize]),
                    (PiKind::Satm(_), PiKind::Satm(_))
                ) && (g.half_edge_output(u, v).is_some() || g.half_edge_output(v, u).is_some())
                {
                    out.push(Violation { node: u.min(v), rule: "pi.edge-output" });
                }
                out
            })
            .collect::<Vec<_>>(),
    );

    // vote discipline on the grid-and-trees side
    let view = ConnectView { parts: &parts, g };
    let tr = Roled::new(&parts.ag, roles::TREE);
    let gr = Roled::new(&parts.ag, roles::GRID);
    all.extend(
        parts
            .ag_orig
            .par_iter()
            .enumerate()
            .flat_map_iter(|(sub, &orig)| {
                let mut out = Vec::new();
                let mut push = |rule: &'static str| out.push(Violation { node: orig, rule });
                let sub = sub as NodeId;
                let (b_in, inner) =
                    vocab::pi_ag_in_parts(g.node_input(orig).unwrap()).unwrap();
                let is_grid = matches!(inner, AgIn::Grid(_));
                let output = g.node_output(orig);
                let as_vote = output.and_then(vocab::vote_parts);
                let as_bit_vote = output.and_then(vocab::bit_vote_parts);
                match output {
                    None => push("pi.must-decide"),
                    Some(l)
                        if vocab::is_err_family(l) || vocab::colerr_ptr_dir(l).is_some() => {}
                    Some(_) if is_grid && as_bit_vote.is_some() => {}
                    Some(_) if !is_grid && as_vote.is_some() => {}
                    Some(_) => push("pi.output"),
                }

                if let Some((b, _)) = as_bit_vote.filter(|_| is_grid) {
                    // bits agree along a row
                    if let Some(r_sub) = gr.step(sub, "R") {
                        let r_out = g.node_output(parts.ag_orig[r_sub as usize]);
                        if let Some((rb, _)) = r_out.and_then(vocab::bit_vote_parts) {
                            if rb != b {
                                push("pi.row-bit");
                            }
                        }
                    }
                }

                if let Some(yes) = as_vote.filter(|_| !is_grid) {
                    // votes aggregate children disjunctively and roots must
                    // carry a YES
                    let mut child_yes = false;
                    let mut children_ok = true;
                    for d in ["CL", "CR"] {
                        match tr.step(sub, d) {
                            Some(c_sub) => {
                                let c_out = g.node_output(parts.ag_orig[c_sub as usize]);
                                match (
                                    c_out.and_then(vocab::vote_parts),
                                    c_out.and_then(vocab::bit_vote_parts),
                                ) {
                                    (Some(y), _) => child_yes |= y,
                                    (_, Some((_, y))) => child_yes |= y,
                                    _ => children_ok = false,
                                }
                            }
                            None => children_ok = false,
                        }
                    }
                    if !children_ok || yes != child_yes {
                        push("pi.vote");
                    }
                    if !tr.has(sub, "P") && !yes {
                        push("pi.root-yes");
                    }
                }

                // the connect-column decision
                if is_grid && !gr.has(sub, "R") {
                    if let Some((b_out, yes)) = as_bit_vote {
                        if view.forced_yes(orig, sub, &gr) {
                            if !yes {
                                push("pi.connect-forced-yes");
                            }
                        } else if !(gr.has(sub, "U") && gr.has(sub, "D")) {
                            if (b_out, yes) != (1, false) {
                                push("pi.connect-border");
                            }
                        } else if view.row_bit(orig) != Some(b_in) {
                            if !yes {
                                push("pi.connect-wrong-input");
                            }
                        } else if yes != (b_in == b_out) {
                            push("pi.connect-echo");
                        }
                    }
                }
                out
            })
            .collect::<Vec<_>>(),
    );

    count += all.len();
    sample.extend(all);
    sample.truncate(CheckReport::SAMPLE_CAP);
    CheckReport { violation_count: count, sample, flags: Vec::new() }
}

/// The composed two-sided problem. Checking radius 3.
pub fn check_pi(g: &LabeledGraph, m: &TuringMachine) -> CheckReport {
    check_pi_inner(g, m, false)
}

/// Which of the three solvable regimes an input labeling falls into. This is
/// a property of inputs alone (outputs are ignored), used to pick the right
/// playbook when solving and to bucket experiment statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Possibility {
    /// The carrier is broken or marked somewhere, or a connect row is
    /// structurally disqualified: every right-column verdict may be YES.
    CarrierInvalid,
    /// Carrier clean, but some middle row's claimed input bit contradicts the
    /// transcript: that row is a free YES.
    InputLie,
    /// Carrier clean and all claimed inputs true to the transcript: verdicts
    /// are pinned row by row.
    Echo,
}

pub fn classify_pi(g: &LabeledGraph, m: &TuringMachine) -> Possibility {
    let parts = split_pi(g);
    let satm_dirty = (0..parts.satm.n()).into_par_iter().any(|v| {
        let (local, marked) = crate::bad::satm_local_and_mark(&parts.satm, m, v);
        !local || marked
    });
    let view = ConnectView { parts: &parts, g };
    let gr = Roled::new(&parts.ag, roles::GRID);
    let right_column: Vec<(NodeId, NodeId)> = parts
        .ag_orig
        .iter()
        .enumerate()
        .map(|(sub, &orig)| (sub as NodeId, orig))
        .filter(|&(sub, orig)| {
            matches!(
                g.node_input(orig).and_then(vocab::pi_ag_in_parts),
                Some((_, AgIn::Grid(_)))
            ) && !gr.has(sub, "R")
        })
        .collect();
    let structurally_forced = right_column.iter().any(|&(sub, orig)| {
        // output-independent forcing: ignore the carrier's output labels
        let Some(v_orig) = view.target(orig) else {
            return true;
        };
        let Some(v_sub) = view.satm_sub(v_orig) else {
            return true;
        };
        let Some((sym, _, _)) = view.cell(v_sub) else {
            return true;
        };
        let bot = Roled::new(&parts.satm, roles::BOTTOM_GRID);
        (!gr.has(sub, "D") && sym != BLANK_R)
            || (!gr.has(sub, "U") && bot.has(v_sub, "U"))
            || bot.has(v_sub, "L")
    });
    if satm_dirty || structurally_forced {
        return Possibility::CarrierInvalid;
    }
    let input_lie = right_column.iter().any(|&(sub, orig)| {
        if !(gr.has(sub, "U") && gr.has(sub, "D")) {
            return false;
        }
        let (b_in, _) = vocab::pi_ag_in_parts(g.node_input(orig).unwrap()).unwrap();
        view.row_bit(orig) != Some(b_in)
    });
    if input_lie {
        Possibility::InputLie
    } else {
        Possibility::Echo
    }
}

/// The gadgeted variant: every right-column verdict of YES must also name the
/// bit carved into the gadget hanging off that grid node.
pub fn check_pi2(g: &LabeledGraph, m: &TuringMachine) -> CheckReport {
    let mut report = check_pi_inner(g, m, true);
    let parts = split_pi(g);
    let gr = Roled::new(&parts.ag, roles::GRID);
    let gadget_edge = vocab::edge(&[(roles::GADGET, "G")]);
    let mut extra: Vec<Violation> = parts
        .ag_orig
        .par_iter()
        .enumerate()
        .flat_map_iter(|(sub, &orig)| {
            let mut out = Vec::new();
            let sub = sub as NodeId;
            let is_grid = matches!(
                g.node_input(orig).and_then(vocab::pi_ag_in_parts),
                Some((_, AgIn::Grid(_)))
            );
            if !is_grid || gr.has(sub, "R") {
                return out;
            }
            if let Some((b, true)) = g.node_output(orig).and_then(vocab::bit_vote_parts) {
                match gadget_bit(g, orig, &gadget_edge) {
                    Some(gb) if gb == b => {}
                    _ => out.push(Violation { node: orig, rule: "pi2.gadget-bit" }),
                }
            }
            out
        })
        .collect();
    // gadget shape and silence
    extra.extend(par_nodes(g, |v, out| {
        if parts.kind[v as usize] != PiKind::Gadget {
            return;
        }
        if g.node_output(v).is_some() {
            out.push(Violation { node: v, rule: "pi2.gadget-output" });
        }
        let anchors_ag = g
            .half_edges_at(v)
            .any(|(w, _)| matches!(parts.kind[w as usize], PiKind::Ag(_)));
        if anchors_ag && gadget_shape_ok(g, v, &parts, &gadget_edge).is_none() {
            out.push(Violation { node: v, rule: "pi2.gadget-shape" });
        }
    }));
    report.violation_count += extra.len();
    let room = CheckReport::SAMPLE_CAP.saturating_sub(report.sample.len());
    extra.truncate(room);
    report.sample.extend(extra);
    report
}

fn gadget_neighbors(g: &LabeledGraph, v: NodeId, gadget_edge: &Label) -> Vec<NodeId> {
    g.half_edges_at(v)
        .filter(|&(_, l)| l == Some(gadget_edge))
        .map(|(w, _)| w)
        .collect()
}

/// Reads the bit carved into the gadget anchored at grid node `u`: the two
/// far nodes adjacent iff the bit is 1. A radius-3 view suffices.
fn gadget_bit(g: &LabeledGraph, u: NodeId, gadget_edge: &Label) -> Option<u8> {
    let anchors = gadget_neighbors(g, u, gadget_edge);
    let [anchor] = anchors.as_slice() else {
        return None;
    };
    let hops: Vec<NodeId> =
        gadget_neighbors(g, *anchor, gadget_edge).into_iter().filter(|&w| w != u).collect();
    let [a] = hops.as_slice() else {
        return None;
    };
    let far: Vec<NodeId> =
        gadget_neighbors(g, *a, gadget_edge).into_iter().filter(|&w| w != *anchor).collect();
    let [b1, b2] = far.as_slice() else {
        return None;
    };
    Some(u8::from(g.has_edge(*b1, *b2)))
}

/// Validates the full gadget hanging off `anchor`: a tail of two nodes then
/// either a triangle (bit 1) or a four-cycle (bit 0), all edges gadget-tagged.
fn gadget_shape_ok(
    g: &LabeledGraph,
    anchor: NodeId,
    parts: &PiParts,
    gadget_edge: &Label,
) -> Option<()> {
    let all = gadget_neighbors(g, anchor, gadget_edge);
    if g.degree(anchor) != 2 || all.len() != 2 {
        return None;
    }
    let a = match (parts.kind[all[0] as usize], parts.kind[all[1] as usize]) {
        (PiKind::Ag(_), PiKind::Gadget) => all[1],
        (PiKind::Gadget, PiKind::Ag(_)) => all[0],
        _ => return None,
    };
    let far: Vec<NodeId> =
        gadget_neighbors(g, a, gadget_edge).into_iter().filter(|&w| w != anchor).collect();
    if g.degree(a) != 3 || far.len() != 2 {
        return None;
    }
    let (b1, b2) = (far[0], far[1]);
    for b in [b1, b2] {
        if parts.kind[b as usize] != PiKind::Gadget
            || gadget_neighbors(g, b, gadget_edge).len() != g.degree(b)
        {
            return None;
        }
    }
    if g.has_edge(b1, b2) {
        // triangle: both far nodes close directly
        (g.degree(b1) == 2 && g.degree(b2) == 2).then_some(())
    } else {
        // four-cycle: both far nodes close through one extra node
        let d1: Vec<NodeId> =
            gadget_neighbors(g, b1, gadget_edge).into_iter().filter(|&w| w != a).collect();
        let d2: Vec<NodeId> =
            gadget_neighbors(g, b2, gadget_edge).into_iter().filter(|&w| w != a).collect();
        match (d1.as_slice(), d2.as_slice()) {
            ([d], [dd]) if d == dd => {
                let d = *d;
                (g.degree(b1) == 2
                    && g.degree(b2) == 2
                    && g.degree(d) == 2
                    && parts.kind[d as usize] == PiKind::Gadget)
                    .then_some(())
            }
            _ => None,
        }
    }
}
