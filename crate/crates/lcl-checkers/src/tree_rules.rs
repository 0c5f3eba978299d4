use crate::proj::Roled;
use graph_core::NodeId;

/// Per-node rules for one tree role: perfect binary tree with each layer
/// joined into a left-to-right path. Same-layer nodes are linked L/R, children
/// hang on CL/CR, the child side of those edges is P.
///
/// The rules only ever look two hops out, yet together they pin the shape:
/// reciprocity + sibling/cousin closure force layers to be aligned paths,
/// and the end rules force layer boundaries to nest, which kills parent- and
/// layer-cycles locally.
pub(crate) fn tree_violations(t: &Roled, v: NodeId, push: &mut dyn FnMut(&'static str)) {
    let has_p = t.has(v, "P");
    let has_cl = t.has(v, "CL");
    let has_cr = t.has(v, "CR");
    let has_l = t.has(v, "L");
    let has_r = t.has(v, "R");

    // sanity: at most one of each direction, children in pairs, root alone on
    // its layer
    for d in ["P", "CL", "CR", "L", "R"] {
        if t.count(v, d) > 1 {
            push("tree.sanity");
        }
    }
    if has_cl != has_cr {
        push("tree.sanity");
    }
    if !has_p && (has_l || has_r) {
        push("tree.sanity");
    }

    // reciprocity: the other side of each edge carries the matching direction
    for (d, w) in t.dirs(v) {
        let back = t.dirs_on(w, v);
        let ok = match d {
            "P" => back.iter().filter(|&&b| b == "CL" || b == "CR").count() == 1,
            "CL" | "CR" => back.contains(&"P"),
            "L" => back.contains(&"R"),
            "R" => back.contains(&"L"),
            _ => false,
        };
        if !ok {
            push("tree.recip");
        }
    }

    // having children is constant along a layer
    for d in ["L", "R"] {
        if let Some(u) = t.step(v, d) {
            if t.has(u, "CL") != has_cl {
                push("tree.layer-children");
            }
        }
    }

    if has_cl && has_cr {
        // siblings are layer-adjacent: CL then R is CR, CR then L is CL
        let cl = t.step(v, "CL");
        let cr = t.step(v, "CR");
        if t.step2(v, "CL", "R") != cr || cr.is_none() {
            push("tree.sibling");
        }
        if t.step2(v, "CR", "L") != cl || cl.is_none() {
            push("tree.sibling");
        }
        // cousins glue across sibling edges of layer-adjacent parents
        if has_r {
            let a = t.step2(v, "CR", "R");
            if a.is_none() || a != t.step2(v, "R", "CL") {
                push("tree.cousin");
            }
        }
        if has_l {
            let a = t.step2(v, "CL", "L");
            if a.is_none() || a != t.step2(v, "L", "CR") {
                push("tree.cousin");
            }
        }
    }

    if has_p {
        let is_cl_child = t.step2(v, "P", "CL") == Some(v);
        let is_cr_child = t.step2(v, "P", "CR") == Some(v);
        let parent = t.step(v, "P");
        // layer ends sit under layer ends: leftmost child of leftmost parent
        if let Some(p) = parent {
            let left_end_ok = (p_lacks(t, p, "L") && is_cl_child) == !has_l;
            let right_end_ok = (p_lacks(t, p, "R") && is_cr_child) == !has_r;
            if !left_end_ok || !right_end_ok {
                push("tree.ends");
            }
        }
        // layer edges respect parentage: same parent for a CL-CR pair, or
        // layer-adjacent parents for a CR-CL pair
        if has_r {
            if let Some(u) = t.step(v, "R") {
                let vp = t.step(v, "P");
                let up = t.step(u, "P");
                let same = vp.is_some()
                    && vp == up
                    && is_cl_child
                    && t.step2(u, "P", "CR") == Some(u);
                let adjacent = up.is_some()
                    && t.step2(v, "P", "R") == up
                    && is_cr_child
                    && t.step2(u, "P", "CL") == Some(u);
                if !same && !adjacent {
                    push("tree.layer-parent");
                }
            }
        }
    }
}

fn p_lacks(t: &Roled, p: NodeId, d: &str) -> bool {
    t.count(p, d) == 0
}
