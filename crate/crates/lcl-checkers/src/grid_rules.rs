use crate::proj::Roled;
use graph_core::NodeId;

/// Per-node rules for one grid role: a rectangular grid with U/D vertical and
/// L/R horizontal directions (L points away from column 0).
pub(crate) fn grid_violations(t: &Roled, v: NodeId, push: &mut dyn FnMut(&'static str)) {
    for d in ["U", "D", "L", "R"] {
        if t.count(v, d) > 1 {
            push("grid.sanity");
        }
    }

    for (d, w) in t.dirs(v) {
        let back = t.dirs_on(w, v);
        let ok = match d {
            "U" => back.contains(&"D"),
            "D" => back.contains(&"U"),
            "L" => back.contains(&"R"),
            "R" => back.contains(&"L"),
            _ => false,
        };
        if !ok {
            push("grid.recip");
        }
    }

    // squares close: a vertical step then a horizontal one meets the
    // horizontal-then-vertical path
    for dv in ["U", "D"] {
        for dh in ["L", "R"] {
            if t.has(v, dv) && t.has(v, dh) {
                let a = t.step2(v, dv, dh);
                if a.is_none() || a != t.step2(v, dh, dv) {
                    push("grid.square");
                }
            }
        }
    }

    // borders are straight: neighbors along a row agree on having U and D,
    // neighbors along a column agree on having L and R
    for dh in ["L", "R"] {
        if let Some(u) = t.step(v, dh) {
            if t.has(u, "U") != t.has(v, "U") || t.has(u, "D") != t.has(v, "D") {
                push("grid.border");
            }
        }
    }
    for dv in ["U", "D"] {
        if let Some(u) = t.step(v, dv) {
            if t.has(u, "L") != t.has(v, "L") || t.has(u, "R") != t.has(v, "R") {
                push("grid.border");
            }
        }
    }
}

/// The two conditions of the grid problem that are existential rather than
/// per-node: some node misses a vertical edge and some node misses a
/// horizontal one. Local rules alone cannot exclude a torus or cylinder, so
/// the grid checker reports these as named graph-level flags.
pub(crate) fn grid_flags(t: &Roled, nodes: &[NodeId]) -> [(&'static str, bool); 2] {
    let open_v = nodes.iter().any(|&v| !t.has(v, "U") || !t.has(v, "D"));
    let open_h = nodes.iter().any(|&v| !t.has(v, "L") || !t.has(v, "R"));
    [("grid.has-vertical-border", open_v), ("grid.has-horizontal-border", open_h)]
}
