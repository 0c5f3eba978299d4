use crate::proj::Roled;
use graph_core::NodeId;
use tm_engine::{Mv, Sym, TuringMachine, BLANK_L, BLANK_R};

pub(crate) type Cell = (Sym, bool, Option<u32>);

/// Per-node rules that make a grid of (symbol, head, state) cells spell out a
/// complete run of `m`, one configuration per column with time flowing
/// leftward (column 0, the one with no L edge on its nodes, is the initial
/// configuration; row index is tape position).
///
/// The column count may exceed the run length: once the machine halts, the
/// halting configuration just repeats. Rows below the used tape are `#R`.
pub(crate) fn tm_violations(
    t: &Roled,
    v: NodeId,
    m: &TuringMachine,
    cell: &dyn Fn(NodeId) -> Option<Cell>,
    push: &mut dyn FnMut(&'static str),
) {
    let Some((sym, head, state)) = cell(v) else {
        push("tm.input");
        return;
    };
    if !m.sigma().contains(&sym) || state.is_some_and(|s| !m.is_state(s)) {
        push("tm.input");
        return;
    }
    // head and state come together
    if head != state.is_some() {
        push("tm.head-state");
        return;
    }

    // initial column: the head rests on #L in the start state, nothing else
    // carries a head
    if !t.has(v, "R") {
        if !t.has(v, "U") {
            if (sym, head, state) != (BLANK_L, true, Some(m.start())) {
                push("tm.initial");
            }
        } else if head {
            push("tm.initial");
        }
    }

    match state {
        Some(s) if !m.is_final(s) => {
            // a live head needs a successor column consistent with one
            // application of the transition rule
            let Some(u) = t.step(v, "L") else {
                push("tm.step");
                return;
            };
            let Some((next, write, mv)) = m.rule(s, sym) else {
                push("tm.step");
                return;
            };
            let u_cell = cell(u);
            if u_cell.map(|(us, _, _)| us) != Some(write) {
                push("tm.step");
            }
            let (target, u_head_ok) = match mv {
                Mv::S => (u_cell, true),
                Mv::L => (t.step2(v, "L", "U").and_then(cell), u_cell.is_some_and(|(_, h, _)| !h)),
                Mv::R => (t.step2(v, "L", "D").and_then(cell), u_cell.is_some_and(|(_, h, _)| !h)),
            };
            match target {
                Some((_, true, ts)) if ts == Some(next) && u_head_ok => {}
                _ => push("tm.step"),
            }
        }
        Some(s) => {
            // halted: head parked on #L at the tape start, configuration
            // frozen leftward
            if t.has(v, "U") || sym != BLANK_L {
                push("tm.halt");
            }
            if let Some(u) = t.step(v, "L") {
                if cell(u) != Some((sym, head, Some(s))) {
                    push("tm.halt");
                }
            }
        }
        None => {
            // headless cells copy to the next column; a head may only appear
            // there if it arrived from a vertical neighbor
            if let Some(u) = t.step(v, "L") {
                match cell(u) {
                    Some((us, uh, _)) => {
                        if us != sym {
                            push("tm.copy");
                        }
                        if uh {
                            let from_above =
                                t.step(v, "U").and_then(cell).is_some_and(|(_, h, _)| h);
                            let from_below =
                                t.step(v, "D").and_then(cell).is_some_and(|(_, h, _)| h);
                            if !from_above && !from_below {
                                push("tm.copy");
                            }
                        }
                    }
                    None => push("tm.copy"),
                }
            }
        }
    }

    // delimiters: #L exactly on the top row, #R only above more #R
    if (sym == BLANK_L) != !t.has(v, "U") {
        push("tm.delimiter");
    }
    if sym == BLANK_R {
        if let Some(d) = t.step(v, "D") {
            if cell(d).map(|(ds, _, _)| ds) != Some(BLANK_R) {
                push("tm.delimiter");
            }
        }
    }
}
