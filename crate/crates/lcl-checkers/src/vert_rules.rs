use crate::proj::Roled;
use graph_core::NodeId;

/// Per-node rules for the diagonal-bit certificate on a grid role.
///
/// `bit` reads the node's 0/1 input (None = missing/ill-formed). The rules
/// force the unique valid assignment that puts 1 exactly on the down-left
/// diagonal from the top-right corner: the top row seeds it, each lower row
/// copies its predecessor shifted one column left, and a 1 may never sit
/// strictly left of the diagonal's reach (which would let it run off the
/// bottom edge before hitting the left border).
pub(crate) fn vert_violations(
    t: &Roled,
    v: NodeId,
    bit: &dyn Fn(NodeId) -> Option<u8>,
    push: &mut dyn FnMut(&'static str),
) {
    let b = match bit(v) {
        Some(b) if b <= 1 => b,
        _ => {
            push("vert.input");
            return;
        }
    };

    let has_u = t.has(v, "U");
    if !has_u {
        // top row: 1 at the right corner, 0 elsewhere
        let expect = if !t.has(v, "R") { 1 } else { 0 };
        if b != expect {
            push("vert.top-row");
        }
    } else {
        // interior: 1 iff the up-right neighbor is 1
        let up_right = t.step2(v, "U", "R").and_then(bit);
        if (b == 1) != (up_right == Some(1)) {
            push("vert.diagonal");
        }
    }

    // a 1 with room to its left must still have room below
    if b == 1 && t.has(v, "L") && !t.has(v, "D") {
        push("vert.runoff");
    }
}
