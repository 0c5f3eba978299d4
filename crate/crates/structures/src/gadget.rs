use graph_core::{vocab, GraphBuilder, LabeledGraph, NodeId};

/// The uniform label on every gadget edge; projections by other roles ignore
/// gadget edges entirely.
pub fn gadget_edge_label() -> graph_core::Label {
    vocab::edge(&[(vocab::roles::GADGET, "G")])
}

/// Extends a labeled graph with one bit gadget per site: a two-node tail from
/// the site into a cycle whose girth encodes the bit (triangle = 1,
/// four-cycle = 0), distinguishable within radius 3 of the site. New nodes
/// carry the gadget input label, new edges the gadget role.
pub fn attach_gadgets(g: &LabeledGraph, sites: &[(NodeId, u8)]) -> LabeledGraph {
    let extra: u32 = sites.iter().map(|&(_, bit)| if bit == 1 { 4 } else { 5 }).sum();
    let mut b = GraphBuilder::new(g.n() + extra);
    for &(u, v) in g.edges() {
        b.add_edge(u, v).unwrap();
        for (x, y) in [(u, v), (v, u)] {
            if let Some(l) = g.half_edge_input(x, y) {
                b.set_half_edge_input(x, y, l.clone()).unwrap();
            }
            if let Some(l) = g.half_edge_output(x, y) {
                b.set_half_edge_output(x, y, l.clone()).unwrap();
            }
        }
    }
    for v in 0..g.n() {
        if let Some(l) = g.node_input(v) {
            b.set_node_input(v, l.clone());
        }
        if let Some(l) = g.node_output(v) {
            b.set_node_output(v, l.clone());
        }
    }
    let ge = gadget_edge_label();
    let mut next = g.n();
    for &(site, bit) in sites {
        let anchor = next;
        let a = next + 1;
        let (b1, b2) = (next + 2, next + 3);
        let mut edges = vec![(site, anchor), (anchor, a), (a, b1), (a, b2)];
        if bit == 1 {
            edges.push((b1, b2));
            next += 4;
        } else {
            let d = next + 4;
            edges.push((b1, d));
            edges.push((b2, d));
            next += 5;
        }
        for (x, y) in edges {
            b.add_edge(x, y).unwrap();
            b.set_half_edge_input(x, y, ge.clone()).unwrap();
            b.set_half_edge_input(y, x, ge.clone()).unwrap();
        }
        for w in anchor..next {
            b.set_node_input(w, vocab::gadget_node());
        }
    }
    b.finish().expect("gadgets keep the degree bound")
}
