use crate::{GraphBuilder, LabeledGraph, NodeId};
use std::collections::VecDeque;

/// The radius-`r` ball around a center node, re-indexed densely.
///
/// `orig_ids[new]` recovers the node's id in the host graph; `center` is the
/// re-indexed id of the ball's center.
#[derive(Debug, Clone)]
pub struct View {
    pub graph: LabeledGraph,
    pub center: NodeId,
    pub radius: u32,
    pub orig_ids: Vec<NodeId>,
}

impl View {
    pub fn to_local(&self, orig: NodeId) -> Option<NodeId> {
        self.orig_ids.iter().position(|&o| o == orig).map(|i| i as NodeId)
    }
}

/// Extracts the subgraph induced by nodes at distance at most `radius` from
/// `center`, carrying all four label layers along.
pub fn extract_view(g: &LabeledGraph, center: NodeId, radius: u32) -> View {
    let mut dist: Vec<Option<u32>> = vec![None; g.node_count()];
    dist[center as usize] = Some(0);
    let mut queue = VecDeque::from([center]);
    let mut orig_ids = vec![center];
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize].unwrap();
        if d == radius {
            continue;
        }
        for w in g.neighbors(v) {
            if dist[w as usize].is_none() {
                dist[w as usize] = Some(d + 1);
                orig_ids.push(w);
                queue.push_back(w);
            }
        }
    }
    orig_ids.sort_unstable();
    let local = |orig: NodeId| orig_ids.binary_search(&orig).unwrap() as NodeId;

    let mut b = GraphBuilder::new(orig_ids.len() as u32);
    for (new_v, &orig_v) in orig_ids.iter().enumerate() {
        if let Some(l) = g.node_input(orig_v) {
            b.set_node_input(new_v as NodeId, l.clone());
        }
        if let Some(l) = g.node_output(orig_v) {
            b.set_node_output(new_v as NodeId, l.clone());
        }
    }
    for &(u, v) in g.edges() {
        if dist[u as usize].is_some() && dist[v as usize].is_some() {
            let (lu, lv) = (local(u), local(v));
            b.add_edge(lu, lv).expect("ball edge valid");
            if let Some(l) = g.half_edge_input(u, v) {
                b.set_half_edge_input(lu, lv, l.clone()).unwrap();
            }
            if let Some(l) = g.half_edge_input(v, u) {
                b.set_half_edge_input(lv, lu, l.clone()).unwrap();
            }
            if let Some(l) = g.half_edge_output(u, v) {
                b.set_half_edge_output(lu, lv, l.clone()).unwrap();
            }
            if let Some(l) = g.half_edge_output(v, u) {
                b.set_half_edge_output(lv, lu, l.clone()).unwrap();
            }
        }
    }
    let graph = b.finish().expect("induced subgraph of a valid graph is valid");
    View { graph, center: local(center), radius, orig_ids }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Label;

    /// 3x3 grid graph, node (r, c) = 3r + c.
    fn grid3() -> LabeledGraph {
        let mut edges = Vec::new();
        for r in 0..3u32 {
            for c in 0..3u32 {
                let v = 3 * r + c;
                if c + 1 < 3 {
                    edges.push((v, v + 1));
                }
                if r + 1 < 3 {
                    edges.push((v, v + 3));
                }
            }
        }
        LabeledGraph::new(9, &edges).unwrap()
    }

    #[test]
    fn radius_one_ball_at_grid_center() {
        let g = grid3();
        let view = extract_view(&g, 4, 1);
        assert_eq!(view.orig_ids, vec![1, 3, 4, 5, 7]);
        assert_eq!(view.graph.edge_count(), 4, "corner-to-corner edges fall outside the ball");
        assert_eq!(view.orig_ids[view.center as usize], 4);
    }

    #[test]
    fn radius_covers_whole_graph() {
        let g = grid3();
        let view = extract_view(&g, 0, 4);
        assert_eq!(view.graph.node_count(), 9);
        assert_eq!(view.graph.edge_count(), g.edge_count());
    }

    #[test]
    fn labels_travel_with_the_ball() {
        let g = grid3()
            .mutate_label(crate::LabelSite::NodeInput(3), Some(Label::bare("x")), None)
            .unwrap()
            .mutate_label(
                crate::LabelSite::HalfEdgeInput { node: 4, other: 3 },
                Some(Label::bare("w")),
                None,
            )
            .unwrap();
        let view = extract_view(&g, 4, 1);
        let l3 = view.to_local(3).unwrap();
        let l4 = view.to_local(4).unwrap();
        assert_eq!(view.graph.node_input(l3), Some(&Label::bare("x")));
        assert_eq!(view.graph.half_edge_input(l4, l3), Some(&Label::bare("w")));
        assert_eq!(view.graph.half_edge_input(l3, l4), None);
    }
}
