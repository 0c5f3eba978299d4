//! Independent brute-force oracles for path tracing and view extraction.

use graph_core::{
    extract_view, graph_from_json, graph_to_json, graph_to_json_string, path_trace, GraphBuilder,
    Label, LabeledGraph, NodeId, Traced,
};
use proptest::prelude::*;

/// Enumerates every walk v0..vk whose step labels match, by trying all node
/// sequences. Exponential, for tiny graphs only.
fn all_matching_walks(g: &LabeledGraph, start: NodeId, labels: &[Label]) -> Vec<NodeId> {
    let mut partial = vec![vec![start]];
    for want in labels {
        let mut next = Vec::new();
        for walk in &partial {
            let at = *walk.last().unwrap();
            for cand in 0..g.n() {
                if g.has_edge(at, cand) && g.half_edge_input(at, cand) == Some(want) {
                    let mut w = walk.clone();
                    w.push(cand);
                    next.push(w);
                }
            }
        }
        partial = next;
    }
    partial.into_iter().map(|w| *w.last().unwrap()).collect()
}

/// Single-source distances by plain edge relaxation.
fn distances_oracle(g: &LabeledGraph, src: NodeId) -> Vec<Option<u32>> {
    let mut dist: Vec<Option<u32>> = vec![None; g.node_count()];
    dist[src as usize] = Some(0);
    for _ in 0..g.node_count() {
        for &(u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(da) = dist[a as usize] {
                    if dist[b as usize].is_none_or(|db| db > da + 1) {
                        dist[b as usize] = Some(da + 1);
                    }
                }
            }
        }
    }
    dist
}

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    let tags = prop::sample::select(vec!["a", "b", "c"]);
    (2u32..10, proptest::collection::vec((0u32..10, 0u32..10, any::<bool>(), any::<bool>()), 0..24))
        .prop_flat_map(move |(n, raw_edges)| {
            let tags = tags.clone();
            let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
            for (a, b, _, _) in &raw_edges {
                let (u, v) = (a % n, b % n);
                if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            // Keep degrees legal by dropping edges at saturated nodes.
            let mut deg = vec![0usize; n as usize];
            edges.retain(|&(u, v)| {
                if deg[u as usize] < 7 && deg[v as usize] < 7 {
                    deg[u as usize] += 1;
                    deg[v as usize] += 1;
                    true
                } else {
                    false
                }
            });
            let m = edges.len();
            (
                Just(n),
                Just(edges),
                proptest::collection::vec((tags.clone(), tags.clone()), m),
            )
        })
        .prop_map(|(n, edges, labels)| {
            let mut b = GraphBuilder::new(n);
            for (i, &(u, v)) in edges.iter().enumerate() {
                b.add_edge(u, v).unwrap();
                let (tu, tv) = &labels[i];
                b.set_half_edge_input(u, v, Label::bare(tu)).unwrap();
                b.set_half_edge_input(v, u, Label::bare(tv)).unwrap();
            }
            b.finish().unwrap()
        })
}

proptest! {
    #[test]
    fn path_trace_matches_walk_enumeration(
        g in arb_graph(),
        start in 0u32..10,
        walk in proptest::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..4),
    ) {
        let start = start % g.n();
        let labels: Vec<Label> = walk.iter().map(|t| Label::bare(t)).collect();
        let walks = all_matching_walks(&g, start, &labels);
        match path_trace(&g, start, &labels) {
            Traced::Node(v) => {
                prop_assert_eq!(walks.len(), 1);
                prop_assert_eq!(walks[0], v);
            }
            Traced::Undefined => prop_assert_ne!(walks.len(), 1),
        }
    }

    #[test]
    fn empty_trace_is_identity(g in arb_graph(), v in 0u32..10) {
        let v = v % g.n();
        prop_assert_eq!(path_trace(&g, v, &[]), Traced::Node(v));
    }

    #[test]
    fn view_membership_matches_distance_oracle(g in arb_graph(), c in 0u32..10, r in 0u32..4) {
        let c = c % g.n();
        let view = extract_view(&g, c, r);
        let dist = distances_oracle(&g, c);
        let expected: Vec<NodeId> = (0..g.n())
            .filter(|&v| dist[v as usize].is_some_and(|d| d <= r))
            .collect();
        prop_assert_eq!(&view.orig_ids, &expected);
        // Monotone in the radius.
        let bigger = extract_view(&g, c, r + 1);
        prop_assert!(view.orig_ids.iter().all(|v| bigger.orig_ids.contains(v)));
    }

    #[test]
    fn json_round_trip(g in arb_graph()) {
        let parsed = graph_from_json(&graph_to_json(&g)).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(graph_to_json_string(&parsed), graph_to_json_string(&g));
    }
}
