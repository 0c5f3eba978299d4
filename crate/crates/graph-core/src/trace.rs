use crate::{Label, LabeledGraph, NodeId};

/// Result of a path trace: the unique endpoint, or undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traced {
    Node(NodeId),
    Undefined,
}

impl Traced {
    pub fn node(self) -> Option<NodeId> {
        match self {
            Traced::Node(v) => Some(v),
            Traced::Undefined => None,
        }
    }
}

/// Follows the walk from `v` whose k-th step leaves through a half-edge whose
/// input label equals `labels[k]`. Defined only when exactly one complete
/// walk matches; otherwise `Undefined`.
pub fn path_trace(g: &LabeledGraph, v: NodeId, labels: &[Label]) -> Traced {
    let preds: Vec<_> = labels.iter().map(|want| move |have: &Label| have == want).collect();
    path_trace_by(g, v, &preds)
}

/// [`path_trace`] generalized to per-step label predicates.
pub fn path_trace_by<F: Fn(&Label) -> bool>(g: &LabeledGraph, v: NodeId, steps: &[F]) -> Traced {
    let mut end = None;
    if count_walks(g, v, steps, &mut end) == 1 {
        Traced::Node(end.expect("endpoint recorded for the unique walk"))
    } else {
        Traced::Undefined
    }
}

/// Counts complete matching walks, saturating at 2; records some endpoint.
fn count_walks<F: Fn(&Label) -> bool>(
    g: &LabeledGraph,
    at: NodeId,
    steps: &[F],
    end: &mut Option<NodeId>,
) -> u32 {
    let Some(step) = steps.first() else {
        *end = Some(at);
        return 1;
    };
    let mut found = 0;
    for (next, label) in g.half_edges_at(at) {
        if label.is_some_and(step) {
            found += count_walks(g, next, &steps[1..], end);
            if found >= 2 {
                return 2;
            }
        }
    }
    found
}
