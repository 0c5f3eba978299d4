use graph_core::vocab;
use graph_core::{LabeledGraph, NodeId};

/// Navigation over the half-edge *input* labels of one role.
///
/// All structured graphs here put edge labels of the form
/// `{(role, dir), ...}` on both half-edges; a checker for one constituent
/// (the tree part, the grid part, ...) must see only its own role's
/// directions. `step` mirrors path tracing for a single hop but demands the
/// direction be unambiguous at the node: zero or several matching half-edges
/// yield `None`.
#[derive(Clone, Copy)]
pub struct Roled<'g> {
    pub g: &'g LabeledGraph,
    pub role: &'static str,
}

impl<'g> Roled<'g> {
    pub fn new(g: &'g LabeledGraph, role: &'static str) -> Self {
        Roled { g, role }
    }

    /// (direction, neighbor) for every half-edge at `v` carrying this role.
    pub fn dirs(&self, v: NodeId) -> Vec<(&'static str, NodeId)> {
        let mut out = Vec::new();
        for (w, lab) in self.g.half_edges_at(v) {
            if let Some(l) = lab {
                if let Some(d) = vocab::edge_dir(l, self.role) {
                    out.push((d, w));
                }
            }
        }
        out
    }

    pub fn count(&self, v: NodeId, dir: &str) -> usize {
        self.dirs(v).iter().filter(|&&(d, _)| d == dir).count()
    }

    /// True iff exactly one half-edge at `v` carries (role, dir).
    pub fn has(&self, v: NodeId, dir: &str) -> bool {
        self.count(v, dir) == 1
    }

    /// Unique neighbor in direction `dir`, if unambiguous.
    pub fn step(&self, v: NodeId, dir: &str) -> Option<NodeId> {
        let mut found = None;
        for (d, w) in self.dirs(v) {
            if d == dir {
                if found.is_some() {
                    return None;
                }
                found = Some(w);
            }
        }
        found
    }

    pub fn step2(&self, v: NodeId, d1: &str, d2: &str) -> Option<NodeId> {
        self.step(v, d1).and_then(|u| self.step(u, d2))
    }

    /// Directions this role carries on the half-edge at `v` toward `w`.
    pub fn dirs_on(&self, v: NodeId, w: NodeId) -> Vec<&'static str> {
        match self.g.half_edge_input(v, w) {
            Some(l) => vocab::edge_pairs(l)
                .into_iter()
                .filter(|&(r, _)| r == self.role)
                .map(|(_, d)| d)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Whether `v` carries this role on any half-edge.
    pub fn member(&self, v: NodeId) -> bool {
        !self.dirs(v).is_empty()
    }
}

/// True iff every direction pair on every half-edge label at `v` belongs to
/// `allowed` (role, dirs) combinations and the label is an edge label at all.
/// Unlabeled half-edges are rejected: every structured edge carries its roles.
pub fn edges_well_formed(
    g: &LabeledGraph,
    v: NodeId,
    allowed: &[(&'static str, &'static [&'static str])],
) -> bool {
    for (_, lab) in g.half_edges_at(v) {
        match lab {
            None => return false,
            Some(l) => {
                if !vocab::is_edge_label(l) {
                    return false;
                }
                let pairs = vocab::edge_pairs(l);
                if pairs.is_empty() {
                    return false;
                }
                for (r, d) in pairs {
                    if !allowed.iter().any(|&(ar, ads)| ar == r && ads.contains(&d)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
