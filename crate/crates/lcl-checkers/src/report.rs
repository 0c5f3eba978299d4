use graph_core::NodeId;

/// One broken rule at one node. `rule` is a short stable identifier such as
/// `"tree.reciprocity"`; tests match on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub rule: &'static str,
}

/// Outcome of running a checker over a whole labeled graph.
///
/// `sample` keeps at most [`CheckReport::SAMPLE_CAP`] violations so reports on
/// million-node graphs stay small; `violation_count` is always exact.
/// `flags` carries named graph-level conditions (currently only the grid
/// checker uses them); a false flag rejects the instance just like a violation.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub violation_count: usize,
    pub sample: Vec<Violation>,
    pub flags: Vec<(&'static str, bool)>,
}

impl CheckReport {
    pub const SAMPLE_CAP: usize = 64;

    pub fn from_violations(mut all: Vec<Violation>) -> Self {
        let violation_count = all.len();
        all.truncate(Self::SAMPLE_CAP);
        CheckReport { violation_count, sample: all, flags: Vec::new() }
    }

    pub fn with_flags(mut self, flags: Vec<(&'static str, bool)>) -> Self {
        self.flags = flags;
        self
    }

    pub fn ok(&self) -> bool {
        self.violation_count == 0 && self.flags.iter().all(|&(_, v)| v)
    }

    /// All rule names that fired at `node` (within the sample).
    pub fn rules_at(&self, node: NodeId) -> Vec<&'static str> {
        self.sample.iter().filter(|v| v.node == node).map(|v| v.rule).collect()
    }
}
