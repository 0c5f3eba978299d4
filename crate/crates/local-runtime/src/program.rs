use graph_core::{Label, NodeId};

/// One delivered message: the neighbor it came from and its body. Bodies are
/// labels — a tag plus a short scalar payload — which keeps traffic small and
/// structured while staying expressive enough for every program here.
#[derive(Debug, Clone, PartialEq)]
pub struct Msg {
    pub from: NodeId,
    pub body: Label,
}

/// What a node does at the end of one activation.
#[derive(Debug, Clone)]
pub enum Action {
    /// Keep running; send each message to the named neighbor (at most one per
    /// neighbor per round).
    Continue(Vec<(NodeId, Label)>),
    /// Stop with these outputs. A halted node sends nothing ever again.
    Halt { node: Option<Label>, half_edges: Vec<(NodeId, Label)> },
}

impl Action {
    pub fn halt_node(l: Label) -> Action {
        Action::Halt { node: Some(l), half_edges: Vec::new() }
    }

    pub fn halt_silent() -> Action {
        Action::Halt { node: None, half_edges: Vec::new() }
    }
}

/// Everything a node can see during one activation. Identifiers are world
/// identifiers: when a program is replayed on an extracted view, nodes keep
/// the ids and coin streams they had in the full graph.
pub struct Ctx<'a> {
    pub node: NodeId,
    /// Size of the world graph (not of a replayed fragment).
    pub n: u32,
    /// 0 for the initial activation, before any message arrives.
    pub round: u32,
    pub input: Option<&'a Label>,
    /// Incident edges: neighbor id and this node's own half-edge input label.
    pub neighbors: &'a [(NodeId, Option<Label>)],
    pub r_pub: &'a [u8],
    pub(crate) tape: &'a [u8],
    pub(crate) cursor: usize,
    pub(crate) steps: u64,
}

impl Ctx<'_> {
    /// Draws the next private coin; `None` once the b_sec budget is spent.
    pub fn coin(&mut self) -> Option<u8> {
        let b = self.tape.get(self.cursor).copied();
        if b.is_some() {
            self.cursor += 1;
        }
        b
    }

    pub fn coins(&mut self, k: usize) -> Option<Vec<u8>> {
        (0..k).map(|_| self.coin()).collect()
    }

    pub fn coins_drawn(&self) -> u32 {
        self.cursor as u32
    }

    /// Accounts `steps` of node computation against the per-activation step
    /// budget. The engine fails the node when the budget is exceeded.
    pub fn charge(&mut self, steps: u64) {
        self.steps = self.steps.saturating_add(steps);
    }

    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }

    /// The neighbor in direction `f`, judged by this node's half-edge labels.
    pub fn neighbor_where(&self, f: impl Fn(&Label) -> bool) -> Option<NodeId> {
        let mut it = self
            .neighbors
            .iter()
            .filter(|(_, l)| l.as_ref().is_some_and(&f))
            .map(|&(w, _)| w);
        let first = it.next();
        if it.next().is_some() {
            return None;
        }
        first
    }
}

/// A per-node state machine. `activate` is called once per round — round 0
/// with an empty inbox — until it returns `Halt`.
pub trait NodeProgram: Send {
    fn activate(&mut self, ctx: &mut Ctx, inbox: &[Msg]) -> Action;
}

/// A program is a recipe for one state machine per node.
pub trait Program: Sync {
    fn spawn(&self) -> Box<dyn NodeProgram>;
}

impl<F> Program for F
where
    F: Fn() -> Box<dyn NodeProgram> + Sync,
{
    fn spawn(&self) -> Box<dyn NodeProgram> {
        self()
    }
}
