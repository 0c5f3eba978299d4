use crate::{Label, NodeId};
use thiserror::Error;

/// Hard cap on vertex degree; every structure in this workspace stays below it.
pub const MAX_DEGREE: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} out of range (n = {1})")]
    NodeOutOfRange(NodeId, u32),
    #[error("self loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("degree {degree} at node {node} exceeds {MAX_DEGREE}")]
    DegreeExceeded { node: NodeId, degree: usize },
    #[error("no edge {0}-{1}")]
    NoSuchEdge(NodeId, NodeId),
    #[error("label {0} not in the allowed alphabet")]
    OutOfAlphabet(String),
    #[error("malformed graph json: {0}")]
    Json(String),
}

/// Addresses one label slot of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelSite {
    NodeInput(NodeId),
    NodeOutput(NodeId),
    /// Half-edge on `node`'s side of the edge to `other`.
    HalfEdgeInput { node: NodeId, other: NodeId },
    HalfEdgeOutput { node: NodeId, other: NodeId },
}

/// An undirected labeled graph, immutable after construction.
///
/// Absent labels stand for the blank symbol; output layers start empty.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: u32,
    /// Canonical (min, max) pairs, sorted; index into this Vec is the edge id.
    edges: Vec<(NodeId, NodeId)>,
    /// Per node: (neighbor, edge id), sorted by neighbor.
    adj: Vec<Vec<(NodeId, u32)>>,
    node_input: Vec<Option<Label>>,
    node_output: Vec<Option<Label>>,
    /// Per edge: `[label at min endpoint, label at max endpoint]`.
    he_input: Vec<[Option<Label>; 2]>,
    he_output: Vec<[Option<Label>; 2]>,
}

impl LabeledGraph {
    pub fn new(n: u32, edge_list: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::new(n);
        for &(u, v) in edge_list {
            builder.add_edge(u, v)?;
        }
        builder.finish()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[v as usize].iter().map(|&(w, _)| w)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_index(u, v).is_some()
    }

    fn edge_index(&self, u: NodeId, v: NodeId) -> Option<u32> {
        self.adj
            .get(u as usize)?
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|slot| self.adj[u as usize][slot].1)
    }

    pub fn node_input(&self, v: NodeId) -> Option<&Label> {
        self.node_input[v as usize].as_ref()
    }

    pub fn node_output(&self, v: NodeId) -> Option<&Label> {
        self.node_output[v as usize].as_ref()
    }

    /// Input label of the half-edge at `node`'s side of the edge to `other`.
    pub fn half_edge_input(&self, node: NodeId, other: NodeId) -> Option<&Label> {
        let e = self.edge_index(node, other)?;
        let side = usize::from(node > other);
        self.he_input[e as usize][side].as_ref()
    }

    pub fn half_edge_output(&self, node: NodeId, other: NodeId) -> Option<&Label> {
        let e = self.edge_index(node, other)?;
        let side = usize::from(node > other);
        self.he_output[e as usize][side].as_ref()
    }

    /// Half-edge input labels around `v` as (neighbor, label) pairs, neighbor-sorted.
    pub fn half_edges_at(&self, v: NodeId) -> impl Iterator<Item = (NodeId, Option<&Label>)> {
        self.adj[v as usize].iter().map(move |&(w, e)| {
            let side = usize::from(v > w);
            (w, self.he_input[e as usize][side].as_ref())
        })
    }

    pub fn half_edge_outputs_at(&self, v: NodeId) -> impl Iterator<Item = (NodeId, Option<&Label>)> {
        self.adj[v as usize].iter().map(move |&(w, e)| {
            let side = usize::from(v > w);
            (w, self.he_output[e as usize][side].as_ref())
        })
    }

    /// Returns a copy with one label slot replaced (or cleared via `None`).
    ///
    /// When `alphabet` is given, a replacement label outside it is rejected.
    pub fn mutate_label(
        &self,
        site: LabelSite,
        new: Option<Label>,
        alphabet: Option<&[Label]>,
    ) -> Result<Self, GraphError> {
        if let (Some(allowed), Some(label)) = (alphabet, new.as_ref()) {
            if !allowed.contains(label) {
                return Err(GraphError::OutOfAlphabet(format!("{label:?}")));
            }
        }
        let mut g = self.clone();
        match site {
            LabelSite::NodeInput(v) => {
                g.check_node(v)?;
                g.node_input[v as usize] = new;
            }
            LabelSite::NodeOutput(v) => {
                g.check_node(v)?;
                g.node_output[v as usize] = new;
            }
            LabelSite::HalfEdgeInput { node, other } => {
                g.check_node(node)?;
                let e = g.edge_index(node, other).ok_or(GraphError::NoSuchEdge(node, other))?;
                g.he_input[e as usize][usize::from(node > other)] = new;
            }
            LabelSite::HalfEdgeOutput { node, other } => {
                g.check_node(node)?;
                let e = g.edge_index(node, other).ok_or(GraphError::NoSuchEdge(node, other))?;
                g.he_output[e as usize][usize::from(node > other)] = new;
            }
        }
        Ok(g)
    }

    /// Returns a copy with every node input recomputed in bulk.
    pub fn with_node_inputs(&self, f: impl Fn(NodeId, Option<&Label>) -> Option<Label>) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.node_input[v as usize] = f(v, self.node_input(v));
        }
        g
    }

    /// Returns a copy with all output layers recomputed in bulk.
    pub fn with_outputs(
        &self,
        node: impl Fn(NodeId) -> Option<Label>,
        half_edge: impl Fn(NodeId, NodeId) -> Option<Label>,
    ) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.node_output[v as usize] = node(v);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            g.he_output[e] = [half_edge(u, v), half_edge(v, u)];
        }
        g
    }

    /// Returns a copy whose output layers are cleared.
    pub fn without_outputs(&self) -> Self {
        let mut g = self.clone();
        g.node_output.iter_mut().for_each(|slot| *slot = None);
        g.he_output.iter_mut().for_each(|slot| *slot = [None, None]);
        g
    }

    fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange(v, self.n))
        }
    }
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LabeledGraph(n={}, m={})", self.n, self.edges.len())
    }
}

/// Mutable construction buffer; `finish` validates and freezes the graph.
pub struct GraphBuilder {
    n: u32,
    edges: Vec<(NodeId, NodeId)>,
    node_input: Vec<Option<Label>>,
    node_output: Vec<Option<Label>>,
    he_input: Vec<[Option<Label>; 2]>,
    he_output: Vec<[Option<Label>; 2]>,
}

impl GraphBuilder {
    pub fn new(n: u32) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
            node_input: vec![None; n as usize],
            node_output: vec![None; n as usize],
            he_input: Vec::new(),
            he_output: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::NodeOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::NodeOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.push((u.min(v), u.max(v)));
        self.he_input.push([None, None]);
        self.he_output.push([None, None]);
        Ok(())
    }

    pub fn set_node_input(&mut self, v: NodeId, label: Label) {
        self.node_input[v as usize] = Some(label);
    }

    pub fn set_node_output(&mut self, v: NodeId, label: Label) {
        self.node_output[v as usize] = Some(label);
    }

    /// Labels the half-edge at `node`'s side of the most recently added copy
    /// of edge `node`-`other`.
    pub fn set_half_edge_input(&mut self, node: NodeId, other: NodeId, label: Label) -> Result<(), GraphError> {
        let e = self.find_edge(node, other)?;
        self.he_input[e][usize::from(node > other)] = Some(label);
        Ok(())
    }

    pub fn set_half_edge_output(&mut self, node: NodeId, other: NodeId, label: Label) -> Result<(), GraphError> {
        let e = self.find_edge(node, other)?;
        self.he_output[e][usize::from(node > other)] = Some(label);
        Ok(())
    }

    fn find_edge(&self, u: NodeId, v: NodeId) -> Result<usize, GraphError> {
        let key = (u.min(v), u.max(v));
        self.edges
            .iter()
            .rposition(|&e| e == key)
            .ok_or(GraphError::NoSuchEdge(u, v))
    }

    pub fn finish(self) -> Result<LabeledGraph, GraphError> {
        let GraphBuilder { n, edges, node_input, node_output, he_input, he_output } = self;
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| edges[i]);
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                let (u, v) = edges[w[0]];
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        let mut sorted_edges = Vec::with_capacity(edges.len());
        let mut sorted_he_in = Vec::with_capacity(edges.len());
        let mut sorted_he_out = Vec::with_capacity(edges.len());
        let mut adj: Vec<Vec<(NodeId, u32)>> = vec![Vec::new(); n as usize];
        for (new_id, &old) in order.iter().enumerate() {
            let (u, v) = edges[old];
            sorted_edges.push((u, v));
            sorted_he_in.push(he_input[old].clone());
            sorted_he_out.push(he_output[old].clone());
            adj[u as usize].push((v, new_id as u32));
            adj[v as usize].push((u, new_id as u32));
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable_by_key(|&(w, _)| w);
            if nbrs.len() > MAX_DEGREE {
                return Err(GraphError::DegreeExceeded { node: v as NodeId, degree: nbrs.len() });
            }
        }
        Ok(LabeledGraph {
            n,
            edges: sorted_edges,
            adj,
            node_input,
            node_output,
            he_input: sorted_he_in,
            he_output: sorted_he_out,
        })
    }
}
