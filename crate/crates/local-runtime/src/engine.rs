use std::collections::HashMap;

use graph_core::{extract_view, Label, LabeledGraph, NodeId};
use rayon::prelude::*;
use thiserror::Error;

use crate::coins::{private_tape, public_tape};
use crate::program::{Action, Ctx, Msg, Program};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("node {node} sent to {target}, which is not a neighbor")]
    BadTarget { node: NodeId, target: NodeId },
    #[error("node {node} sent {target} more than one message in a round")]
    DuplicateMessage { node: NodeId, target: NodeId },
    #[error("node {node} emitted an output on a non-incident edge to {target}")]
    BadOutputEdge { node: NodeId, target: NodeId },
}

/// One synchronous execution, fully determined by its seeds.
pub struct RunConfig<'a> {
    pub graph: &'a LabeledGraph,
    pub program: &'a dyn Program,
    /// Maximum number of rounds after the initial activation.
    pub rounds: u32,
    /// Private coins available to each node.
    pub b_sec: u32,
    /// Public coins shared by all nodes.
    pub b_pub: u32,
    /// Per-activation step budget; defaults to 4·n² on the world size.
    pub step_budget: Option<u64>,
    pub public_seed: u64,
    pub private_seed: u64,
    /// World identity of each local node, for replaying programs on extracted
    /// fragments. Defaults to the identity mapping.
    pub ids: Option<&'a [NodeId]>,
    /// World size when the graph is a fragment. Defaults to `graph.n()`.
    pub world_n: Option<u32>,
}

impl<'a> RunConfig<'a> {
    pub fn new(graph: &'a LabeledGraph, program: &'a dyn Program) -> Self {
        RunConfig {
            graph,
            program,
            rounds: 2 * graph.n() + 2,
            b_sec: 0,
            b_pub: 0,
            step_budget: None,
            public_seed: 0,
            private_seed: 0,
            ids: None,
            world_n: None,
        }
    }
}

pub struct RunResult {
    /// The input graph with every halted node's outputs applied.
    pub outputs: LabeledGraph,
    /// Round at which each node halted (`None`: still running at the budget).
    pub halted_at: Vec<Option<u32>>,
    /// Max halting round across nodes — the algorithm's round complexity.
    pub rounds: u32,
    /// Every node halted within the round budget and no budget violations.
    pub complete: bool,
    /// Private coins drawn per node.
    pub coins_drawn: Vec<u32>,
    /// Nodes that exceeded the per-activation step budget (they stop dead).
    pub budget_exceeded: Vec<NodeId>,
    pub r_pub: Vec<u8>,
}

struct NodeState {
    machine: Box<dyn crate::program::NodeProgram>,
    tape: Vec<u8>,
    cursor: usize,
    neighbors: Vec<(NodeId, Option<Label>)>,
    halted: Option<u32>,
    dead: bool,
}

/// Runs the program on every node in lockstep: activations within a round are
/// independent (and parallel); message exchange is the round barrier.
pub fn execute(cfg: &RunConfig) -> Result<RunResult, EngineError> {
    let g = cfg.graph;
    let n = g.n();
    let world_n = cfg.world_n.unwrap_or(n);
    let ext = |v: NodeId| cfg.ids.map_or(v, |m| m[v as usize]);
    let to_local: HashMap<NodeId, NodeId> =
        (0..n).map(|v| (ext(v), v)).collect();
    let step_budget =
        cfg.step_budget.unwrap_or(4 * u64::from(world_n) * u64::from(world_n));
    let r_pub = public_tape(cfg.public_seed, cfg.b_pub);

    let mut nodes: Vec<NodeState> = (0..n)
        .map(|v| NodeState {
            machine: cfg.program.spawn(),
            tape: private_tape(cfg.private_seed, u64::from(ext(v)), cfg.b_sec),
            cursor: 0,
            neighbors: g
                .half_edges_at(v)
                .map(|(w, l)| (ext(w), l.cloned()))
                .collect(),
            halted: None,
            dead: false,
        })
        .collect();

    let mut inboxes: Vec<Vec<Msg>> = vec![Vec::new(); n as usize];
    let mut node_out: Vec<Option<Label>> = vec![None; n as usize];
    let mut he_out: HashMap<(NodeId, NodeId), Label> = HashMap::new();
    let mut budget_exceeded: Vec<NodeId> = Vec::new();

    for round in 0..=cfg.rounds {
        if nodes.iter().all(|s| s.halted.is_some() || s.dead) {
            break;
        }
        let taken = std::mem::replace(&mut inboxes, vec![Vec::new(); n as usize]);
        let activations: Vec<Option<(Action, u64)>> = nodes
            .par_iter_mut()
            .zip(taken.into_par_iter())
            .enumerate()
            .map(|(v, (s, inbox))| {
                if s.halted.is_some() || s.dead {
                    return None;
                }
                let v = v as NodeId;
                let mut ctx = Ctx {
                    node: ext(v),
                    n: world_n,
                    round,
                    input: g.node_input(v),
                    neighbors: &s.neighbors,
                    r_pub: &r_pub,
                    tape: &s.tape,
                    cursor: s.cursor,
                    steps: 1 + inbox.len() as u64,
                };
                let action = s.machine.activate(&mut ctx, &inbox);
                s.cursor = ctx.cursor;
                Some((action, ctx.steps))
            })
            .collect();

        // the barrier: apply all actions, then deliver
        let mut next: Vec<Vec<Msg>> = vec![Vec::new(); n as usize];
        for (v, slot) in activations.into_iter().enumerate() {
            let Some((action, steps)) = slot else {
                continue;
            };
            let v = v as NodeId;
            let s = &mut nodes[v as usize];
            if steps > step_budget {
                s.dead = true;
                budget_exceeded.push(v);
                continue;
            }
            match action {
                Action::Continue(outbox) => {
                    let mut seen: Vec<NodeId> = Vec::new();
                    for (target, body) in outbox {
                        let Some(&t) = to_local.get(&target) else {
                            return Err(EngineError::BadTarget { node: ext(v), target });
                        };
                        if !s.neighbors.iter().any(|&(w, _)| w == target) {
                            return Err(EngineError::BadTarget { node: ext(v), target });
                        }
                        if seen.contains(&target) {
                            return Err(EngineError::DuplicateMessage {
                                node: ext(v),
                                target,
                            });
                        }
                        seen.push(target);
                        next[t as usize].push(Msg { from: ext(v), body });
                    }
                }
                Action::Halt { node, half_edges } => {
                    s.halted = Some(round);
                    node_out[v as usize] = node;
                    for (target, l) in half_edges {
                        let ok = to_local.contains_key(&target)
                            && s.neighbors.iter().any(|&(w, _)| w == target);
                        if !ok {
                            return Err(EngineError::BadOutputEdge { node: ext(v), target });
                        }
                        he_out.insert((v, to_local[&target]), l);
                    }
                }
            }
        }
        // deterministic inbox order regardless of scheduling
        for q in &mut next {
            q.sort_by_key(|m| m.from);
        }
        inboxes = next;
    }

    let outputs = g.with_outputs(
        |v| node_out[v as usize].clone(),
        |v, w| he_out.get(&(v, w)).cloned(),
    );
    let complete =
        nodes.iter().all(|s| s.halted.is_some()) && budget_exceeded.is_empty();
    let rounds =
        nodes.iter().filter_map(|s| s.halted).max().unwrap_or(cfg.rounds);
    Ok(RunResult {
        outputs,
        halted_at: nodes.iter().map(|s| s.halted).collect(),
        rounds,
        complete,
        coins_drawn: nodes.iter().map(|s| s.cursor as u32).collect(),
        budget_exceeded,
        r_pub,
    })
}

/// Replays one node on its extracted neighborhood and checks it reproduces
/// the output it gave in the full run — the locality guarantee.
///
/// The fragment has radius one more than the node's halting round: a node's
/// outcome after t rounds depends on the t-ball's labels plus, through
/// round-0 messages, on the degree and labels of nodes at distance exactly t,
/// all of which the (t+1)-ball carries.
pub fn replays_locally(cfg: &RunConfig, result: &RunResult, v: NodeId) -> bool {
    let Some(t) = result.halted_at[v as usize] else {
        return false;
    };
    let view = extract_view(&cfg.graph.without_outputs(), v, t + 1);
    let replay_cfg = RunConfig {
        graph: &view.graph,
        program: cfg.program,
        rounds: t,
        b_sec: cfg.b_sec,
        b_pub: cfg.b_pub,
        step_budget: cfg.step_budget,
        public_seed: cfg.public_seed,
        private_seed: cfg.private_seed,
        ids: Some(&view.orig_ids),
        world_n: Some(cfg.world_n.unwrap_or(cfg.graph.n())),
    };
    let Ok(replay) = execute(&replay_cfg) else {
        return false;
    };
    let local = view.center;
    replay.halted_at[local as usize] == Some(t)
        && replay.outputs.node_output(local) == result.outputs.node_output(v)
}
