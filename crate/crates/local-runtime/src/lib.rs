//! Synchronous message-passing simulator for distributed labeling programs.
//!
//! Each node runs its own copy of a program, sees only its input, its
//! incident half-edge labels, the network size, its identifier, and two coin
//! tapes (one private, one shared), and exchanges labels with neighbors in
//! lockstep rounds. The engine is deterministic given its seeds, charges a
//! per-node step budget, and can replay any node on its extracted ball to
//! certify that outputs depended only on local information.

mod coins;
mod engine;
mod experiment;
mod program;

pub use coins::{derive_seed, private_tape, public_tape};
pub use engine::{execute, replays_locally, EngineError, RunConfig, RunResult};
pub use experiment::{
    estimate_success, Estimate, ExpParams, ObliviousAdversary, PresetAdversary, Scenario,
};
pub use program::{Action, Ctx, Msg, NodeProgram, Program};
