//! Turing machines over the four-symbol core alphabet, exact-step runs,
//! transcript-to-grid embedding, and a compiler from straight-line programs
//! to machines whose step count is input-independent.

mod embed;
mod flip;
mod machine;
mod problem;
mod run;
mod sl;

pub use embed::transcript_grid;
pub use flip::flip_machine;
pub use machine::{Mv, Sym, TuringMachine, BLANK_L, BLANK_R};
pub use problem::DistributionalProblem;
pub use run::{run, worst_case_dims, Config, Run};
pub use sl::{compile_straight_line, CompiledMachine, FlagOp, SlOp, FAIL_FLAG, FLAG_COUNT};
