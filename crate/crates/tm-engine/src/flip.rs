use crate::machine::{Mv, TuringMachine};

/// Small reference machine: sweeps right complementing every bit, sweeps back
/// left, and halts at cell 0. Four states, final state 3.
pub fn flip_machine() -> TuringMachine {
    let mut m = TuringMachine::new(4, 0, &[3]);
    m.add_rule(0, "#L", 1, "#L", Mv::R).unwrap();
    m.add_rule(1, "0", 1, "1", Mv::R).unwrap();
    m.add_rule(1, "1", 1, "0", Mv::R).unwrap();
    m.add_rule(1, "#R", 2, "#R", Mv::L).unwrap();
    m.add_rule(2, "0", 2, "0", Mv::L).unwrap();
    m.add_rule(2, "1", 2, "1", Mv::L).unwrap();
    m.add_rule(2, "#L", 3, "#L", Mv::S).unwrap();
    m
}
