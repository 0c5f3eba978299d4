use graph_core::intern;
use std::collections::HashMap;
use thiserror::Error;

pub type Sym = &'static str;

/// Left tape delimiter: exactly one, at cell 0, never overwritten.
pub const BLANK_L: &str = "#L";
/// Right filler symbol.
pub const BLANK_R: &str = "#R";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mv {
    L,
    R,
    S,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("state {0} out of range")]
    BadState(u32),
    #[error("rule added for final state {0}")]
    RuleFromFinal(u32),
    #[error("duplicate rule for state {0} on {1}")]
    DuplicateRule(u32, Sym),
}

/// A deterministic machine. The transition table may be partial; a missing
/// rule simply means no valid successor configuration exists.
#[derive(Debug, Clone)]
pub struct TuringMachine {
    n_states: u32,
    start: u32,
    finals: Vec<bool>,
    sigma: Vec<Sym>,
    delta: HashMap<(u32, Sym), (u32, Sym, Mv)>,
}

impl TuringMachine {
    pub fn new(n_states: u32, start: u32, final_states: &[u32]) -> Self {
        let mut finals = vec![false; n_states as usize];
        for &f in final_states {
            finals[f as usize] = true;
        }
        let sigma = vec![intern(BLANK_L), intern(BLANK_R), intern("0"), intern("1")];
        TuringMachine { n_states, start, finals, sigma, delta: HashMap::new() }
    }

    pub fn add_rule(
        &mut self,
        state: u32,
        sym: &str,
        next: u32,
        write: &str,
        mv: Mv,
    ) -> Result<(), MachineError> {
        if state >= self.n_states {
            return Err(MachineError::BadState(state));
        }
        if next >= self.n_states {
            return Err(MachineError::BadState(next));
        }
        if self.finals[state as usize] {
            return Err(MachineError::RuleFromFinal(state));
        }
        let sym = intern(sym);
        let write = intern(write);
        for s in [sym, write] {
            if !self.sigma.contains(&s) {
                self.sigma.push(s);
            }
        }
        if self.delta.insert((state, sym), (next, write, mv)).is_some() {
            return Err(MachineError::DuplicateRule(state, sym));
        }
        Ok(())
    }

    pub fn rule(&self, state: u32, sym: Sym) -> Option<(u32, Sym, Mv)> {
        self.delta.get(&(state, sym)).copied()
    }

    pub fn is_final(&self, state: u32) -> bool {
        self.finals.get(state as usize).copied().unwrap_or(false)
    }

    pub fn is_state(&self, state: u32) -> bool {
        state < self.n_states
    }

    pub fn n_states(&self) -> u32 {
        self.n_states
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn sigma(&self) -> &[Sym] {
        &self.sigma
    }

    pub fn rule_count(&self) -> usize {
        self.delta.len()
    }
}
