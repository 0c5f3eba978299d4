use crate::machine::{Mv, Sym, TuringMachine};
use graph_core::intern;
use thiserror::Error;

/// Flags available to straight-line programs. Flag 3 is the sticky failure
/// flag: ops may read it but only `FailIf*` ops can raise it.
pub const FLAG_COUNT: usize = 4;
pub const FAIL_FLAG: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagOp {
    Set(usize, bool),
    Copy { from: usize, to: usize },
    /// `to ^= from`
    Xor { from: usize, to: usize },
    And { from: usize, to: usize },
    Or { from: usize, to: usize },
    Not(usize),
    FailIf(usize),
    FailIfNot(usize),
    FailIfDiff(usize, usize),
}

/// One straight-line instruction. Programs contain no loops or branches, so
/// a compiled machine takes exactly the same number of transitions on every
/// input of the declared length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlOp {
    /// Relative head move; compiles to `|k|` single-step states.
    Move(isize),
    /// Reads the current cell into a flag. A non-bit cell loads 0 and fails.
    LoadBit(usize),
    /// Writes the flag's value to the current cell as "0"/"1".
    StoreBit(usize),
    WriteSym(&'static str),
    /// Writes `sym` when the flag is set, otherwise leaves the cell as is.
    OverwriteIf { flag: usize, sym: &'static str },
    /// Pure flag transform; costs no machine step.
    Flags(FlagOp),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SlError {
    #[error("head position {pos} leaves [0, {max}] at op {op}")]
    HeadOutOfRange { op: usize, pos: isize, max: usize },
    #[error("program ends with head at {0}, not at cell 0")]
    HaltAway(isize),
    #[error("flag index {0} out of range")]
    BadFlag(usize),
    #[error("op writes the fail flag directly")]
    WritesFail,
}

/// A machine produced by [`compile_straight_line`] plus its exact resource
/// profile: every length-`n_input` run takes `t_transitions` steps and stays
/// within `s_cells` tape cells.
#[derive(Debug, Clone)]
pub struct CompiledMachine {
    pub machine: TuringMachine,
    pub n_input: usize,
    pub t_transitions: usize,
    pub s_cells: usize,
}

fn check_flag(i: usize) -> Result<(), SlError> {
    if i < FLAG_COUNT {
        Ok(())
    } else {
        Err(SlError::BadFlag(i))
    }
}

fn validate(op: &FlagOp) -> Result<(), SlError> {
    let (reads, writes) = match *op {
        FlagOp::Set(t, _) => (t, t),
        FlagOp::Copy { from, to }
        | FlagOp::Xor { from, to }
        | FlagOp::And { from, to }
        | FlagOp::Or { from, to } => (from, to),
        FlagOp::Not(t) => (t, t),
        FlagOp::FailIf(a) | FlagOp::FailIfNot(a) => (a, FAIL_FLAG),
        FlagOp::FailIfDiff(a, b) => {
            check_flag(a)?;
            (b, FAIL_FLAG)
        }
    };
    check_flag(reads)?;
    check_flag(writes)?;
    if writes == FAIL_FLAG && !matches!(op, FlagOp::FailIf(_) | FlagOp::FailIfNot(_) | FlagOp::FailIfDiff(..)) {
        return Err(SlError::WritesFail);
    }
    Ok(())
}

fn bit(f: u8, i: usize) -> bool {
    f >> i & 1 == 1
}

fn put(f: u8, i: usize, v: bool) -> u8 {
    f & !(1 << i) | (u8::from(v) << i)
}

fn apply(op: &FlagOp, f: u8) -> u8 {
    match *op {
        FlagOp::Set(t, v) => put(f, t, v),
        FlagOp::Copy { from, to } => put(f, to, bit(f, from)),
        FlagOp::Xor { from, to } => put(f, to, bit(f, to) ^ bit(f, from)),
        FlagOp::And { from, to } => put(f, to, bit(f, to) & bit(f, from)),
        FlagOp::Or { from, to } => put(f, to, bit(f, to) | bit(f, from)),
        FlagOp::Not(t) => put(f, t, !bit(f, t)),
        FlagOp::FailIf(a) => put(f, FAIL_FLAG, bit(f, FAIL_FLAG) | bit(f, a)),
        FlagOp::FailIfNot(a) => put(f, FAIL_FLAG, bit(f, FAIL_FLAG) | !bit(f, a)),
        FlagOp::FailIfDiff(a, b) => put(f, FAIL_FLAG, bit(f, FAIL_FLAG) | (bit(f, a) ^ bit(f, b))),
    }
}

/// Compiles a straight-line program into a machine that starts at cell 0,
/// executes one op per step, and halts back at cell 0.
pub fn compile_straight_line(ops: &[SlOp], n_input: usize) -> Result<CompiledMachine, SlError> {
    let n_pcs: usize = ops
        .iter()
        .map(|op| match op {
            SlOp::Move(k) => k.unsigned_abs(),
            SlOp::Flags(_) => 0,
            _ => 1,
        })
        .sum();
    let state = |pc: usize, f: u8| (pc * 16 + f as usize) as u32;
    let halt_states: Vec<u32> = (0..16).map(|f| state(n_pcs, f)).collect();
    let mut m = TuringMachine::new((n_pcs as u32 + 1) * 16, 0, &halt_states);
    let syms: [Sym; 4] = [intern("#L"), intern("#R"), intern("0"), intern("1")];
    let zero = intern("0");
    let one = intern("1");

    let mut pc = 0usize;
    let mut pos = 0isize;
    let max = n_input + 1;
    let mut pending: Vec<FlagOp> = Vec::new();

    // Emits one machine step: per (flags, symbol), what to write, where to
    // move, and the next flags. Folds and clears any pending flag transforms.
    let mut emit = |pc: &mut usize,
                    pending: &mut Vec<FlagOp>,
                    mv: Mv,
                    effect: &dyn Fn(u8, Sym) -> (u8, Sym)| {
        for f in 0..16u8 {
            let f1 = pending.iter().fold(f, |acc, op| apply(op, acc));
            for sym in syms {
                let (f2, write) = effect(f1, sym);
                m.add_rule(state(*pc, f), sym, state(*pc + 1, f2), write, mv)
                    .expect("straight-line states are distinct");
            }
        }
        pending.clear();
        *pc += 1;
    };

    for (op_idx, op) in ops.iter().enumerate() {
        match *op {
            SlOp::Flags(fop) => {
                validate(&fop)?;
                pending.push(fop);
            }
            SlOp::Move(k) => {
                let (step, mv) = if k >= 0 { (1, Mv::R) } else { (-1, Mv::L) };
                for _ in 0..k.unsigned_abs() {
                    pos += step;
                    if pos < 0 || pos > max as isize {
                        return Err(SlError::HeadOutOfRange { op: op_idx, pos, max });
                    }
                    emit(&mut pc, &mut pending, mv, &|f, sym| (f, sym));
                }
            }
            SlOp::LoadBit(flag) => {
                check_flag(flag)?;
                if flag == FAIL_FLAG {
                    return Err(SlError::WritesFail);
                }
                emit(&mut pc, &mut pending, Mv::S, &|f, sym| {
                    let f = match sym {
                        "0" => put(f, flag, false),
                        "1" => put(f, flag, true),
                        _ => put(put(f, flag, false), FAIL_FLAG, true),
                    };
                    (f, sym)
                });
            }
            SlOp::StoreBit(flag) => {
                check_flag(flag)?;
                emit(&mut pc, &mut pending, Mv::S, &|f, _| {
                    (f, if bit(f, flag) { one } else { zero })
                });
            }
            SlOp::WriteSym(s) => {
                let s = intern(s);
                emit(&mut pc, &mut pending, Mv::S, &|f, _| (f, s));
            }
            SlOp::OverwriteIf { flag, sym } => {
                check_flag(flag)?;
                let s = intern(sym);
                emit(&mut pc, &mut pending, Mv::S, &|f, incoming| {
                    (f, if bit(f, flag) { s } else { incoming })
                });
            }
        }
    }
    if pos != 0 {
        return Err(SlError::HaltAway(pos));
    }
    debug_assert_eq!(pc, n_pcs);
    Ok(CompiledMachine { machine: m, n_input, t_transitions: n_pcs, s_cells: n_input + 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::run;

    /// Reads cells 1 and 2, writes their xor to cell 3, sets cell 1 to 1,
    /// and walks home.
    fn xor_program() -> Vec<SlOp> {
        vec![
            SlOp::Move(1),
            SlOp::LoadBit(0),
            SlOp::Move(1),
            SlOp::LoadBit(1),
            SlOp::Flags(FlagOp::Xor { from: 0, to: 1 }),
            SlOp::Move(1),
            SlOp::StoreBit(1),
            SlOp::Move(-2),
            SlOp::WriteSym("1"),
            SlOp::Move(-1),
        ]
    }

    #[test]
    fn xor_program_differential() {
        let compiled = compile_straight_line(&xor_program(), 3).unwrap();
        for x in 0u8..8 {
            let input = [x & 1, x >> 1 & 1, x >> 2 & 1];
            let r = run(&compiled.machine, &input, 1000);
            assert!(r.complete, "input {input:?}");
            assert_eq!(r.transitions(), compiled.t_transitions, "uniform step count");
            assert_eq!(r.cells_used(), compiled.s_cells);
            assert_eq!(r.output_bits(), vec![1, input[1], input[0] ^ input[1]]);
        }
    }

    #[test]
    fn fail_flag_drives_conditional_writes() {
        // Fail iff cell 1 != cell 2, then overwrite cell 1 with 1 on failure.
        let ops = vec![
            SlOp::Move(1),
            SlOp::LoadBit(0),
            SlOp::Move(1),
            SlOp::LoadBit(1),
            SlOp::Flags(FlagOp::FailIfDiff(0, 1)),
            SlOp::Move(-1),
            SlOp::OverwriteIf { flag: FAIL_FLAG, sym: "1" },
            SlOp::Move(-1),
        ];
        let compiled = compile_straight_line(&ops, 2).unwrap();
        let cases = [([0, 0], [0, 0]), ([0, 1], [1, 1]), ([1, 1], [1, 1]), ([1, 0], [1, 0])];
        for (input, want) in cases {
            let r = run(&compiled.machine, &input, 1000);
            assert!(r.complete);
            assert_eq!(r.output_bits(), want, "input {input:?}");
            assert_eq!(r.transitions(), compiled.t_transitions);
        }
    }

    #[test]
    fn static_bounds_enforced() {
        assert!(matches!(
            compile_straight_line(&[SlOp::Move(-1)], 4),
            Err(SlError::HeadOutOfRange { .. })
        ));
        assert!(matches!(
            compile_straight_line(&[SlOp::Move(7)], 4),
            Err(SlError::HeadOutOfRange { .. })
        ));
        assert!(matches!(compile_straight_line(&[SlOp::Move(1)], 4), Err(SlError::HaltAway(1))));
        assert!(matches!(
            compile_straight_line(&[SlOp::Flags(FlagOp::Set(FAIL_FLAG, true))], 2),
            Err(SlError::WritesFail)
        ));
        assert!(matches!(
            compile_straight_line(&[SlOp::LoadBit(9)], 2),
            Err(SlError::BadFlag(9))
        ));
    }
}
