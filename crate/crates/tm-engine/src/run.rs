use crate::machine::{Mv, Sym, TuringMachine, BLANK_L, BLANK_R};
use graph_core::intern;

/// One tape configuration. The tape always starts with [`BLANK_L`] and ends
/// with at least one [`BLANK_R`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub tape: Vec<Sym>,
    pub head: usize,
    pub state: u32,
}

/// A recorded run: `configs[j]` is the configuration after `j` transitions.
#[derive(Debug, Clone)]
pub struct Run {
    pub configs: Vec<Config>,
    /// True when the run ended in a final state with the head at cell 0.
    pub complete: bool,
}

impl Run {
    pub fn transitions(&self) -> usize {
        self.configs.len() - 1
    }

    /// Cells ever present on the tape across the whole run.
    pub fn cells_used(&self) -> usize {
        self.configs.iter().map(|c| c.tape.len()).max().unwrap_or(0)
    }

    pub fn last(&self) -> &Config {
        self.configs.last().expect("a run holds at least the initial config")
    }

    /// The output bit string: tape content between the delimiters at halt.
    pub fn output_bits(&self) -> Vec<u8> {
        let tape = &self.last().tape;
        let mut out = Vec::new();
        for &sym in &tape[1..] {
            match sym {
                "0" => out.push(0),
                "1" => out.push(1),
                _ => break,
            }
        }
        out
    }
}

fn bit_sym(b: u8) -> Sym {
    if b == 0 {
        intern("0")
    } else {
        intern("1")
    }
}

/// Runs `machine` on `#L input #R`, recording every configuration, for at
/// most `max_steps` transitions.
pub fn run(machine: &TuringMachine, input: &[u8], max_steps: usize) -> Run {
    let mut tape: Vec<Sym> = Vec::with_capacity(input.len() + 2);
    tape.push(intern(BLANK_L));
    tape.extend(input.iter().map(|&b| bit_sym(b)));
    tape.push(intern(BLANK_R));
    let mut cur = Config { tape, head: 0, state: machine.start() };
    let mut configs = vec![cur.clone()];
    for _ in 0..max_steps {
        if machine.is_final(cur.state) {
            break;
        }
        let sym = cur.tape[cur.head];
        let Some((next, write, mv)) = machine.rule(cur.state, sym) else {
            break;
        };
        if matches!(mv, Mv::L) && cur.head == 0 {
            break;
        }
        cur.tape[cur.head] = write;
        cur.state = next;
        match mv {
            Mv::L => cur.head -= 1,
            Mv::R => {
                cur.head += 1;
                if cur.head == cur.tape.len() {
                    cur.tape.push(intern(BLANK_R));
                }
            }
            Mv::S => {}
        }
        configs.push(cur.clone());
    }
    let complete = machine.is_final(cur.state) && cur.head == 0;
    Run { configs, complete }
}

/// Maximum (cells, transitions) over every input of length `len`, or `None`
/// if some input fails to complete within `max_steps`. Exhaustive; `len` is
/// capped at 24 bits.
pub fn worst_case_dims(machine: &TuringMachine, len: usize, max_steps: usize) -> Option<(usize, usize)> {
    assert!(len <= 24, "worst_case_dims enumerates all 2^len inputs");
    let mut cells = 0;
    let mut transitions = 0;
    for x in 0u64..(1 << len) {
        let input: Vec<u8> = (0..len).map(|i| ((x >> i) & 1) as u8).collect();
        let r = run(machine, &input, max_steps);
        if !r.complete {
            return None;
        }
        cells = cells.max(r.cells_used());
        transitions = transitions.max(r.transitions());
    }
    Some((cells, transitions))
}
