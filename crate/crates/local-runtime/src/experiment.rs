use graph_core::LabeledGraph;
use rayon::prelude::*;

use crate::coins::{derive_seed, public_tape};
use crate::engine::{execute, RunConfig};
use crate::program::Program;

/// An input-selecting adversary that commits before the public coins exist.
/// The signature is the model: there is no way to hand one the public tape.
pub trait ObliviousAdversary: Sync {
    fn choose(&self, base: &LabeledGraph, seed: u64) -> LabeledGraph;
}

/// An input-selecting adversary that reads the preset public coins first.
pub trait PresetAdversary: Sync {
    fn choose(&self, base: &LabeledGraph, r_pub: &[u8], seed: u64) -> LabeledGraph;
    /// Declared computation budget; `None` means unbounded. Unbounded
    /// adversaries must be deterministic (ignore `seed`).
    fn budget(&self) -> Option<u64> {
        None
    }
}

/// Who picks the input labeling, and with how much knowledge.
pub enum Scenario<'a> {
    /// The input is fixed once and for all; nodes have private coins only.
    Private { input: &'a LabeledGraph },
    /// The adversary picks inputs blind to the public coins.
    Oblivious { base: &'a LabeledGraph, adversary: &'a dyn ObliviousAdversary },
    /// The adversary sees the public coins, then picks inputs, then the
    /// private coins are drawn.
    Preset { base: &'a LabeledGraph, adversary: &'a dyn PresetAdversary },
}

pub struct ExpParams {
    pub trials: u32,
    pub rounds: u32,
    pub b_sec: u32,
    pub b_pub: u32,
    pub step_budget: Option<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub successes: u32,
    pub trials: u32,
    pub p_hat: f64,
    /// 95% confidence radius (normal approximation).
    pub radius: f64,
}

impl Estimate {
    fn from_counts(successes: u32, trials: u32) -> Estimate {
        let p = f64::from(successes) / f64::from(trials);
        let radius = 1.96 * (p * (1.0 - p) / f64::from(trials)).sqrt();
        Estimate { successes, trials, p_hat: p, radius }
    }
}

/// Monte-Carlo success probability of `program` against the scenario, with
/// the quantifier order of the chosen model: the public tape is sampled, the
/// adversary (if preset) reads it and picks the input, and only then are the
/// private coins drawn. `valid` judges the finished labeling.
pub fn estimate_success(
    scenario: &Scenario,
    program: &dyn Program,
    params: &ExpParams,
    valid: &(dyn Fn(&LabeledGraph) -> bool + Sync),
) -> Estimate {
    let successes = (0..params.trials)
        .into_par_iter()
        .map(|trial| {
            u32::from(run_trial(scenario, program, params, u64::from(trial), valid))
        })
        .sum();
    Estimate::from_counts(successes, params.trials)
}

fn run_trial(
    scenario: &Scenario,
    program: &dyn Program,
    params: &ExpParams,
    trial: u64,
    valid: &(dyn Fn(&LabeledGraph) -> bool + Sync),
) -> bool {
    let public_seed = derive_seed(params.seed, trial, 0);
    let private_seed = derive_seed(params.seed, trial, 1);
    let adversary_seed = derive_seed(params.seed, trial, 2);
    let (input, b_pub) = match scenario {
        Scenario::Private { input } => ((*input).clone(), 0),
        Scenario::Oblivious { base, adversary } => {
            (adversary.choose(base, adversary_seed), params.b_pub)
        }
        Scenario::Preset { base, adversary } => {
            let r_pub = public_tape(public_seed, params.b_pub);
            (adversary.choose(base, &r_pub, adversary_seed), params.b_pub)
        }
    };
    let cfg = RunConfig {
        graph: &input,
        program,
        rounds: params.rounds,
        b_sec: params.b_sec,
        b_pub,
        step_budget: params.step_budget,
        public_seed,
        private_seed,
        ids: None,
        world_n: None,
    };
    match execute(&cfg) {
        Ok(result) => result.complete && valid(&result.outputs),
        Err(_) => false,
    }
}
