use std::fmt;
use std::sync::Arc;

type Verifier = Arc<dyn Fn(&[u8], &[u8]) -> bool + Send + Sync>;

/// A search problem with solutions checked by `verify`, over inputs drawn
/// uniformly from `{0,1}^input_bits`.
#[derive(Clone)]
pub struct DistributionalProblem {
    pub name: String,
    pub input_bits: usize,
    pub witness_bits: usize,
    verify: Verifier,
}

impl DistributionalProblem {
    pub fn new(
        name: &str,
        input_bits: usize,
        witness_bits: usize,
        verify: impl Fn(&[u8], &[u8]) -> bool + Send + Sync + 'static,
    ) -> Self {
        DistributionalProblem {
            name: name.to_owned(),
            input_bits,
            witness_bits,
            verify: Arc::new(verify),
        }
    }

    /// True when `witness` solves `input`. Lengths are checked first.
    pub fn is_solution(&self, input: &[u8], witness: &[u8]) -> bool {
        input.len() == self.input_bits
            && witness.len() == self.witness_bits
            && (self.verify)(input, witness)
    }
}

impl fmt::Debug for DistributionalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DistributionalProblem({}, x: {} bits, w: {} bits)",
            self.name, self.input_bits, self.witness_bits
        )
    }
}
