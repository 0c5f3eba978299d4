//! Distributed label-assignment programs for the hard instance families:
//! pointer-chain programs for the error-pointer constraint systems, the
//! public-coin row program for the aliased grid, and the composed-instance
//! solver, together with their round budgets and failure-risk accounting.

pub mod gossip;
pub mod lens;
pub mod wire;

/// Smallest `L` with `2^L >= n + 1`; id-space depth bound used by the
/// round budgets.
pub fn ceil_log2(n: u32) -> u32 {
    (n + 1).next_power_of_two().trailing_zeros()
}
