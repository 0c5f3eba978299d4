use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

// The public tape and the per-node private tapes use separate seeds; on top
// of that they live on disjoint generator streams, so even equal seeds keep
// them independent.
const PUBLIC_STREAM: u64 = u64::MAX;

/// The shared public coin tape: `bits` coins from `seed`.
pub fn public_tape(seed: u64, bits: u32) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(PUBLIC_STREAM);
    draw_bits(&mut rng, bits)
}

/// Node `id`'s private coin tape: `bits` coins from the private seed, on the
/// node's own generator stream.
pub fn private_tape(seed: u64, id: u64, bits: u32) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(id);
    draw_bits(&mut rng, bits)
}

/// A derived seed for trial `salt`, lane `lane` — used by experiment drivers
/// to hand each trial independent public/private/adversary seeds.
pub fn derive_seed(base: u64, salt: u64, lane: u64) -> u64 {
    let mut rng = ChaCha12Rng::seed_from_u64(base);
    rng.set_stream(salt.wrapping_mul(8).wrapping_add(lane));
    rng.next_u64()
}

fn draw_bits(rng: &mut ChaCha12Rng, bits: u32) -> Vec<u8> {
    (0..bits).map(|_| (rng.next_u32() & 1) as u8).collect()
}
