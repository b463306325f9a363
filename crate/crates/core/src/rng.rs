//! Seeded, platform-independent random draws.
//!
//! Everything random in the crate is ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`. Independent sub-streams are selected with
//! ChaCha's 64-bit stream id, never by reseeding with derived values.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream id reserved for the planting pass of planted colorings.
pub(crate) const PLANTING_STREAM: u64 = u64::MAX;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw from `0..bound` (Lemire's multiply-shift with rejection of the
/// biased low zone, which has probability below `bound / 2^64`).
pub fn below<R: RngCore>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let m = rng.next_u64() as u128 * bound as u128;
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}

/// Uniform integer in `[-range, range]`.
pub fn symmetric<R: RngCore>(rng: &mut R, range: u64) -> i64 {
    below(rng, 2 * range + 1) as i64 - range as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| below(&mut stream(7, 3), 1000)).collect();
        let b: Vec<u64> = (0..4).map(|_| below(&mut stream(7, 3), 1000)).collect();
        assert_eq!(a, b);
        let mut s3 = stream(7, 3);
        let mut s4 = stream(7, 4);
        let x: Vec<u64> = (0..8).map(|_| s3.next_u64()).collect();
        let y: Vec<u64> = (0..8).map(|_| s4.next_u64()).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = stream(1, 0);
        let mut seen = [false; 6];
        for _ in 0..1000 {
            let v = below(&mut rng, 6);
            seen[v as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
        for _ in 0..100 {
            let v = symmetric(&mut rng, 3);
            assert!((-3..=3).contains(&v));
        }
    }
}
