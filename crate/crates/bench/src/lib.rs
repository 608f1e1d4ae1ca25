//! Shared helpers for the criterion benchmarks.

use torusq_core::IntMatrix;

/// Deterministic pseudo-random integer matrix (xorshift, no external rng
/// needed at bench-definition time).
pub fn pseudo_random_matrix(seed: u64, n: usize, scale: i64) -> IntMatrix {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let data: Vec<i64> = (0..n * n)
        .map(|_| (next() % (2 * scale as u64 + 1)) as i64 - scale)
        .collect();
    IntMatrix::from_i64(n, n, &data)
}
