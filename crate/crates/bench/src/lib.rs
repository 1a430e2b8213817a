//! Shared fixtures for the criterion benchmarks.

use k1_core::matrix::{sample_gl, sample_sl, seeded_rng};
use k1_core::{InvertibleMatrix, RingDescriptor};

/// `count` random elements of `GL(n, R)` from a fixed seed.
pub fn gl_samples(ring: RingDescriptor, n: usize, count: usize) -> Vec<InvertibleMatrix> {
    let mut rng = seeded_rng(0x6b31);
    (0..count).map(|_| sample_gl(ring, n, &mut rng)).collect()
}

/// `count` random elements of `SL(n, R)` from a fixed seed.
pub fn sl_samples(ring: RingDescriptor, n: usize, count: usize) -> Vec<InvertibleMatrix> {
    let mut rng = seeded_rng(0x736c);
    (0..count).map(|_| sample_sl(ring, n, &mut rng)).collect()
}
