#![allow(dead_code)]

use k1_core::RingDescriptor;
use num_bigint::BigInt;
use rand::Rng;

pub fn zmod(m: u64) -> RingDescriptor {
    RingDescriptor::zmod(m).unwrap()
}

/// `Z/2 .. Z/6` and `Z` (sampled with bounded entries).
pub fn small_rings() -> Vec<RingDescriptor> {
    let mut rings: Vec<_> = (2..=6).map(zmod).collect();
    rings.push(RingDescriptor::Integers);
    rings
}

/// Laplace expansion along the first row over plain `i128`, reduced at the end.
pub fn cofactor_det(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    if n == 1 {
        return rows[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != c)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * rows[0][c] * cofactor_det(&minor)
        })
        .sum()
}

pub fn reduce_i128(ring: RingDescriptor, v: i128) -> BigInt {
    ring.reduce(&BigInt::from(v))
}

/// A random `n x n` array of ring entries (any matrix, not only invertible ones).
pub fn random_rows<R: Rng>(ring: RingDescriptor, n: usize, rng: &mut R) -> Vec<Vec<i128>> {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| match ring.modulus() {
                    Some(m) => rng.gen_range(0..m as i128),
                    None => rng.gen_range(-50..=50),
                })
                .collect()
        })
        .collect()
}
