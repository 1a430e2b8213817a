//! Deterministic generation of invertible test matrices.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{InvertibleMatrix, SquareMatrix};
use crate::rings::RingDescriptor;

/// Entry bound used when sampling matrices over `Z`.
pub const INTEGER_ENTRY_BOUND: i64 = 10;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_element<R: Rng>(ring: RingDescriptor, rng: &mut R) -> BigInt {
    match ring.modulus() {
        Some(m) => BigInt::from(rng.gen_range(0..m)),
        None => BigInt::from(rng.gen_range(-3i64..=3)),
    }
}

fn random_unit<R: Rng>(ring: RingDescriptor, rng: &mut R) -> BigInt {
    match ring.modulus() {
        Some(m) => loop {
            let v = BigInt::from(rng.gen_range(1..m));
            if ring.is_unit(&v) {
                break v;
            }
        },
        None => {
            if rng.gen_bool(0.5) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        }
    }
}

/// A product of `length` random elementary matrices and a random diagonal unit matrix.
///
/// The result depends only on the arguments.
pub fn random_invertible(
    ring: RingDescriptor,
    n: usize,
    seed: u64,
    length: usize,
) -> InvertibleMatrix {
    random_invertible_bounded(ring, n, seed, length, None)
}

/// As [`random_invertible`], but over `Z` any elementary step that would push an
/// entry of the matrix or its inverse beyond `bound` in absolute value is skipped.
pub fn random_invertible_bounded(
    ring: RingDescriptor,
    n: usize,
    seed: u64,
    length: usize,
    bound: Option<&BigInt>,
) -> InvertibleMatrix {
    let mut rng = seeded_rng(seed);
    let mut m = SquareMatrix::identity(ring, n);
    let mut inv = SquareMatrix::identity(ring, n);
    if n >= 2 {
        for _ in 0..length {
            let p = rng.gen_range(0..n);
            let q = (p + rng.gen_range(1..n)) % n;
            let r = random_element(ring, &mut rng);
            // m * e_pq(r) and e_pq(-r) * inv
            let mut next = m.clone();
            next.add_col_multiple(q, p, &r);
            let mut next_inv = inv.clone();
            next_inv.add_row_multiple(p, q, &ring.neg(&r));
            let within = match (bound, ring) {
                (Some(b), RingDescriptor::Integers) => {
                    next.max_abs_entry() <= *b && next_inv.max_abs_entry() <= *b
                }
                _ => true,
            };
            if within {
                m = next;
                inv = next_inv;
            }
        }
    }
    let mut det = BigInt::one();
    for i in 0..n {
        let u = random_unit(ring, &mut rng);
        let u_inv = ring.inverse(&u).expect("sampled a unit");
        m.scale_col(i, &u);
        inv.scale_row(i, &u_inv);
        det = ring.mul(&det, &u);
    }
    InvertibleMatrix::from_parts(m, det, inv)
}

/// A random element of `GL(n, R)`: uniform for `Z/m`, a bounded random walk for `Z`.
pub fn sample_gl<R: Rng>(ring: RingDescriptor, n: usize, rng: &mut R) -> InvertibleMatrix {
    match ring.modulus() {
        Some(_) => loop {
            let entries = (0..n * n).map(|_| random_element(ring, rng)).collect();
            let candidate = SquareMatrix::new(ring, n, entries).expect("n*n entries");
            if let Some(inv) = candidate.try_invert() {
                break inv;
            }
        },
        None => {
            let bound = BigInt::from(INTEGER_ENTRY_BOUND);
            random_invertible_bounded(ring, n, rng.gen(), 4 * n * n, Some(&bound))
        }
    }
}

/// A random element of `SL(n, R)`, obtained from [`sample_gl`] by rescaling the first row.
pub fn sample_sl<R: Rng>(ring: RingDescriptor, n: usize, rng: &mut R) -> InvertibleMatrix {
    let x = sample_gl(ring, n, rng);
    let d = x.det().clone();
    let d_inv = ring
        .inverse(&d)
        .expect("determinant of a GL sample is a unit");
    let mut m = x.matrix().clone();
    m.scale_row(0, &d_inv);
    let mut inv = x.inverse().clone();
    inv.scale_col(0, &d);
    InvertibleMatrix::from_parts(m, BigInt::one(), inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_walk_with_trivial_units_is_identity() {
        let r2 = RingDescriptor::zmod(2).unwrap();
        assert!(random_invertible(r2, 4, 7, 0).is_identity());
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let r = RingDescriptor::zmod(6).unwrap();
        let a = serde_json::to_string(&random_invertible(r, 3, 42, 20)).unwrap();
        let b = serde_json::to_string(&random_invertible(r, 3, 42, 20)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_matrices_invert() {
        let r = RingDescriptor::zmod(6).unwrap();
        let x = random_invertible(r, 3, 42, 20);
        let fresh = x.matrix().try_invert().expect("invertible by construction");
        assert_eq!(fresh.inverse(), x.inverse());
        assert_eq!(fresh.det(), x.det());
    }

    #[test]
    fn integer_samples_respect_bound() {
        let z = RingDescriptor::Integers;
        let mut rng = seeded_rng(1);
        for _ in 0..50 {
            let x = sample_gl(z, 3, &mut rng);
            assert!(x.matrix().max_abs_entry() <= BigInt::from(INTEGER_ENTRY_BOUND));
            assert!((x.matrix() * x.inverse()).is_identity());
        }
    }

    #[test]
    fn sl_samples_have_determinant_one() {
        let mut rng = seeded_rng(2);
        for m in [2, 4, 6, 12] {
            let r = RingDescriptor::zmod(m).unwrap();
            for _ in 0..20 {
                let x = sample_sl(r, 3, &mut rng);
                assert!(x.matrix().determinant().is_one());
                assert!((x.matrix() * x.inverse()).is_identity());
            }
        }
    }
}
