//! `diag(A, A^-1)` as a product of elementary matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ElementaryFactorization, ElementaryMatrix};
use crate::error::Result;
use crate::matrix::{InvertibleMatrix, SquareMatrix};
use crate::rings::RingDescriptor;

fn block_diag(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let n = a.n();
    let size = 2 * n;
    let mut entries = vec![BigInt::zero(); size * size];
    for i in 0..n {
        for j in 0..n {
            entries[i * size + j] = a.get(i, j).clone();
            entries[(n + i) * size + n + j] = b.get(i, j).clone();
        }
    }
    SquareMatrix::new(a.ring(), size, entries).expect("square")
}

/// `diag(A, A^-1)` at level `2n`.
pub fn whitehead_target(a: &InvertibleMatrix) -> InvertibleMatrix {
    InvertibleMatrix::from_parts(
        block_diag(a.matrix(), a.inverse()),
        a.ring().one(),
        block_diag(a.inverse(), a.matrix()),
    )
}

/// `[[I, B], [0, I]]` as `n^2` commuting elementary factors.
fn upper_block(ring: RingDescriptor, n: usize, b: &SquareMatrix, out: &mut Vec<ElementaryMatrix>) {
    for i in 0..n {
        for k in 0..n {
            if !b.get(i, k).is_zero() {
                out.push(
                    ElementaryMatrix::new(ring, 2 * n, i + 1, n + k + 1, b.get(i, k).clone())
                        .unwrap(),
                );
            }
        }
    }
}

/// `[[I, 0], [C, I]]` as `n^2` commuting elementary factors.
fn lower_block(ring: RingDescriptor, n: usize, c: &SquareMatrix, out: &mut Vec<ElementaryMatrix>) {
    for i in 0..n {
        for k in 0..n {
            if !c.get(i, k).is_zero() {
                out.push(
                    ElementaryMatrix::new(ring, 2 * n, n + i + 1, k + 1, c.get(i, k).clone())
                        .unwrap(),
                );
            }
        }
    }
}

/// `w(B) = [[I, B], [0, I]] [[I, 0], [-B^-1, I]] [[I, B], [0, I]] = [[0, B], [-B^-1, 0]]`.
fn block_w(b: &InvertibleMatrix, out: &mut Vec<ElementaryMatrix>) {
    let ring = b.ring();
    let n = b.n();
    let minus_one = ring.neg(&ring.one());
    upper_block(ring, n, b.matrix(), out);
    lower_block(ring, n, &b.inverse().scale(&minus_one), out);
    upper_block(ring, n, b.matrix(), out);
}

/// Factors `diag(A, A^-1) = w(A) w(-I)`; entries equal to zero are elided.
pub fn whitehead_factor(a: &InvertibleMatrix) -> Result<ElementaryFactorization> {
    let ring = a.ring();
    let n = a.n();
    let minus_one = ring.neg(&ring.one());
    let minus_identity = SquareMatrix::identity(ring, n).scale(&minus_one);
    let minus_identity = InvertibleMatrix::from_parts(
        minus_identity.clone(),
        ring.pow(&minus_one, n as u64),
        minus_identity,
    );
    let mut factors = Vec::with_capacity(6 * n * n);
    block_w(a, &mut factors);
    block_w(&minus_identity, &mut factors);
    ElementaryFactorization::new(whitehead_target(a), factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::elem;
    use crate::matrix::{sample_gl, seeded_rng};

    #[test]
    fn identity_block() {
        let r = RingDescriptor::zmod(5).unwrap();
        for n in 1..=3 {
            let f = whitehead_factor(&InvertibleMatrix::identity(r, n)).unwrap();
            assert!(f.product().is_identity());
            assert!(f.factors().iter().all(|e| !e.is_identity()));
        }
    }

    #[test]
    fn scalar_two_over_z5() {
        let r = RingDescriptor::zmod(5).unwrap();
        let a = SquareMatrix::from_rows(r, [[2]])
            .unwrap()
            .try_invert()
            .unwrap();
        let f = whitehead_factor(&a).unwrap();
        // w(2) w(-1) with w(u) = e12(u) e21(-u^-1) e12(u); -2^-1 = -3 = 2 mod 5.
        let expected: Vec<_> = [
            (1, 2, 2),
            (2, 1, 2),
            (1, 2, 2),
            (1, 2, 4),
            (2, 1, 1),
            (1, 2, 4),
        ]
        .into_iter()
        .map(|(p, q, v)| elem(r, 2, p, q, v).unwrap())
        .collect();
        assert_eq!(f.factors(), expected.as_slice());
        assert_eq!(
            f.product(),
            SquareMatrix::from_rows(r, [[2, 0], [0, 3]]).unwrap()
        );
    }

    #[test]
    fn random_over_z3() {
        let r = RingDescriptor::zmod(3).unwrap();
        let mut rng = seeded_rng(8);
        for _ in 0..20 {
            let a = sample_gl(r, 2, &mut rng);
            let f = whitehead_factor(&a).unwrap();
            assert_eq!(f.target().n(), 4);
            assert_eq!(f.product(), *whitehead_target(&a).matrix());
        }
    }
}
