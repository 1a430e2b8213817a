//! Berkowitz characteristic polynomial and the quantities derived from it.
//!
//! Only ring operations are used (no division), so everything here is valid
//! over `Z/m` with zero divisors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SquareMatrix;

pub(super) fn berkowitz_charpoly(a: &SquareMatrix) -> Vec<BigInt> {
    let ring = a.ring();
    let n = a.n();
    let mut poly = vec![BigInt::one()];
    for k in 0..n {
        // First column of the Toeplitz matrix for the leading (k+1)x(k+1) block:
        // [1, -a_kk, -R C, -R M C, ..., -R M^(k-1) C] with M the leading kxk block,
        // R = a[k][0..k] and C = a[0..k][k].
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(ring.neg(a.get(k, k)));
        let mut v: Vec<BigInt> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for step in 0..k {
            let rv: BigInt = (0..k).map(|i| a.get(k, i) * &v[i]).sum();
            toeplitz.push(ring.neg(&rv));
            if step + 1 < k {
                v = (0..k)
                    .map(|i| ring.reduce(&(0..k).map(|j| a.get(i, j) * &v[j]).sum::<BigInt>()))
                    .collect();
            }
        }
        let next = (0..k + 2)
            .map(|i| {
                let acc: BigInt = (0..=i.min(k)).map(|j| &toeplitz[i - j] * &poly[j]).sum();
                ring.reduce(&acc)
            })
            .collect();
        poly = next;
    }
    poly
}

fn det_from_charpoly(n: usize, poly: &[BigInt], a: &SquareMatrix) -> BigInt {
    let c = &poly[n];
    if n.is_multiple_of(2) {
        c.clone()
    } else {
        a.ring().neg(c)
    }
}

pub(super) fn determinant(a: &SquareMatrix) -> BigInt {
    let poly = berkowitz_charpoly(a);
    det_from_charpoly(a.n(), &poly, a)
}

/// Cayley-Hamilton: `adj(A) = (-1)^(n+1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I)`.
fn adjugate_from_charpoly(a: &SquareMatrix, poly: &[BigInt]) -> SquareMatrix {
    let ring = a.ring();
    let n = a.n();
    let mut acc = SquareMatrix::identity(ring, n);
    for c in &poly[1..n] {
        acc = a * &acc;
        if !c.is_zero() {
            for i in 0..n {
                let v = ring.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
    }
    if n.is_multiple_of(2) {
        acc.scale(&ring.neg(&BigInt::one()))
    } else {
        acc
    }
}

pub(super) fn adjugate(a: &SquareMatrix) -> SquareMatrix {
    let poly = berkowitz_charpoly(a);
    adjugate_from_charpoly(a, &poly)
}

pub(super) fn determinant_and_adjugate(a: &SquareMatrix) -> (BigInt, SquareMatrix) {
    let poly = berkowitz_charpoly(a);
    (
        det_from_charpoly(a.n(), &poly, a),
        adjugate_from_charpoly(a, &poly),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingDescriptor;

    #[test]
    fn charpoly_of_two_by_two() {
        let z = RingDescriptor::Integers;
        let a = SquareMatrix::from_rows(z, [[1, 2], [3, 4]]).unwrap();
        // t^2 - 5t - 2
        let expected: Vec<BigInt> = [1, -5, -2].into_iter().map(BigInt::from).collect();
        assert_eq!(berkowitz_charpoly(&a), expected);
    }

    #[test]
    fn adjugate_times_matrix_is_scalar() {
        let z = RingDescriptor::Integers;
        let a = SquareMatrix::from_rows(
            z,
            [[2, -1, 0, 3], [1, 4, 1, 0], [0, 2, -2, 1], [5, 0, 1, 1]],
        )
        .unwrap();
        let (d, adj) = determinant_and_adjugate(&a);
        let prod = &adj * &a;
        assert_eq!(prod, SquareMatrix::identity(z, 4).scale(&d));
        assert_eq!(&a * &adj, prod);
    }
}
