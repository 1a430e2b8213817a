//! Factorization of determinant-one matrices into elementary matrices.
//!
//! Local rings (fields and `Z/p^k`) use unit-pivot elimination, `Z` uses
//! Euclidean row reduction, and composite `Z/m` is factored componentwise and
//! glued back together with the CRT idempotents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{ElementaryFactorization, ElementaryMatrix};
use crate::error::{Error, Result};
use crate::matrix::{InvertibleMatrix, SquareMatrix};
use crate::rings::{crt_split, RingDescriptor};

/// Row reduction that records every left multiplication.
struct Reducer {
    work: SquareMatrix,
    ops: Vec<ElementaryMatrix>,
}

impl Reducer {
    fn new(m: &SquareMatrix) -> Self {
        Reducer {
            work: m.clone(),
            ops: Vec::new(),
        }
    }

    fn ring(&self) -> RingDescriptor {
        self.work.ring()
    }

    /// `work <- e_pq(r) * work` (0-based `p`, `q`).
    fn row_op(&mut self, p: usize, q: usize, r: BigInt) {
        let r = self.ring().reduce(&r);
        if r.is_zero() {
            return;
        }
        let e = ElementaryMatrix::new(self.ring(), self.work.n(), p + 1, q + 1, r)
            .expect("indices in range and distinct");
        e.apply_left(&mut self.work);
        self.ops.push(e);
    }

    /// Moves the unit at `(pivot_row, col)` onto the diagonal and clears the column.
    fn settle_pivot(&mut self, col: usize, pivot_row: usize) -> Result<()> {
        let ring = self.ring();
        if pivot_row != col {
            self.row_op(col, pivot_row, BigInt::from(1));
        }
        let u_inv = ring.inverse(self.work.get(col, col)).ok_or_else(|| {
            Error::Malformed(format!(
                "no unit pivot in column {} of an invertible matrix",
                col + 1
            ))
        })?;
        for i in 0..self.work.n() {
            if i != col && !self.work.get(i, col).is_zero() {
                let factor = ring.neg(&ring.mul(self.work.get(i, col), &u_inv));
                self.row_op(i, col, factor);
            }
        }
        Ok(())
    }

    /// Local ring: the first row at or below the diagonal holding a unit.
    fn local_column(&mut self, col: usize) -> Result<()> {
        let ring = self.ring();
        let n = self.work.n();
        let pivot = (col..n)
            .find(|&i| ring.is_unit(self.work.get(i, col)))
            .ok_or_else(|| {
                Error::Unsupported(format!("{ring} is not local: no unit pivot found"))
            })?;
        self.settle_pivot(col, pivot)
    }

    /// `Z`: Euclidean reduction below the diagonal until one nonzero entry remains.
    fn euclidean_column(&mut self, col: usize) -> Result<()> {
        let n = self.work.n();
        loop {
            let pivot = (col..n)
                .filter(|&i| !self.work.get(i, col).is_zero())
                .min_by_key(|&i| self.work.get(i, col).abs())
                .ok_or_else(|| Error::Malformed("singular column over Z".into()))?;
            let mut done = true;
            for k in col..n {
                if k == pivot || self.work.get(k, col).is_zero() {
                    continue;
                }
                let q = self.work.get(k, col).div_floor(self.work.get(pivot, col));
                self.row_op(k, pivot, -q);
                if !self.work.get(k, col).is_zero() {
                    done = false;
                }
            }
            if done {
                return self.settle_pivot(col, pivot);
            }
        }
    }

    /// Elementary factors of `diag(u_1, ..., u_n)` with `prod u_i = 1`.
    fn diagonal_factors(&self) -> Vec<ElementaryMatrix> {
        let ring = self.ring();
        let n = self.work.n();
        let mut out = Vec::new();
        let mut carry = ring.one();
        for k in 0..n.saturating_sub(1) {
            // diag(..., v, v^-1, ...) at positions k, k+1 with v the running product.
            carry = ring.mul(&carry, self.work.get(k, k));
            if ring.is_one(&carry) {
                continue;
            }
            out.extend(swap_diagonal(ring, n, k + 1, &carry));
        }
        out
    }

    fn into_factors(self) -> Vec<ElementaryMatrix> {
        let diagonal = self.diagonal_factors();
        // e_t ... e_1 A = D  =>  A = e_1^-1 ... e_t^-1 D
        self.ops
            .iter()
            .map(ElementaryMatrix::inverse)
            .chain(diagonal)
            .collect()
    }
}

/// `diag(v, v^-1)` in rows `k, k+1` (1-based `k`) as `w(v) w(-1)` with
/// `w(u) = e_(k,k+1)(u) e_(k+1,k)(-u^-1) e_(k,k+1)(u)`.
pub(super) fn swap_diagonal(
    ring: RingDescriptor,
    n: usize,
    k: usize,
    v: &BigInt,
) -> Vec<ElementaryMatrix> {
    let w = |u: &BigInt| {
        let u_inv = ring.inverse(u).expect("diagonal entries are units");
        [
            ElementaryMatrix::new(ring, n, k, k + 1, u.clone()),
            ElementaryMatrix::new(ring, n, k + 1, k, ring.neg(&u_inv)),
            ElementaryMatrix::new(ring, n, k, k + 1, u.clone()),
        ]
        .map(|e| e.expect("valid indices"))
    };
    let minus_one = ring.neg(&ring.one());
    w(v).into_iter().chain(w(&minus_one)).collect()
}

fn factor_local(m: &SquareMatrix) -> Result<Vec<ElementaryMatrix>> {
    let mut red = Reducer::new(m);
    for col in 0..m.n() {
        red.local_column(col)?;
    }
    Ok(red.into_factors())
}

fn factor_integer(m: &SquareMatrix) -> Result<Vec<ElementaryMatrix>> {
    let mut red = Reducer::new(m);
    for col in 0..m.n() {
        red.euclidean_column(col)?;
    }
    Ok(red.into_factors())
}

fn factor_composite(m: &SquareMatrix, modulus: u64) -> Result<Vec<ElementaryMatrix>> {
    let ring = m.ring();
    let crt = crt_split(modulus)?;
    let mut out = Vec::new();
    for f in crt.factors() {
        let local = factor_local(&m.reduce_into(f.ring()))?;
        out.extend(lift_component(ring, &f.idempotent, &local));
    }
    Ok(out)
}

/// `e_pq(r) -> e_pq(e * r)` in the ambient ring.
pub(crate) fn lift_component(
    ring: RingDescriptor,
    idempotent: &BigInt,
    factors: &[ElementaryMatrix],
) -> Vec<ElementaryMatrix> {
    factors
        .iter()
        .map(|e| {
            let r = ring.mul(idempotent, e.r());
            ElementaryMatrix::new(ring, e.n(), e.p(), e.q(), r).expect("same indices")
        })
        .filter(|e| !e.is_identity())
        .collect()
}

/// Factors a determinant-one matrix into elementary matrices.
pub fn sl_factor(a: &InvertibleMatrix) -> Result<ElementaryFactorization> {
    let ring = a.ring();
    let m = a.matrix();
    let det = m.determinant();
    if !ring.is_one(&det) {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    if a.n() == 1 {
        return ElementaryFactorization::new(a.clone(), Vec::new());
    }
    let factors = match ring {
        RingDescriptor::Integers => factor_integer(m)?,
        RingDescriptor::Modular(_) if ring.is_local() => factor_local(m)?,
        RingDescriptor::Modular(modulus) => factor_composite(m, modulus.get())?,
    };
    ElementaryFactorization::new(a.clone(), factors)
}

/// Membership in `E(n, R)` for `n >= 3`, with a certificate when the answer is yes.
///
/// For `Z` and `Z/m` this coincides with `det = 1`; a positive answer always
/// carries a verified factorization.
pub fn is_in_e(a: &InvertibleMatrix) -> Result<Option<ElementaryFactorization>> {
    if a.n() < 3 {
        return Err(Error::LevelTooSmall {
            level: a.n(),
            min: 3,
        });
    }
    a.ring().require_sk1_trivial()?;
    match sl_factor(a) {
        Ok(f) => Ok(Some(f)),
        Err(Error::NotSpecialLinear(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
