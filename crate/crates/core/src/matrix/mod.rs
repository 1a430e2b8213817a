//! Dense square matrices over a [`RingDescriptor`].
//!
//! Entry access is 0-based `(row, col)`. Entries are canonical ring values,
//! so `==` on matrices is equality over the ring.

mod det;
mod random;

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{RingDescriptor, RingElement};

pub use random::{
    random_invertible, random_invertible_bounded, sample_gl, sample_sl, seeded_rng,
    INTEGER_ENTRY_BOUND,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct SquareMatrix {
    ring: RingDescriptor,
    n: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    ring: RingDescriptor,
    n: usize,
    rows: Vec<Vec<String>>,
}

impl TryFrom<MatrixRepr> for SquareMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let MatrixRepr { ring, n, rows } = repr;
        if n == 0 {
            return Err(Error::Malformed(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!(
                "expected {n} rows of {n} entries"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for s in rows.iter().flatten() {
            let v = BigInt::from_str(s)
                .map_err(|_| Error::Malformed(format!("entry {s:?} is not a decimal integer")))?;
            // Only canonical spellings are accepted so that encoding is bit-exact.
            if v.to_string() != *s || !ring.is_canonical(&v) {
                return Err(Error::Malformed(format!(
                    "entry {s:?} is not a canonical element of {ring}"
                )));
            }
            entries.push(v);
        }
        Ok(SquareMatrix { ring, n, entries })
    }
}

impl From<SquareMatrix> for MatrixRepr {
    fn from(m: SquareMatrix) -> Self {
        let rows = m
            .entries
            .chunks(m.n)
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        MatrixRepr {
            ring: m.ring,
            n: m.n,
            rows,
        }
    }
}

impl SquareMatrix {
    /// Builds a matrix from row-major entries, reducing them into the ring.
    pub fn new(ring: RingDescriptor, n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        let entries = entries.iter().map(|v| ring.reduce(v)).collect();
        Ok(SquareMatrix { ring, n, entries })
    }

    pub fn from_rows<I, R, T>(ring: RingDescriptor, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(bad.len(), n));
        }
        SquareMatrix::new(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = SquareMatrix::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(ring: RingDescriptor, n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        SquareMatrix {
            ring,
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn diagonal(ring: RingDescriptor, diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = SquareMatrix::zero(ring, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = ring.reduce(d);
        }
        m
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn entry(&self, row: usize, col: usize) -> RingElement {
        self.ring.element(self.get(row, col).clone())
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.n + col] = self.ring.reduce(&value);
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// Largest absolute value among the entries.
    pub fn max_abs_entry(&self) -> BigInt {
        use num_traits::Signed;
        self.entries
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }

    fn check_compatible(&self, other: &SquareMatrix) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn try_mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = BigInt::zero();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                entries.push(self.ring.reduce(&acc));
            }
        }
        Ok(SquareMatrix {
            ring: self.ring,
            n,
            entries,
        })
    }

    pub fn try_add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(SquareMatrix {
            ring: self.ring,
            n: self.n,
            entries,
        })
    }

    pub fn scale(&self, c: &BigInt) -> SquareMatrix {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, c)).collect();
        SquareMatrix {
            ring: self.ring,
            n: self.n,
            entries,
        }
    }

    /// Reinterprets the entries in another ring (reduction `Z/m -> Z/d` or `Z -> Z/m`).
    pub fn reduce_into(&self, ring: RingDescriptor) -> SquareMatrix {
        let entries = self.entries.iter().map(|v| ring.reduce(v)).collect();
        SquareMatrix {
            ring,
            n: self.n,
            entries,
        }
    }

    /// Row operation `row[target] += factor * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let n = self.n;
        for c in 0..n {
            let s = &self.entries[source * n + c];
            if s.is_zero() {
                continue;
            }
            let v = &self.entries[target * n + c] + factor * s;
            self.entries[target * n + c] = self.ring.reduce(&v);
        }
    }

    /// Column operation `col[target] += factor * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let n = self.n;
        for r in 0..n {
            let s = &self.entries[r * n + source];
            if s.is_zero() {
                continue;
            }
            let v = &self.entries[r * n + target] + factor * s;
            self.entries[r * n + target] = self.ring.reduce(&v);
        }
    }

    pub(crate) fn scale_row(&mut self, row: usize, factor: &BigInt) {
        let n = self.n;
        for c in 0..n {
            let v = self.ring.mul(&self.entries[row * n + c], factor);
            self.entries[row * n + c] = v;
        }
    }

    pub(crate) fn scale_col(&mut self, col: usize, factor: &BigInt) {
        let n = self.n;
        for r in 0..n {
            let v = self.ring.mul(&self.entries[r * n + col], factor);
            self.entries[r * n + col] = v;
        }
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(t I - A)`.
    pub fn charpoly(&self) -> Vec<BigInt> {
        det::berkowitz_charpoly(self)
    }

    /// Division-free determinant, valid over every commutative ring.
    pub fn determinant(&self) -> BigInt {
        det::determinant(self)
    }

    pub fn adjugate(&self) -> SquareMatrix {
        det::adjugate(self)
    }

    /// The inverse `adj(A) * det(A)^-1`, or `None` when `det(A)` is not a unit.
    pub fn try_invert(&self) -> Option<InvertibleMatrix> {
        let (det, adj) = det::determinant_and_adjugate(self);
        let det_inv = self.ring.inverse(&det)?;
        Some(InvertibleMatrix {
            matrix: self.clone(),
            inverse: adj.scale(&det_inv),
            det,
        })
    }
}

/// `a * b`. Panics on ring or dimension mismatch; use [`SquareMatrix::try_mul`]
/// where the operands are not known to agree.
impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.try_mul(rhs).expect("incompatible matrix product")
    }
}

pub fn mat_mul(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    a.try_mul(b)
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "] over {}", self.ring)
    }
}

/// An element of `GL(n, R)` carrying its determinant and inverse.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SquareMatrix", into = "SquareMatrix")]
pub struct InvertibleMatrix {
    matrix: SquareMatrix,
    det: BigInt,
    inverse: SquareMatrix,
}

impl PartialEq for InvertibleMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for InvertibleMatrix {}

impl TryFrom<SquareMatrix> for InvertibleMatrix {
    type Error = Error;

    fn try_from(m: SquareMatrix) -> Result<Self> {
        m.try_invert()
            .ok_or_else(|| Error::Malformed(format!("matrix {m} is not invertible")))
    }
}

impl From<InvertibleMatrix> for SquareMatrix {
    fn from(m: InvertibleMatrix) -> Self {
        m.matrix
    }
}

impl InvertibleMatrix {
    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let id = SquareMatrix::identity(ring, n);
        InvertibleMatrix {
            inverse: id.clone(),
            matrix: id,
            det: BigInt::one(),
        }
    }

    /// Assembles cached data the caller already knows to be consistent.
    pub(crate) fn from_parts(matrix: SquareMatrix, det: BigInt, inverse: SquareMatrix) -> Self {
        debug_assert!((&matrix * &inverse).is_identity());
        InvertibleMatrix {
            matrix,
            det,
            inverse,
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn inverse(&self) -> &SquareMatrix {
        &self.inverse
    }

    pub fn ring(&self) -> RingDescriptor {
        self.matrix.ring
    }

    pub fn n(&self) -> usize {
        self.matrix.n
    }

    /// The inverse as an [`InvertibleMatrix`].
    pub fn inverted(&self) -> InvertibleMatrix {
        let ring = self.ring();
        let det = ring
            .inverse(&self.det)
            .expect("cached determinant is a unit");
        InvertibleMatrix {
            matrix: self.inverse.clone(),
            det,
            inverse: self.matrix.clone(),
        }
    }

    pub fn try_mul(&self, other: &InvertibleMatrix) -> Result<InvertibleMatrix> {
        let matrix = self.matrix.try_mul(&other.matrix)?;
        let inverse = other.inverse.try_mul(&self.inverse)?;
        let det = self.ring().mul(&self.det, &other.det);
        Ok(InvertibleMatrix {
            matrix,
            det,
            inverse,
        })
    }

    /// `c * self * c^-1`.
    pub fn conjugated_by(&self, c: &InvertibleMatrix) -> Result<InvertibleMatrix> {
        c.try_mul(self)?.try_mul(&c.inverted())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl Mul for &InvertibleMatrix {
    type Output = InvertibleMatrix;

    fn mul(self, rhs: &InvertibleMatrix) -> InvertibleMatrix {
        self.try_mul(rhs).expect("incompatible matrix product")
    }
}

impl fmt::Display for InvertibleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// `[x, y] = x y x^-1 y^-1`.
pub fn commutator(x: &InvertibleMatrix, y: &InvertibleMatrix) -> Result<InvertibleMatrix> {
    x.try_mul(y)?.try_mul(&x.inverted())?.try_mul(&y.inverted())
}
