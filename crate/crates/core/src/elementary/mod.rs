//! Elementary matrices `e_pq(r) = I + r E_pq` and factorizations into them.
//!
//! Row and column indices of elementary matrices are 1-based.

mod factor;
mod whitehead;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{InvertibleMatrix, SquareMatrix};
use crate::rings::RingDescriptor;

pub use factor::{is_in_e, sl_factor};
pub use whitehead::{whitehead_factor, whitehead_target};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryMatrix {
    ring: RingDescriptor,
    n: usize,
    p: usize,
    q: usize,
    r: BigInt,
}

impl ElementaryMatrix {
    pub fn new(
        ring: RingDescriptor,
        n: usize,
        p: usize,
        q: usize,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::LevelTooSmall { level: n, min: 2 });
        }
        for idx in [p, q] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, max: n });
            }
        }
        if p == q {
            return Err(Error::Malformed(format!(
                "elementary matrix needs p != q, got p = q = {p}"
            )));
        }
        let r = ring.reduce(&r.into());
        Ok(ElementaryMatrix { ring, n, p, q, r })
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_identity(&self) -> bool {
        self.r.is_zero()
    }

    /// `e_pq(-r)`.
    pub fn inverse(&self) -> ElementaryMatrix {
        ElementaryMatrix {
            r: self.ring.neg(&self.r),
            ..self.clone()
        }
    }

    pub fn to_matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::identity(self.ring, self.n);
        m.set(self.p - 1, self.q - 1, self.r.clone());
        m
    }

    pub fn to_invertible(&self) -> InvertibleMatrix {
        InvertibleMatrix::from_parts(self.to_matrix(), BigInt::one(), self.inverse().to_matrix())
    }

    /// `m <- self * m` (adds `r` times row `q` to row `p`).
    pub fn apply_left(&self, m: &mut SquareMatrix) {
        m.add_row_multiple(self.p - 1, self.q - 1, &self.r);
    }

    /// `m <- m * self` (adds `r` times column `p` to column `q`).
    pub fn apply_right(&self, m: &mut SquareMatrix) {
        m.add_col_multiple(self.q - 1, self.p - 1, &self.r);
    }
}

impl fmt::Display for ElementaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{},{}({})", self.p, self.q, self.r)
    }
}

pub fn elem(
    ring: RingDescriptor,
    n: usize,
    p: usize,
    q: usize,
    r: impl Into<BigInt>,
) -> Result<ElementaryMatrix> {
    ElementaryMatrix::new(ring, n, p, q, r)
}

/// Writes `e_pq(r)` as the commutator `[e_ps(r), e_sq(1)]`, with `s` the
/// smallest index outside `{p, q}`.
pub fn commutator_decomposition(
    e: &ElementaryMatrix,
) -> Result<(ElementaryMatrix, ElementaryMatrix)> {
    if e.n < 3 {
        return Err(Error::Unsupported(format!(
            "no commutator decomposition of elementary matrices at level {}",
            e.n
        )));
    }
    let s = (1..=e.n).find(|s| *s != e.p && *s != e.q).expect("n >= 3");
    let a = ElementaryMatrix::new(e.ring, e.n, e.p, s, e.r.clone())?;
    let b = ElementaryMatrix::new(e.ring, e.n, s, e.q, 1)?;
    Ok((a, b))
}

/// Product of elementary matrices in order, by column operations on the identity.
pub fn product_of(ring: RingDescriptor, n: usize, factors: &[ElementaryMatrix]) -> SquareMatrix {
    let mut acc = SquareMatrix::identity(ring, n);
    for f in factors {
        f.apply_right(&mut acc);
    }
    acc
}

/// An ordered list of elementary matrices whose product is `target`.
///
/// Construction checks the product exactly, so a value of this type is a
/// verified certificate of membership in `E(n, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FactorizationRepr", into = "FactorizationRepr")]
pub struct ElementaryFactorization {
    target: InvertibleMatrix,
    factors: Vec<ElementaryMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorizationRepr {
    target: SquareMatrix,
    factors: Vec<FactorRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorRepr {
    p: usize,
    q: usize,
    r: String,
}

impl TryFrom<FactorizationRepr> for ElementaryFactorization {
    type Error = Error;

    fn try_from(repr: FactorizationRepr) -> Result<Self> {
        let ring = repr.target.ring();
        let n = repr.target.n();
        let factors = repr
            .factors
            .into_iter()
            .map(|f| {
                let r = BigInt::from_str(&f.r)
                    .ok()
                    .filter(|v| ring.is_canonical(v) && v.to_string() == f.r)
                    .ok_or_else(|| Error::Malformed(format!("bad factor value {:?}", f.r)))?;
                ElementaryMatrix::new(ring, n, f.p, f.q, r)
            })
            .collect::<Result<Vec<_>>>()?;
        let target = InvertibleMatrix::try_from(repr.target)?;
        ElementaryFactorization::new(target, factors)
    }
}

impl From<ElementaryFactorization> for FactorizationRepr {
    fn from(f: ElementaryFactorization) -> Self {
        FactorizationRepr {
            target: f.target.into_matrix(),
            factors: f
                .factors
                .into_iter()
                .map(|e| FactorRepr {
                    p: e.p,
                    q: e.q,
                    r: e.r.to_string(),
                })
                .collect(),
        }
    }
}

impl ElementaryFactorization {
    pub fn new(target: InvertibleMatrix, factors: Vec<ElementaryMatrix>) -> Result<Self> {
        let (ring, n) = (target.ring(), target.n());
        for f in &factors {
            ring.ensure_same(&f.ring)?;
            if f.n != n {
                return Err(Error::DimensionMismatch(f.n, n));
            }
        }
        if product_of(ring, n, &factors) != *target.matrix() {
            return Err(Error::Malformed(
                "elementary factors do not multiply to the target".into(),
            ));
        }
        Ok(ElementaryFactorization { target, factors })
    }

    pub fn target(&self) -> &InvertibleMatrix {
        &self.target
    }

    pub fn factors(&self) -> &[ElementaryMatrix] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Recomputes the product of the factors.
    pub fn product(&self) -> SquareMatrix {
        product_of(self.target.ring(), self.target.n(), &self.factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;

    #[test]
    fn elem_examples() {
        let z = RingDescriptor::Integers;
        assert!(elem(z, 3, 1, 2, 0).unwrap().to_matrix().is_identity());
        let a = elem(z, 3, 1, 2, 5).unwrap().to_matrix();
        let b = elem(z, 3, 1, 2, -5).unwrap().to_matrix();
        assert!((&a * &b).is_identity());
        let r6 = RingDescriptor::zmod(6).unwrap();
        assert!(elem(r6, 3, 2, 3, 4)
            .unwrap()
            .to_matrix()
            .determinant()
            .is_one());
    }

    #[test]
    fn elem_rejects_bad_indices() {
        let z = RingDescriptor::Integers;
        assert!(elem(z, 3, 2, 2, 1).is_err());
        assert_eq!(
            elem(z, 3, 0, 2, 1).unwrap_err(),
            Error::IndexOutOfRange { index: 0, max: 3 }
        );
        assert_eq!(
            elem(z, 3, 1, 4, 1).unwrap_err(),
            Error::IndexOutOfRange { index: 4, max: 3 }
        );
        assert!(elem(z, 1, 1, 2, 1).is_err());
    }

    #[test]
    fn left_and_right_application_match_products() {
        let r = RingDescriptor::zmod(7).unwrap();
        let e = elem(r, 3, 3, 1, 4).unwrap();
        let x = SquareMatrix::from_rows(r, [[1, 2, 3], [4, 5, 6], [0, 1, 1]]).unwrap();
        let mut left = x.clone();
        e.apply_left(&mut left);
        assert_eq!(left, &e.to_matrix() * &x);
        let mut right = x.clone();
        e.apply_right(&mut right);
        assert_eq!(right, &x * &e.to_matrix());
    }

    #[test]
    fn commutator_decomposition_examples() {
        let r2 = RingDescriptor::zmod(2).unwrap();
        let e = elem(r2, 3, 1, 2, 1).unwrap();
        let (a, b) = commutator_decomposition(&e).unwrap();
        assert_eq!(a, elem(r2, 3, 1, 3, 1).unwrap());
        assert_eq!(b, elem(r2, 3, 3, 2, 1).unwrap());
        let c = commutator(&a.to_invertible(), &b.to_invertible()).unwrap();
        assert_eq!(c.matrix(), &e.to_matrix());

        let z = RingDescriptor::Integers;
        let e = elem(z, 4, 2, 4, 7).unwrap();
        let (a, b) = commutator_decomposition(&e).unwrap();
        assert_eq!(a, elem(z, 4, 2, 1, 7).unwrap());
        assert_eq!(b, elem(z, 4, 1, 4, 1).unwrap());
        let c = commutator(&a.to_invertible(), &b.to_invertible()).unwrap();
        assert_eq!(c.matrix(), &e.to_matrix());

        let e = elem(z, 3, 2, 1, 0).unwrap();
        let (a, b) = commutator_decomposition(&e).unwrap();
        assert!(commutator(&a.to_invertible(), &b.to_invertible())
            .unwrap()
            .is_identity());

        let e = elem(z, 2, 1, 2, 1).unwrap();
        assert!(matches!(
            commutator_decomposition(&e),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn factorization_rejects_wrong_product() {
        let r = RingDescriptor::zmod(5).unwrap();
        let target = InvertibleMatrix::identity(r, 3);
        let bad = vec![elem(r, 3, 1, 2, 1).unwrap()];
        assert!(ElementaryFactorization::new(target.clone(), bad).is_err());
        assert!(ElementaryFactorization::new(target, vec![])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn factorization_json() {
        let r = RingDescriptor::zmod(5).unwrap();
        let e = elem(r, 2, 1, 2, 3).unwrap();
        let f = ElementaryFactorization::new(e.to_invertible(), vec![e]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"target":{"ring":{"kind":"Zmod","m":5},"n":2,"rows":[["1","3"],["0","1"]]},"factors":[{"p":1,"q":2,"r":"3"}]}"#
        );
        assert_eq!(
            serde_json::from_str::<ElementaryFactorization>(&text).unwrap(),
            f
        );
        let tampered = text.replace(r#""r":"3""#, r#""r":"2""#);
        assert!(serde_json::from_str::<ElementaryFactorization>(&tampered).is_err());
    }
}
