//! `K1(R)` for rings where it is the unit group, via the determinant.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::InvertibleMatrix;
use crate::rings::{integer_units, unit_group, RingDescriptor};

/// The class `[X]` of an invertible matrix, represented by `det X` in `R^x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr", into = "ClassRepr")]
pub struct K1Class {
    ring: RingDescriptor,
    unit: BigInt,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRepr {
    ring: RingDescriptor,
    unit: String,
}

impl TryFrom<ClassRepr> for K1Class {
    type Error = Error;

    fn try_from(repr: ClassRepr) -> Result<Self> {
        let unit = BigInt::from_str(&repr.unit)
            .ok()
            .filter(|v| repr.ring.is_canonical(v) && v.to_string() == repr.unit)
            .ok_or_else(|| Error::Malformed(format!("bad unit {:?}", repr.unit)))?;
        K1Class::new(repr.ring, unit)
    }
}

impl From<K1Class> for ClassRepr {
    fn from(c: K1Class) -> Self {
        ClassRepr {
            ring: c.ring,
            unit: c.unit.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K1Op {
    Mul,
    Inv,
}

impl K1Class {
    pub fn new(ring: RingDescriptor, unit: BigInt) -> Result<Self> {
        ring.require_sk1_trivial()?;
        let unit = ring.reduce(&unit);
        if !ring.is_unit(&unit) {
            return Err(Error::Malformed(format!("{unit} is not a unit of {ring}")));
        }
        Ok(K1Class { ring, unit })
    }

    pub fn one(ring: RingDescriptor) -> Result<Self> {
        K1Class::new(ring, ring.one())
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.unit)
    }

    pub fn mul(&self, other: &K1Class) -> Result<K1Class> {
        self.ring.ensure_same(&other.ring)?;
        Ok(K1Class {
            ring: self.ring,
            unit: self.ring.mul(&self.unit, &other.unit),
        })
    }

    pub fn inv(&self) -> K1Class {
        let unit = self
            .ring
            .inverse(&self.unit)
            .expect("class representatives are units");
        K1Class {
            ring: self.ring,
            unit,
        }
    }

    pub fn op(&self, other: &K1Class, op: K1Op) -> Result<K1Class> {
        match op {
            K1Op::Mul => self.mul(other),
            K1Op::Inv => {
                self.ring.ensure_same(&other.ring)?;
                Ok(self.inv())
            }
        }
    }
}

impl fmt::Display for K1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)
    }
}

/// `pi_n`: the class of `X` in `K1(R)`.
pub fn class_of_matrix(x: &InvertibleMatrix) -> Result<K1Class> {
    K1Class::new(x.ring(), x.det().clone())
}

/// All of `K1(R)`: the unit group for `Z/m`, `{1, -1}` for `Z`.
pub fn k1_group(ring: RingDescriptor) -> Result<Vec<K1Class>> {
    ring.require_sk1_trivial()?;
    let units = match ring {
        RingDescriptor::Integers => integer_units(),
        RingDescriptor::Modular(_) => unit_group(ring)?,
    };
    units
        .into_iter()
        .map(|u| K1Class::new(ring, u.into_value()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::{elem, product_of};
    use crate::matrix::{seeded_rng, SquareMatrix};
    use crate::stab::{conjugating_permutation, embed_at};
    use rand::Rng;

    fn zmod(m: u64) -> RingDescriptor {
        RingDescriptor::zmod(m).unwrap()
    }

    #[test]
    fn class_examples() {
        for ring in [RingDescriptor::Integers, zmod(2), zmod(12)] {
            assert!(class_of_matrix(&InvertibleMatrix::identity(ring, 4))
                .unwrap()
                .is_one());
        }
        let d = SquareMatrix::diagonal(zmod(5), &[2.into(), 1.into(), 1.into()]);
        assert_eq!(
            class_of_matrix(&d.try_invert().unwrap()).unwrap().unit(),
            &BigInt::from(2)
        );
    }

    #[test]
    fn elementary_products_have_trivial_class() {
        let r = zmod(6);
        let mut rng = seeded_rng(12);
        for _ in 0..20 {
            let factors: Vec<_> = (0..50)
                .map(|_| {
                    let p = rng.gen_range(1..=3);
                    let q = (p - 1 + rng.gen_range(1..3)) % 3 + 1;
                    elem(r, 3, p, q, rng.gen_range(0..6u64)).unwrap()
                })
                .collect();
            let x = product_of(r, 3, &factors).try_invert().unwrap();
            assert!(class_of_matrix(&x).unwrap().is_one());
        }
    }

    #[test]
    fn group_operations() {
        let r5 = zmod(5);
        let two = K1Class::new(r5, 2.into()).unwrap();
        let three = K1Class::new(r5, 3.into()).unwrap();
        assert!(two.mul(&three).unwrap().is_one());
        let five = K1Class::new(zmod(6), 5.into()).unwrap();
        assert_eq!(five.inv(), five);
        assert!(K1Class::new(zmod(6), 2.into()).is_err());
        assert!(two.mul(&five).is_err());

        let all = k1_group(zmod(12)).unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
            }
        }
    }

    #[test]
    fn group_enumeration() {
        let units = |ring| -> Vec<BigInt> {
            k1_group(ring)
                .unwrap()
                .into_iter()
                .map(|c| c.unit().clone())
                .collect()
        };
        assert_eq!(units(zmod(2)), vec![BigInt::from(1)]);
        assert_eq!(units(zmod(6)), vec![BigInt::from(1), BigInt::from(5)]);
        assert_eq!(
            units(RingDescriptor::Integers),
            vec![BigInt::from(1), BigInt::from(-1)]
        );
    }

    #[test]
    fn embedding_and_conjugation_invariance() {
        let mut rng = seeded_rng(13);
        for m in [4, 5, 6, 9] {
            let r = zmod(m);
            for n in 3..=6 {
                let x = crate::matrix::sample_gl(r, n, &mut rng);
                let c = class_of_matrix(&x).unwrap();
                for j in 1..=n + 1 {
                    let y = embed_at(&x, j).unwrap();
                    assert_eq!(class_of_matrix(&y).unwrap(), c);
                    let p = conjugating_permutation(r, n, j).unwrap();
                    let conj = &(&p.inverted() * &embed_at(&x, n + 1).unwrap()) * &p;
                    assert_eq!(class_of_matrix(&conj).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn class_json() {
        let c = K1Class::new(zmod(6), 5.into()).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"ring":{"kind":"Zmod","m":6},"unit":"5"}"#);
        assert_eq!(serde_json::from_str::<K1Class>(&text).unwrap(), c);
        assert!(
            serde_json::from_str::<K1Class>(r#"{"ring":{"kind":"Zmod","m":6},"unit":"2"}"#)
                .is_err()
        );
    }
}
