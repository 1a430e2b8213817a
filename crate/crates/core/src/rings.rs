//! Coefficient rings: the integers and the residue rings `Z/m`.
//!
//! Element values are plain [`BigInt`]s interpreted relative to a
//! [`RingDescriptor`]. Residues are always kept in the canonical range
//! `[0, m)`, so structural equality of values is ring equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub enum RingDescriptor {
    Integers,
    Modular(Modulus),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RingRepr {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zmod")]
    Modular { m: u64 },
}

impl TryFrom<RingRepr> for RingDescriptor {
    type Error = Error;

    fn try_from(repr: RingRepr) -> Result<Self> {
        match repr {
            RingRepr::Integers => Ok(RingDescriptor::Integers),
            RingRepr::Modular { m } => RingDescriptor::zmod(m),
        }
    }
}

impl From<RingDescriptor> for RingRepr {
    fn from(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::Integers => RingRepr::Integers,
            RingDescriptor::Modular(m) => RingRepr::Modular { m: m.get() },
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Modular(m) => write!(f, "Z/{}", m.get()),
        }
    }
}

/// Parses the command-line grammar `z` or `zmod:<m>`.
impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") {
            return Ok(RingDescriptor::Integers);
        }
        match s.strip_prefix("zmod:") {
            Some(m) => {
                let m = m
                    .parse::<u64>()
                    .map_err(|_| Error::Malformed(format!("bad modulus in ring flag {s:?}")))?;
                RingDescriptor::zmod(m)
            }
            None => Err(Error::Malformed(format!(
                "ring flag {s:?} is neither `z` nor `zmod:<m>`"
            ))),
        }
    }
}

impl RingDescriptor {
    pub fn zmod(m: u64) -> Result<Self> {
        Ok(RingDescriptor::Modular(Modulus::new(m)?))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingDescriptor::Integers => None,
            RingDescriptor::Modular(m) => Some(m.get()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingDescriptor::Modular(_))
    }

    /// Whether `K1(R)` is computed by the determinant, i.e. `SK1(R) = 1`.
    ///
    /// Holds for every ring this crate can describe (fields, `Z`, `Z/m`);
    /// the K1 operations still consult it so a future ring kind has to opt in.
    pub fn is_sk1_trivial(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Modular(_) => true,
        }
    }

    pub(crate) fn require_sk1_trivial(&self) -> Result<()> {
        if self.is_sk1_trivial() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "K1 of {self} is not represented by determinants"
            )))
        }
    }

    /// Whether the ring is a field or a local ring `Z/p^k`.
    pub fn is_local(&self) -> bool {
        match self {
            RingDescriptor::Integers => false,
            RingDescriptor::Modular(m) => factorize(m.get()).len() == 1,
        }
    }

    pub fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    pub fn one(&self) -> BigInt {
        BigInt::one()
    }

    pub fn reduce(&self, value: &BigInt) -> BigInt {
        match self {
            RingDescriptor::Integers => value.clone(),
            RingDescriptor::Modular(m) => value.mod_floor(&BigInt::from(m.get())),
        }
    }

    /// Whether `value` is a canonical representative for this ring.
    pub fn is_canonical(&self, value: &BigInt) -> bool {
        match self {
            RingDescriptor::Integers => true,
            RingDescriptor::Modular(m) => !value.is_negative() && *value < BigInt::from(m.get()),
        }
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }

    pub fn pow(&self, a: &BigInt, mut exp: u64) -> BigInt {
        let mut base = self.reduce(a);
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// The multiplicative inverse of `a`, or `None` when `a` is not a unit.
    pub fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        match self {
            RingDescriptor::Integers => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            RingDescriptor::Modular(m) => {
                let m = BigInt::from(m.get());
                let a = a.mod_floor(&m);
                let egcd = a.extended_gcd(&m);
                if egcd.gcd.is_one() {
                    Some(egcd.x.mod_floor(&m))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        self.inverse(a).is_some()
    }

    pub fn is_one(&self, a: &BigInt) -> bool {
        self.reduce(a) == self.one()
    }

    pub fn element(&self, value: impl Into<BigInt>) -> RingElement {
        RingElement::new(*self, value.into())
    }

    pub(crate) fn ensure_same(&self, other: &RingDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(*self, *other))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A value together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingDescriptor,
    value: BigInt,
}

impl RingElement {
    pub fn new(ring: RingDescriptor, value: BigInt) -> Self {
        let value = ring.reduce(&value);
        RingElement { ring, value }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    /// `a op b`; for [`ArithOp::Neg`] the second operand only has to share the ring.
    pub fn arith(&self, other: &RingElement, op: ArithOp) -> Result<RingElement> {
        self.ring.ensure_same(&other.ring)?;
        let r = &self.ring;
        let value = match op {
            ArithOp::Add => r.add(&self.value, &other.value),
            ArithOp::Sub => r.sub(&self.value, &other.value),
            ArithOp::Mul => r.mul(&self.value, &other.value),
            ArithOp::Neg => r.neg(&self.value),
        };
        Ok(RingElement {
            ring: self.ring,
            value,
        })
    }

    pub fn unit_inverse(&self) -> Option<RingElement> {
        self.ring.inverse(&self.value).map(|value| RingElement {
            ring: self.ring,
            value,
        })
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Prime factorization of `m` by trial division, as `(p, k)` pairs in increasing `p`.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtFactor {
    pub prime: u64,
    pub exponent: u32,
    /// Idempotent of `Z/m` that is `1` modulo `prime^exponent` and `0` modulo the other factors.
    pub idempotent: BigInt,
}

impl CrtFactor {
    pub fn prime_power(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    pub fn ring(&self) -> RingDescriptor {
        RingDescriptor::Modular(Modulus(self.prime_power()))
    }
}

/// `Z/m` split into its local factors `Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtDecomposition {
    modulus: u64,
    factors: Vec<CrtFactor>,
}

impl CrtDecomposition {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ring(&self) -> RingDescriptor {
        RingDescriptor::Modular(Modulus(self.modulus))
    }

    pub fn factors(&self) -> &[CrtFactor] {
        &self.factors
    }

    /// The images of `x` in each local factor.
    pub fn project(&self, x: &BigInt) -> Vec<BigInt> {
        self.factors
            .iter()
            .map(|f| x.mod_floor(&BigInt::from(f.prime_power())))
            .collect()
    }

    /// `sum_i e_i * lift(x_i)` in `Z/m`.
    pub fn combine(&self, components: &[BigInt]) -> Result<BigInt> {
        if components.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(
                components.len(),
                self.factors.len(),
            ));
        }
        let ring = self.ring();
        Ok(self
            .factors
            .iter()
            .zip(components)
            .fold(BigInt::zero(), |acc, (f, x)| {
                ring.add(&acc, &ring.mul(&f.idempotent, x))
            }))
    }
}

pub fn crt_split(m: u64) -> Result<CrtDecomposition> {
    let ring = RingDescriptor::zmod(m)?;
    let factors = factorize(m)
        .into_iter()
        .map(|(prime, exponent)| {
            let q = prime.pow(exponent);
            let cofactor = BigInt::from(m / q);
            let inv = RingDescriptor::Modular(Modulus(q))
                .inverse(&cofactor)
                .unwrap_or_else(BigInt::zero);
            // q == m leaves Z/1 behind, where the inverse is meaningless; e = 1 then.
            let idempotent = if q == m {
                BigInt::one()
            } else {
                ring.mul(&cofactor, &inv)
            };
            CrtFactor {
                prime,
                exponent,
                idempotent,
            }
        })
        .collect();
    Ok(CrtDecomposition {
        modulus: m,
        factors,
    })
}

/// All units of a finite ring, in increasing order.
pub fn unit_group(ring: RingDescriptor) -> Result<Vec<RingElement>> {
    match ring {
        RingDescriptor::Integers => Err(Error::Unsupported(
            "the unit group of Z is infinite-ring special case {-1, 1}; use integer_units".into(),
        )),
        RingDescriptor::Modular(m) => Ok((1..m.get())
            .map(|v| ring.element(v))
            .filter(|e| e.unit_inverse().is_some())
            .collect()),
    }
}

/// The units `{1, -1}` of `Z`.
pub fn integer_units() -> Vec<RingElement> {
    let z = RingDescriptor::Integers;
    vec![z.element(1), z.element(-1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zmod(m: u64) -> RingDescriptor {
        RingDescriptor::zmod(m).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = zmod(5);
        assert_eq!(
            r.element(3).arith(&r.element(4), ArithOp::Mul).unwrap(),
            r.element(2)
        );

        let z = RingDescriptor::Integers;
        let big = z.element(BigInt::from(1u128 << 64));
        let sum = big.arith(&z.element(1), ArithOp::Add).unwrap();
        assert_eq!(sum.to_string(), "18446744073709551617");

        let r6 = zmod(6);
        assert_eq!(
            r6.element(0).arith(&r6.element(0), ArithOp::Add).unwrap(),
            r6.element(0)
        );
        assert_eq!(
            r6.element(1).arith(&r6.element(0), ArithOp::Neg).unwrap(),
            r6.element(5)
        );
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let err = zmod(5)
            .element(1)
            .arith(&zmod(6).element(1), ArithOp::Add)
            .unwrap_err();
        assert_eq!(err, Error::RingMismatch(zmod(5), zmod(6)));
    }

    #[test]
    fn modulus_below_two_rejected() {
        assert_eq!(RingDescriptor::zmod(1), Err(Error::InvalidModulus(1)));
        assert_eq!(RingDescriptor::zmod(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn unit_inverse_examples() {
        assert_eq!(zmod(5).element(2).unit_inverse(), Some(zmod(5).element(3)));
        let z = RingDescriptor::Integers;
        assert_eq!(z.element(-1).unit_inverse(), Some(z.element(-1)));
        assert_eq!(z.element(2).unit_inverse(), None);
        assert_eq!(zmod(6).element(2).unit_inverse(), None);
    }

    #[test]
    fn crt_examples() {
        let d = crt_split(6).unwrap();
        let got: Vec<_> = d.factors().iter().map(|f| (f.prime, f.exponent)).collect();
        assert_eq!(got, vec![(2, 1), (3, 1)]);
        let e: Vec<_> = d.factors().iter().map(|f| f.idempotent.clone()).collect();
        assert_eq!(e, vec![BigInt::from(3), BigInt::from(4)]);

        let d = crt_split(4).unwrap();
        assert_eq!(d.factors().len(), 1);
        assert_eq!((d.factors()[0].prime, d.factors()[0].exponent), (2, 2));
        assert_eq!(d.factors()[0].idempotent, BigInt::one());

        let d = crt_split(12).unwrap();
        let e: Vec<_> = d.factors().iter().map(|f| f.idempotent.clone()).collect();
        assert_eq!(e, vec![BigInt::from(9), BigInt::from(4)]);
    }

    fn check_idempotents(m: u64) {
        let d = crt_split(m).unwrap();
        let r = zmod(m);
        let product: u64 = d.factors().iter().map(|f| f.prime_power()).product();
        assert_eq!(product, m);
        let mut sum = BigInt::zero();
        for (i, fi) in d.factors().iter().enumerate() {
            assert_eq!(r.mul(&fi.idempotent, &fi.idempotent), fi.idempotent);
            for fj in &d.factors()[i + 1..] {
                assert!(r.mul(&fi.idempotent, &fj.idempotent).is_zero());
            }
            sum = r.add(&sum, &fi.idempotent);
        }
        assert!(r.is_one(&sum));
    }

    #[test]
    fn idempotent_identities_small_moduli() {
        for m in 2..=300 {
            check_idempotents(m);
        }
    }

    #[test]
    fn unit_group_examples() {
        let vals = |m| -> Vec<BigInt> {
            unit_group(zmod(m))
                .unwrap()
                .into_iter()
                .map(RingElement::into_value)
                .collect()
        };
        assert_eq!(vals(2), vec![BigInt::from(1)]);
        assert_eq!(vals(6), vec![BigInt::from(1), BigInt::from(5)]);
        assert_eq!(vals(5), (1..5).map(BigInt::from).collect::<Vec<_>>());
        assert!(matches!(
            unit_group(RingDescriptor::Integers),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn unit_count_is_totient() {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for m in 2..=1000u64 {
            let direct = (1..m).filter(|&v| gcd(v, m) == 1).count();
            assert_eq!(unit_group(zmod(m)).unwrap().len(), direct, "m = {m}");
        }
    }

    #[test]
    fn ring_flag_grammar() {
        assert_eq!(
            "z".parse::<RingDescriptor>().unwrap(),
            RingDescriptor::Integers
        );
        assert_eq!("zmod:6".parse::<RingDescriptor>().unwrap(), zmod(6));
        assert!("zmod:1".parse::<RingDescriptor>().is_err());
        assert!("q".parse::<RingDescriptor>().is_err());
    }

    #[test]
    fn descriptor_json() {
        assert_eq!(
            serde_json::to_string(&RingDescriptor::Integers).unwrap(),
            r#"{"kind":"Z"}"#
        );
        assert_eq!(
            serde_json::to_string(&zmod(6)).unwrap(),
            r#"{"kind":"Zmod","m":6}"#
        );
        let back: RingDescriptor = serde_json::from_str(r#"{"kind":"Zmod","m":6}"#).unwrap();
        assert_eq!(back, zmod(6));
        assert!(serde_json::from_str::<RingDescriptor>(r#"{"kind":"Zmod","m":1}"#).is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(m in 2u64..500, a in 0u64..10_000) {
            let r = zmod(m);
            let x = r.element(a);
            if let Some(y) = x.unit_inverse() {
                prop_assert!(x.arith(&y, ArithOp::Mul).unwrap().is_one());
                prop_assert!(y.arith(&x, ArithOp::Mul).unwrap().is_one());
            }
        }

        #[test]
        fn crt_round_trip(m in 2u64..2000, x in 0u64..1_000_000) {
            let d = crt_split(m).unwrap();
            let x = BigInt::from(x % m);
            prop_assert_eq!(d.combine(&d.project(&x)).unwrap(), x);
        }
    }
}
