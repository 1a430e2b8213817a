//! The colimit `M` of `GL(3) => GL(4) => ...` along first and last embeddings.
//!
//! Elements of `M` are formal words in letters `alpha_n(X)^(+-1)`. For the
//! supported rings `M` is isomorphic to `K1(R)`, so equality of words is
//! decided by comparing their images under `rho`. Independently of that
//! decision procedure, [`witness`] produces explicit certificates that the
//! identities behind the isomorphism hold in `GL(N, R)` modulo the normal
//! closure of the stabilization relators, and [`verify`] checks them.

pub mod coequalizer;
pub mod verify;
pub mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::k1::{class_of_matrix, K1Class};
use crate::matrix::{InvertibleMatrix, SquareMatrix};
use crate::rings::RingDescriptor;

pub use coequalizer::{
    quotient_order, stabilization_relators, truncated_coequalizer, CoequalizerReport,
    ENUMERATION_BUDGET,
};
pub use verify::{verify_witness, Verdict};
pub use witness::{
    chain_discrepancy_witness, commutation_witness, elementary_witness, general_embedding_witness,
    Relator, Witness, WitnessTerm,
};

/// Lowest level of the diagram.
pub const BASE_LEVEL: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Exponent {
    Plus,
    Minus,
}

impl Exponent {
    pub fn flipped(self) -> Exponent {
        match self {
            Exponent::Plus => Exponent::Minus,
            Exponent::Minus => Exponent::Plus,
        }
    }
}

impl TryFrom<i8> for Exponent {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Exponent::Plus),
            -1 => Ok(Exponent::Minus),
            _ => Err(Error::Malformed(format!(
                "exponent must be 1 or -1, got {v}"
            ))),
        }
    }
}

impl From<Exponent> for i8 {
    fn from(e: Exponent) -> i8 {
        match e {
            Exponent::Plus => 1,
            Exponent::Minus => -1,
        }
    }
}

pub(crate) fn check_level(n: usize) -> Result<()> {
    if n < BASE_LEVEL {
        return Err(Error::LevelTooSmall {
            level: n,
            min: BASE_LEVEL,
        });
    }
    Ok(())
}

/// `alpha_n(X)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    matrix: InvertibleMatrix,
    exponent: Exponent,
}

impl Letter {
    pub fn new(matrix: InvertibleMatrix, exponent: Exponent) -> Result<Self> {
        check_level(matrix.n())?;
        Ok(Letter { matrix, exponent })
    }

    pub fn level(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &InvertibleMatrix {
        &self.matrix
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    /// `X^exponent` as a matrix.
    pub fn value(&self) -> InvertibleMatrix {
        match self.exponent {
            Exponent::Plus => self.matrix.clone(),
            Exponent::Minus => self.matrix.inverted(),
        }
    }

    fn inverted(&self) -> Letter {
        Letter {
            matrix: self.matrix.clone(),
            exponent: self.exponent.flipped(),
        }
    }
}

/// A formal product of letters; the empty word is the identity of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitWord {
    ring: RingDescriptor,
    letters: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    Mul,
    Inv,
}

impl ColimitWord {
    pub fn empty(ring: RingDescriptor) -> Self {
        ColimitWord {
            ring,
            letters: Vec::new(),
        }
    }

    /// A word with exactly these letters, no merging.
    pub fn from_letters(ring: RingDescriptor, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            ring.ensure_same(&l.matrix.ring())?;
        }
        Ok(ColimitWord { ring, letters })
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, multiplying it into a same-level last letter and
    /// dropping the result if it is the identity.
    fn push_merging(&mut self, letter: Letter) {
        match self.letters.last() {
            Some(top) if top.level() == letter.level() => {
                let merged = &top.value() * &letter.value();
                self.letters.pop();
                if !merged.is_identity() {
                    self.letters.push(Letter {
                        matrix: merged,
                        exponent: Exponent::Plus,
                    });
                }
            }
            _ => self.letters.push(letter),
        }
    }

    pub fn mul(&self, other: &ColimitWord) -> Result<ColimitWord> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for l in &other.letters {
            out.push_merging(l.clone());
        }
        Ok(out)
    }

    pub fn inv(&self) -> ColimitWord {
        ColimitWord {
            ring: self.ring,
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
        }
    }

    pub fn op(&self, other: &ColimitWord, op: WordOp) -> Result<ColimitWord> {
        match op {
            WordOp::Mul => self.mul(other),
            WordOp::Inv => {
                self.ring.ensure_same(&other.ring)?;
                Ok(self.inv())
            }
        }
    }
}

/// `alpha_n(X)` as a one-letter word.
pub fn alpha(x: &InvertibleMatrix) -> Result<ColimitWord> {
    let ring = x.ring();
    Ok(ColimitWord {
        ring,
        letters: vec![Letter::new(x.clone(), Exponent::Plus)?],
    })
}

/// `rho : M -> K1(R)`, the product of the letters' determinant classes.
pub fn rho(w: &ColimitWord) -> Result<K1Class> {
    let mut acc = K1Class::one(w.ring)?;
    for l in &w.letters {
        let c = class_of_matrix(&l.matrix)?;
        let c = match l.exponent {
            Exponent::Plus => c,
            Exponent::Minus => c.inv(),
        };
        acc = acc.mul(&c)?;
    }
    Ok(acc)
}

/// `lambda : K1(R) -> M`, `[u] -> alpha_3(diag(u, 1, 1))`.
pub fn lambda_map(c: &K1Class) -> Result<ColimitWord> {
    let ring = c.ring();
    ring.require_sk1_trivial()?;
    let d = SquareMatrix::diagonal(ring, &[c.unit().clone(), ring.one(), ring.one()]);
    let d = d.try_invert().expect("diagonal of units");
    alpha(&d)
}

/// Equality in `M`, decided through `rho`; only claimed for rings whose `K1`
/// is represented by determinants.
pub fn equal_in_m(w: &ColimitWord, v: &ColimitWord) -> Result<bool> {
    w.ring.ensure_same(&v.ring)?;
    w.ring.require_sk1_trivial()?;
    Ok(rho(w)? == rho(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::elem;
    use crate::matrix::{sample_gl, seeded_rng};
    use crate::stab::embed_at;

    fn zmod(m: u64) -> RingDescriptor {
        RingDescriptor::zmod(m).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let r = zmod(5);
        let id = alpha(&InvertibleMatrix::identity(r, 3)).unwrap();
        assert_eq!(id.len(), 1);
        assert!(equal_in_m(&id, &ColimitWord::empty(r)).unwrap());

        let mut rng = seeded_rng(20);
        let x = sample_gl(r, 3, &mut rng);
        let w = alpha(&x)
            .unwrap()
            .mul(&alpha(&x.inverted()).unwrap())
            .unwrap();
        assert!(w.is_empty());
        let stabilized = alpha(&embed_at(&x, 4).unwrap()).unwrap();
        assert!(equal_in_m(&stabilized, &alpha(&x).unwrap()).unwrap());

        let small = InvertibleMatrix::identity(r, 2);
        assert_eq!(
            alpha(&small).unwrap_err(),
            Error::LevelTooSmall { level: 2, min: 3 }
        );
    }

    #[test]
    fn merging_rules() {
        let r = zmod(7);
        let mut rng = seeded_rng(21);
        let a = alpha(&sample_gl(r, 3, &mut rng)).unwrap();
        let b = alpha(&sample_gl(r, 4, &mut rng)).unwrap();
        let c = alpha(&sample_gl(r, 3, &mut rng)).unwrap();
        let w = a.mul(&b).unwrap().mul(&c).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.mul(&w.inv()).unwrap().is_empty());
        let ac = a.mul(&c).unwrap();
        assert_eq!(ac.len(), 1);
        assert_eq!(
            ac.letters()[0].value(),
            &a.letters()[0].value() * &c.letters()[0].value()
        );
        assert!(a
            .mul(&alpha(&InvertibleMatrix::identity(zmod(5), 3)).unwrap())
            .is_err());
    }

    #[test]
    fn rho_examples() {
        let r = zmod(5);
        let d = SquareMatrix::diagonal(r, &[2.into(), 1.into(), 1.into()])
            .try_invert()
            .unwrap();
        let c = rho(&alpha(&d).unwrap()).unwrap();
        assert_eq!(c.unit(), &num_bigint::BigInt::from(2));
        assert!(rho(&ColimitWord::empty(r)).unwrap().is_one());
        assert!(!equal_in_m(&alpha(&d).unwrap(), &ColimitWord::empty(r)).unwrap());

        let mut rng = seeded_rng(22);
        for _ in 0..20 {
            let x = alpha(&sample_gl(zmod(9), 3, &mut rng)).unwrap();
            let y = alpha(&sample_gl(zmod(9), 5, &mut rng)).unwrap();
            let xy = rho(&x.mul(&y).unwrap()).unwrap();
            assert_eq!(xy, rho(&y.mul(&x).unwrap()).unwrap());
            assert!(equal_in_m(&x.mul(&y).unwrap(), &y.mul(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn elementary_letters_are_trivial() {
        let r = zmod(6);
        let e = elem(r, 3, 1, 3, 4).unwrap().to_invertible();
        assert!(equal_in_m(&alpha(&e).unwrap(), &ColimitWord::empty(r)).unwrap());
    }

    #[test]
    fn lambda_rho_round_trips() {
        let r = zmod(12);
        for c in crate::k1::k1_group(r).unwrap() {
            assert_eq!(rho(&lambda_map(&c).unwrap()).unwrap(), c);
        }
        assert!(equal_in_m(
            &lambda_map(&K1Class::one(r).unwrap()).unwrap(),
            &ColimitWord::empty(r)
        )
        .unwrap());

        let r5 = zmod(5);
        let mut rng = seeded_rng(23);
        for _ in 0..20 {
            let w = alpha(&sample_gl(r5, 3, &mut rng)).unwrap();
            assert!(equal_in_m(&lambda_map(&rho(&w).unwrap()).unwrap(), &w).unwrap());
        }
    }

    #[test]
    fn exponent_json() {
        assert_eq!(serde_json::to_string(&Exponent::Minus).unwrap(), "-1");
        assert_eq!(
            serde_json::from_str::<Exponent>("1").unwrap(),
            Exponent::Plus
        );
        assert!(serde_json::from_str::<Exponent>("2").is_err());
    }
}
