//! Relator-product certificates.
//!
//! A [`Witness`] writes a target matrix in `GL(N, R)` as an ordered product of
//! conjugates of lifted stabilization relators
//! `i^n_1(g) * i^n_(n+1)(g)^-1`, i.e. it certifies that the target lies in the
//! normal closure of the relators and therefore maps to the identity of `M`.

use serde::{Deserialize, Serialize};

use super::{check_level, Exponent};
use crate::elementary::{commutator_decomposition, ElementaryMatrix};
use crate::error::{Error, Result};
use crate::matrix::{commutator, InvertibleMatrix};
use crate::stab::{
    chain_apply, conjugating_permutation, embed_at, stabilize_first, stabilize_last, EmbeddingChain,
};

/// The identification of `i^n_1(g)` with `i^n_(n+1)(g)` at level `n+1`.
///
/// Only `g` is stored; both sides are recomputed from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelatorRepr", into = "RelatorRepr")]
pub struct Relator {
    g: InvertibleMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelatorRepr {
    level: usize,
    g: InvertibleMatrix,
}

impl TryFrom<RelatorRepr> for Relator {
    type Error = Error;

    fn try_from(repr: RelatorRepr) -> Result<Self> {
        if repr.level != repr.g.n() {
            return Err(Error::Malformed(format!(
                "relator level {} does not match matrix size {}",
                repr.level,
                repr.g.n()
            )));
        }
        Relator::new(repr.g)
    }
}

impl From<Relator> for RelatorRepr {
    fn from(r: Relator) -> Self {
        RelatorRepr {
            level: r.g.n(),
            g: r.g,
        }
    }
}

impl Relator {
    pub fn new(g: InvertibleMatrix) -> Result<Self> {
        check_level(g.n())?;
        Ok(Relator { g })
    }

    pub fn level(&self) -> usize {
        self.g.n()
    }

    pub fn g(&self) -> &InvertibleMatrix {
        &self.g
    }

    /// `(i^n_1(g), i^n_(n+1)(g))`.
    pub fn sides(&self) -> (InvertibleMatrix, InvertibleMatrix) {
        let n = self.level();
        (
            embed_at(&self.g, 1).expect("j = 1"),
            embed_at(&self.g, n + 1).expect("j = n + 1"),
        )
    }

    /// `i^n_1(g) * i^n_(n+1)(g)^-1`.
    pub fn discrepancy(&self) -> InvertibleMatrix {
        let (a, b) = self.sides();
        &a * &b.inverted()
    }
}

/// `conjugator * lift(relator)^exponent * conjugator^-1`, with the relator
/// lifted to level `lift_to` by the all-Last chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub conjugator: InvertibleMatrix,
    pub relator: Relator,
    pub lift_to: usize,
    #[serde(rename = "exp")]
    pub exponent: Exponent,
}

impl WitnessTerm {
    pub fn lift_chain(&self) -> Result<EmbeddingChain> {
        EmbeddingChain::all_last(self.relator.level() + 1, self.lift_to)
    }

    pub fn value(&self) -> Result<InvertibleMatrix> {
        let lifted = chain_apply(&self.relator.discrepancy(), &self.lift_chain()?)?;
        let powered = match self.exponent {
            Exponent::Plus => lifted,
            Exponent::Minus => lifted.inverted(),
        };
        powered.conjugated_by(&self.conjugator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub target: InvertibleMatrix,
    pub terms: Vec<WitnessTerm>,
}

impl Witness {
    pub fn empty(target: InvertibleMatrix) -> Self {
        Witness {
            target,
            terms: Vec::new(),
        }
    }

    pub fn level(&self) -> usize {
        self.target.n()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Certificate for `target^-1`: terms reversed with flipped exponents.
    pub fn inverse(&self) -> Witness {
        Witness {
            target: self.target.inverted(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|t| WitnessTerm {
                    exponent: t.exponent.flipped(),
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Certificate for `c * target * c^-1`.
    pub fn conjugated_by(&self, c: &InvertibleMatrix) -> Result<Witness> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(WitnessTerm {
                    conjugator: c.try_mul(&t.conjugator)?,
                    ..t.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Witness {
            target: self.target.conjugated_by(c)?,
            terms,
        })
    }

    /// Certificate for `self.target * other.target`.
    pub fn then(mut self, other: Witness) -> Result<Witness> {
        self.target = self.target.try_mul(&other.target)?;
        self.terms.extend(other.terms);
        Ok(self)
    }

    /// Replaces the target by an equal matrix computed another way.
    fn retarget(mut self, target: InvertibleMatrix) -> Result<Witness> {
        if target != self.target {
            return Err(Error::Malformed(
                "retargeted witness changes the certified matrix".into(),
            ));
        }
        self.target = target;
        Ok(self)
    }

    /// Product of the term values, computed through the construction-side helpers.
    pub fn product(&self) -> Result<InvertibleMatrix> {
        let mut acc = InvertibleMatrix::identity(self.target.ring(), self.level());
        for t in &self.terms {
            acc = acc.try_mul(&t.value()?)?;
        }
        Ok(acc)
    }
}

/// Certificate for `F(Y) * L(Y)^-1` at level `2n`, where `F` and `L` are the
/// all-First and all-Last chains from `n`.
///
/// With `c_k` the chain taking `k` First steps and then Last steps, the target
/// telescopes as `prod_(k = n..1) c_k(Y) c_(k-1)(Y)^-1`, and each factor is the
/// all-Last lift of the relator for `g = F_(n+k-1 <- n)(Y)`.
pub fn chain_discrepancy_witness(y: &InvertibleMatrix) -> Result<Witness> {
    let n = y.n();
    check_level(n)?;
    let top = 2 * n;
    let ring = y.ring();
    let identity = InvertibleMatrix::identity(ring, top);
    let mut terms = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let g = stabilize_first(y, n + k - 1)?;
        terms.push(WitnessTerm {
            conjugator: identity.clone(),
            relator: Relator::new(g)?,
            lift_to: top,
            exponent: Exponent::Plus,
        });
    }
    let target = &stabilize_first(y, top)? * &stabilize_last(y, top)?.inverted();
    Ok(Witness { target, terms })
}

/// Certificate for `[L(X), L(Y)]` at level `2n`.
///
/// With `W` the chain discrepancy certificate of `Y`, `L(X)` commutes with
/// `F(Y)`, so the commutator equals `L(X) W^-1 L(X)^-1 * W`.
pub fn commutation_witness(x: &InvertibleMatrix, y: &InvertibleMatrix) -> Result<Witness> {
    x.ring().ensure_same(&y.ring())?;
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(x.n(), y.n()));
    }
    let n = x.n();
    check_level(n)?;
    let lx = stabilize_last(x, 2 * n)?;
    let ly = stabilize_last(y, 2 * n)?;
    let w = chain_discrepancy_witness(y)?;
    w.inverse()
        .conjugated_by(&lx)?
        .then(w)?
        .retarget(commutator(&lx, &ly)?)
}

/// Certificate for `L(e)` at level `2n`, from `e = [a, b]`.
pub fn elementary_witness(e: &ElementaryMatrix) -> Result<Witness> {
    check_level(e.n())?;
    let (a, b) = commutator_decomposition(e)?;
    let w = commutation_witness(&a.to_invertible(), &b.to_invertible())?;
    let target = stabilize_last(&e.to_invertible(), 2 * e.n())?;
    w.retarget(target)
}

/// Certificate for `L(i^n_j(X)) * L(i^n_(n+1)(X))^-1` at level `2(n+1)`.
///
/// `i^n_j(X) = P^-1 Z P` with `Z = i^n_(n+1)(X)`, so the target is the
/// commutator `[L(P^-1), L(Z)]`.
pub fn general_embedding_witness(x: &InvertibleMatrix, j: usize) -> Result<Witness> {
    let n = x.n();
    check_level(n)?;
    let top = 2 * (n + 1);
    let p = conjugating_permutation(x.ring(), n, j)?;
    let z = embed_at(x, n + 1)?;
    let target = &stabilize_last(&embed_at(x, j)?, top)? * &stabilize_last(&z, top)?.inverted();
    if p.is_identity() {
        return Witness::empty(InvertibleMatrix::identity(x.ring(), top)).retarget(target);
    }
    commutation_witness(&p.inverted(), &z)?.retarget(target)
}
