//! Standalone witness checker.
//!
//! Everything is recomputed from the raw matrices in the witness using only
//! exact matrix arithmetic: relator sides are rebuilt from `g` by inserting
//! unit rows and columns, lifts by padding with an identity block, and every
//! inverse by a fresh adjugate computation. Nothing here goes through the
//! witness construction code or the cached inverses it carries.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::witness::Witness;
use super::{Exponent, BASE_LEVEL};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// The product differs from the target. `failing_term` is the first term
    /// whose exponent, if flipped, would make the product match.
    Failed {
        failing_term: Option<usize>,
    },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// `size x size` matrix holding `m` at rows/columns `offset..offset + m.n()`
/// and the identity elsewhere.
fn place_block(m: &SquareMatrix, size: usize, offset: usize) -> SquareMatrix {
    let ring = m.ring();
    let k = m.n();
    let mut entries = vec![BigInt::zero(); size * size];
    for i in 0..size {
        let inside = i >= offset && i < offset + k;
        if !inside {
            entries[i * size + i] = BigInt::one();
        }
    }
    for (a, row) in m.rows().enumerate() {
        for (b, v) in row.iter().enumerate() {
            entries[(offset + a) * size + offset + b] = v.clone();
        }
    }
    SquareMatrix::new(ring, size, entries).expect("square")
}

fn invert(m: &SquareMatrix, what: &str, index: usize) -> Result<SquareMatrix> {
    m.try_invert()
        .map(|inv| inv.inverse().clone())
        .ok_or_else(|| Error::Malformed(format!("term {index}: {what} is not invertible")))
}

/// `C * pad(i_1(g) * i_last(g)^-1)^exp * C^-1` and the same with the exponent flipped.
fn term_values(w: &Witness, index: usize) -> Result<(SquareMatrix, SquareMatrix)> {
    let term = &w.terms[index];
    let ring = w.target.ring();
    let size = w.target.n();
    let c = term.conjugator.matrix();
    let g = term.relator.g().matrix();
    let level = g.n();
    for r in [c.ring(), g.ring()] {
        if r != ring {
            return Err(Error::Malformed(format!(
                "term {index}: ring {r} differs from target ring {ring}"
            )));
        }
    }
    if c.n() != size {
        return Err(Error::Malformed(format!(
            "term {index}: conjugator has size {} but the target has size {size}",
            c.n()
        )));
    }
    if level < BASE_LEVEL {
        return Err(Error::Malformed(format!(
            "term {index}: relator level {level} below {BASE_LEVEL}"
        )));
    }
    if term.lift_to != size || level + 1 > size {
        return Err(Error::Malformed(format!(
            "term {index}: relator at level {level} cannot be lifted to {} for a target of size {size}",
            term.lift_to
        )));
    }
    let g_inv = invert(g, "relator matrix", index)?;
    let c_inv = invert(c, "conjugator", index)?;

    // i_1(g) sits at offset 1, i_last(g)^-1 at offset 0, both inside level + 1;
    // padding to `size` appends identity, i.e. the all-Last lift.
    let first = place_block(g, size, 1);
    let first_inv = place_block(&g_inv, size, 1);
    let last = place_block(g, size, 0);
    let last_inv = place_block(&g_inv, size, 0);
    let forward = &first * &last_inv;
    let backward = &last * &first_inv;
    let (value, flipped) = match term.exponent {
        Exponent::Plus => (forward, backward),
        Exponent::Minus => (backward, forward),
    };
    let conj = |m: &SquareMatrix| &(c * m) * &c_inv;
    Ok((conj(&value), conj(&flipped)))
}

/// Checks that the ordered product of the witness terms equals its target.
///
/// Structural problems (ring or level mismatches, singular matrices) are
/// errors; a well-formed witness whose product is wrong yields
/// [`Verdict::Failed`].
pub fn verify_witness(w: &Witness) -> Result<Verdict> {
    let ring = w.target.ring();
    let size = w.target.n();
    let target = w.target.matrix();
    let mut values = Vec::with_capacity(w.terms.len());
    for i in 0..w.terms.len() {
        values.push(term_values(w, i)?);
    }
    let identity = SquareMatrix::identity(ring, size);
    let mut prefixes = Vec::with_capacity(values.len() + 1);
    prefixes.push(identity.clone());
    for (v, _) in &values {
        let next = prefixes.last().expect("nonempty") * v;
        prefixes.push(next);
    }
    if prefixes.last() == Some(target) {
        return Ok(Verdict::Verified);
    }

    let mut suffixes = vec![identity; values.len() + 1];
    for i in (0..values.len()).rev() {
        suffixes[i] = &values[i].0 * &suffixes[i + 1];
    }
    let failing_term =
        (0..values.len()).find(|&i| &(&prefixes[i] * &values[i].1) * &suffixes[i + 1] == *target);
    Ok(Verdict::Failed { failing_term })
}
