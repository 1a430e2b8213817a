//! Stabilization embeddings `GL(n, R) -> GL(n+1, R)`.
//!
//! The embedding at position `j` (1-based, `1 <= j <= n+1`) inserts a new
//! row and column `j` equal to the `j`th unit vector. Position `n+1` is the
//! usual `A -> diag(A, 1)`; position `1` is `A -> diag(1, A)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{InvertibleMatrix, SquareMatrix};
use crate::rings::RingDescriptor;

/// Where a single embedding step inserts its unit row and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    First,
    Last,
    /// Explicit 1-based position.
    At(usize),
}

impl Position {
    /// The 1-based insertion index when embedding from level `n`.
    pub fn index(self, n: usize) -> usize {
        match self {
            Position::First => 1,
            Position::Last => n + 1,
            Position::At(j) => j,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::First => write!(f, "F"),
            Position::Last => write!(f, "L"),
            Position::At(j) => write!(f, "A{j}"),
        }
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(Position::First),
            "L" => Ok(Position::Last),
            _ => s
                .strip_prefix('A')
                .and_then(|j| j.parse::<usize>().ok())
                .filter(|j| *j >= 1 && s == format!("A{j}"))
                .map(Position::At)
                .ok_or_else(|| Error::Malformed(format!("unknown embedding step {s:?}"))),
        }
    }
}

impl Serialize for Position {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_position(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: n + 1,
        });
    }
    Ok(())
}

/// A composite of single-step embeddings starting at level `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChainRepr", into = "ChainRepr")]
pub struct EmbeddingChain {
    start: usize,
    steps: Vec<Position>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainRepr {
    start: usize,
    steps: Vec<Position>,
}

impl TryFrom<ChainRepr> for EmbeddingChain {
    type Error = Error;

    fn try_from(repr: ChainRepr) -> Result<Self> {
        EmbeddingChain::new(repr.start, repr.steps)
    }
}

impl From<EmbeddingChain> for ChainRepr {
    fn from(c: EmbeddingChain) -> Self {
        ChainRepr {
            start: c.start,
            steps: c.steps,
        }
    }
}

impl EmbeddingChain {
    pub fn new(start: usize, steps: Vec<Position>) -> Result<Self> {
        if start == 0 {
            return Err(Error::LevelTooSmall { level: 0, min: 1 });
        }
        for (k, step) in steps.iter().enumerate() {
            check_position(start + k, step.index(start + k))?;
        }
        Ok(EmbeddingChain { start, steps })
    }

    fn uniform(start: usize, end: usize, pos: Position) -> Result<Self> {
        if end < start {
            return Err(Error::DimensionMismatch(start, end));
        }
        EmbeddingChain::new(start, vec![pos; end - start])
    }

    /// `i^(end-1)_end ... i^start_(start+1)`: `X -> diag(X, I)`.
    pub fn all_last(start: usize, end: usize) -> Result<Self> {
        EmbeddingChain::uniform(start, end, Position::Last)
    }

    /// `X -> diag(I, X)`.
    pub fn all_first(start: usize, end: usize) -> Result<Self> {
        EmbeddingChain::uniform(start, end, Position::First)
    }

    /// `first_steps` First steps followed by Last steps up to `end`.
    pub fn mixed(start: usize, end: usize, first_steps: usize) -> Result<Self> {
        if end < start + first_steps {
            return Err(Error::DimensionMismatch(start + first_steps, end));
        }
        let mut steps = vec![Position::First; first_steps];
        steps.resize(end - start, Position::Last);
        EmbeddingChain::new(start, steps)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.start + self.steps.len()
    }

    pub fn steps(&self) -> &[Position] {
        &self.steps
    }

    pub fn is_all_last(&self) -> bool {
        self.steps.iter().all(|s| *s == Position::Last)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &EmbeddingChain) -> Result<Self> {
        if next.start != self.end() {
            return Err(Error::DimensionMismatch(self.end(), next.start));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        EmbeddingChain::new(self.start, steps)
    }
}

/// Inserts unit row and column `j` (1-based) into `x`.
pub fn embed_matrix(x: &SquareMatrix, j: usize) -> Result<SquareMatrix> {
    let n = x.n();
    check_position(n, j)?;
    let k = j - 1;
    let lift = |a: usize| if a < k { a } else { a + 1 };
    let mut entries = vec![BigInt::zero(); (n + 1) * (n + 1)];
    entries[k * (n + 1) + k] = BigInt::one();
    for (a, row) in x.rows().enumerate() {
        for (b, v) in row.iter().enumerate() {
            entries[lift(a) * (n + 1) + lift(b)] = v.clone();
        }
    }
    SquareMatrix::new(x.ring(), n + 1, entries)
}

/// The embedding `i^n_j : GL(n, R) -> GL(n+1, R)`.
pub fn embed_at(x: &InvertibleMatrix, j: usize) -> Result<InvertibleMatrix> {
    Ok(InvertibleMatrix::from_parts(
        embed_matrix(x.matrix(), j)?,
        x.det().clone(),
        embed_matrix(x.inverse(), j)?,
    ))
}

pub fn chain_apply(x: &InvertibleMatrix, chain: &EmbeddingChain) -> Result<InvertibleMatrix> {
    if chain.start() != x.n() {
        return Err(Error::DimensionMismatch(x.n(), chain.start()));
    }
    let mut acc = x.clone();
    for step in chain.steps() {
        acc = embed_at(&acc, step.index(acc.n()))?;
    }
    Ok(acc)
}

/// `diag(X, I_(N-n))`.
pub fn stabilize_last(x: &InvertibleMatrix, level: usize) -> Result<InvertibleMatrix> {
    chain_apply(x, &EmbeddingChain::all_last(x.n(), level)?)
}

/// `diag(I_(N-n), X)`.
pub fn stabilize_first(x: &InvertibleMatrix, level: usize) -> Result<InvertibleMatrix> {
    chain_apply(x, &EmbeddingChain::all_first(x.n(), level)?)
}

/// The permutation matrix `P` with `P^-1 * i^n_(n+1)(X) * P = i^n_j(X)` for all `X`.
///
/// `P` realizes the cycle that moves position `n+1` to position `j` and shifts
/// positions `j..=n` up by one.
pub fn conjugating_permutation(
    ring: RingDescriptor,
    n: usize,
    j: usize,
) -> Result<InvertibleMatrix> {
    check_position(n, j)?;
    // target(k) for 1-based k: where i_last's index k sits inside i_j.
    let target = |k: usize| {
        if k == n + 1 {
            j
        } else if k < j {
            k
        } else {
            k + 1
        }
    };
    let size = n + 1;
    let mut entries = vec![BigInt::zero(); size * size];
    for k in 1..=size {
        entries[(k - 1) * size + (target(k) - 1)] = BigInt::one();
    }
    let p = SquareMatrix::new(ring, size, entries)?;
    // A permutation matrix is orthogonal; its determinant is the sign of a
    // cycle of length n+2-j.
    let mut det = BigInt::one();
    if (n + 1 - j) % 2 == 1 {
        det = ring.neg(&det);
    }
    let inverse = transpose(&p);
    Ok(InvertibleMatrix::from_parts(p, det, inverse))
}

fn transpose(m: &SquareMatrix) -> SquareMatrix {
    let n = m.n();
    let entries = (0..n * n)
        .map(|idx| m.get(idx % n, idx / n).clone())
        .collect();
    SquareMatrix::new(m.ring(), n, entries).expect("same shape")
}

/// Recovers `X` from `Y = i^n_j(X)`, or `None` when row/column `j` of `Y`
/// are not the `j`th unit vector.
pub fn destabilize(y: &InvertibleMatrix, j: usize) -> Result<Option<InvertibleMatrix>> {
    let size = y.n();
    if size < 2 {
        return Err(Error::LevelTooSmall {
            level: size,
            min: 2,
        });
    }
    let n = size - 1;
    check_position(n, j)?;
    let k = j - 1;
    let m = y.matrix();
    for t in 0..size {
        let expected_one = t == k;
        for v in [m.get(k, t), m.get(t, k)] {
            if (expected_one && !v.is_one()) || (!expected_one && !v.is_zero()) {
                return Ok(None);
            }
        }
    }
    let drop = |m: &SquareMatrix| {
        let entries = (0..size)
            .filter(|&a| a != k)
            .flat_map(|a| (0..size).filter(move |&b| b != k).map(move |b| (a, b)))
            .map(|(a, b)| m.get(a, b).clone())
            .collect();
        SquareMatrix::new(m.ring(), n, entries)
    };
    // The inverse of a matrix in the image is in the image too.
    Ok(Some(InvertibleMatrix::from_parts(
        drop(m)?,
        y.det().clone(),
        drop(y.inverse())?,
    )))
}
