//! The truncated colimit `GL(N, Z/m) / NC(relators)` by brute force.
//!
//! All `m^(N^2)` matrices are enumerated as integer codes, the invertible
//! ones form the group, and the normal closure of the relators
//! `i^(N-1)_1(g) * i^(N-1)_N(g)^-1` is grown until it is stable under
//! conjugation by a generating set of the group.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::witness::Relator;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::rings::RingDescriptor;

/// Largest number of matrices (`m^(N^2)`) that will be enumerated.
pub const ENUMERATION_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoequalizerReport {
    pub group_order: u64,
    pub closure_order: u64,
    pub quotient_order: u64,
}

/// Matrices over `Z/m` as base-`m` codes, entry `k` (row-major) being digit `k`.
struct Codec {
    ring: RingDescriptor,
    m: u32,
    n: usize,
    size: u32,
}

impl Codec {
    fn new(ring: RingDescriptor, n: usize) -> Result<Self> {
        let m = ring
            .modulus()
            .ok_or_else(|| Error::Unsupported(format!("cannot enumerate GL({n}, {ring})")))?;
        let size = (m as f64).powi((n * n) as i32);
        if size > ENUMERATION_BUDGET as f64 {
            return Err(Error::Unsupported(format!(
                "enumerating {ring}^({n}x{n}) needs {size:.0} matrices, budget is {ENUMERATION_BUDGET}"
            )));
        }
        Ok(Codec {
            ring,
            m: m as u32,
            n,
            size: size as u32,
        })
    }

    fn decode(&self, mut code: u32, out: &mut [u32]) {
        for e in out.iter_mut() {
            *e = code % self.m;
            code /= self.m;
        }
    }

    fn encode(&self, entries: &[u32]) -> u32 {
        entries.iter().rev().fold(0, |acc, &e| acc * self.m + e)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.n;
        let mut x = [0u32; 16];
        let mut y = [0u32; 16];
        let mut z = [0u32; 16];
        self.decode(a, &mut x[..n * n]);
        self.decode(b, &mut y[..n * n]);
        let m = self.m as u64;
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n)
                    .map(|k| x[i * n + k] as u64 * y[k * n + j] as u64)
                    .sum();
                z[i * n + j] = (s % m) as u32;
            }
        }
        self.encode(&z[..n * n])
    }

    /// Determinant mod `m` by cofactor expansion along the first row.
    fn det(&self, entries: &[u32], n: usize) -> u64 {
        let m = self.m as u64;
        if n == 1 {
            return entries[0] as u64 % m;
        }
        let mut acc = 0u64;
        let mut minor = vec![0u32; (n - 1) * (n - 1)];
        for c in 0..n {
            if entries[c] == 0 {
                continue;
            }
            let mut idx = 0;
            for r in 1..n {
                for k in (0..n).filter(|&k| k != c) {
                    minor[idx] = entries[r * n + k];
                    idx += 1;
                }
            }
            let term = entries[c] as u64 * self.det(&minor, n - 1) % m;
            acc = if c % 2 == 0 {
                (acc + term) % m
            } else {
                (acc + m - term) % m
            };
        }
        acc
    }

    fn is_invertible(&self, code: u32) -> bool {
        let mut e = [0u32; 16];
        self.decode(code, &mut e[..self.n * self.n]);
        let d = self.det(&e[..self.n * self.n], self.n);
        self.ring.is_unit(&BigInt::from(d))
    }

    fn code_of(&self, m: &SquareMatrix) -> Result<u32> {
        if m.n() != self.n || m.ring() != self.ring {
            return Err(Error::Malformed(format!(
                "relator {m} is not in GL({}, {})",
                self.n, self.ring
            )));
        }
        let entries: Vec<u32> = m
            .entries()
            .iter()
            .map(|v| v.to_u32().expect("residue"))
            .collect();
        Ok(self.encode(&entries))
    }

    fn to_matrix(&self, code: u32) -> SquareMatrix {
        let mut e = vec![0u32; self.n * self.n];
        self.decode(code, &mut e);
        SquareMatrix::new(self.ring, self.n, e.into_iter().map(BigInt::from).collect())
            .expect("n*n")
    }

    fn identity(&self) -> u32 {
        self.code_of(&SquareMatrix::identity(self.ring, self.n))
            .expect("identity")
    }
}

/// A subgroup of the enumerated group, kept closed under multiplication.
struct Subgroup<'a> {
    codec: &'a Codec,
    member: Vec<bool>,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl<'a> Subgroup<'a> {
    fn trivial(codec: &'a Codec) -> Self {
        let id = codec.identity();
        let mut member = vec![false; codec.size as usize];
        member[id as usize] = true;
        Subgroup {
            codec,
            member,
            elements: vec![id],
            generators: Vec::new(),
        }
    }

    /// Replaces the subgroup by the one generated by it and `s`.
    fn adjoin(&mut self, s: u32) -> bool {
        if self.member[s as usize] {
            return false;
        }
        self.generators.push(s);
        // In a finite group positive words in the generators already give
        // the whole subgroup.
        let mut queue = self.elements.clone();
        while let Some(x) = queue.pop() {
            for &g in &self.generators {
                let y = self.codec.mul(x, g);
                if !self.member[y as usize] {
                    self.member[y as usize] = true;
                    self.elements.push(y);
                    queue.push(y);
                }
            }
        }
        true
    }

    fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// `e_ij(1)` and `diag(u, 1, ..., 1)`, with inverses; they generate `GL(N, Z/m)`.
fn group_generators(codec: &Codec) -> Vec<(u32, u32)> {
    let ring = codec.ring;
    let n = codec.n;
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = SquareMatrix::identity(ring, n);
                e.set(i, j, BigInt::from(1));
                mats.push(e);
            }
        }
    }
    for u in 2..codec.m {
        let u = BigInt::from(u);
        if ring.is_unit(&u) {
            let mut d = vec![BigInt::from(1); n];
            d[0] = u;
            mats.push(SquareMatrix::diagonal(ring, &d));
        }
    }
    mats.into_iter()
        .map(|m| {
            let inv = m.try_invert().expect("generator is invertible");
            (
                codec.code_of(&m).unwrap(),
                codec.code_of(inv.inverse()).unwrap(),
            )
        })
        .collect()
}

/// `i^(N-1)_1(g) * i^(N-1)_N(g)^-1` for every `g` in `GL(N-1, R)`.
pub fn stabilization_relators(ring: RingDescriptor, level: usize) -> Result<Vec<SquareMatrix>> {
    if level < 4 {
        return Err(Error::LevelTooSmall { level, min: 4 });
    }
    let codec = Codec::new(ring, level - 1)?;
    let mut out = Vec::new();
    for code in 0..codec.size {
        if codec.is_invertible(code) {
            let g = codec
                .to_matrix(code)
                .try_invert()
                .expect("unit determinant");
            out.push(Relator::new(g)?.discrepancy().into_matrix());
        }
    }
    Ok(out)
}

/// Order of `GL(N, R) / NC(relators)` for explicit level-`N` relators.
pub fn quotient_order(
    ring: RingDescriptor,
    level: usize,
    relators: &[SquareMatrix],
) -> Result<CoequalizerReport> {
    let codec = Codec::new(ring, level)?;
    let group_order = (0..codec.size).filter(|&c| codec.is_invertible(c)).count() as u64;

    let gens = group_generators(&codec);
    let mut whole = Subgroup::trivial(&codec);
    for &(g, _) in &gens {
        whole.adjoin(g);
    }
    if whole.order() != group_order {
        return Err(Error::Unsupported(format!(
            "generators span {} of {group_order} elements of GL({level}, {ring})",
            whole.order()
        )));
    }

    let mut closure = Subgroup::trivial(&codec);
    for r in relators {
        let code = codec.code_of(r)?;
        if !codec.is_invertible(code) {
            return Err(Error::Malformed(format!("relator {r} is not invertible")));
        }
        closure.adjoin(code);
    }
    let mut next = 0;
    while next < closure.generators.len() {
        let h = closure.generators[next];
        for &(x, x_inv) in &gens {
            let c = codec.mul(codec.mul(x, h), x_inv);
            closure.adjoin(c);
        }
        next += 1;
    }
    let closure_order = closure.order();
    Ok(CoequalizerReport {
        group_order,
        closure_order,
        quotient_order: group_order / closure_order,
    })
}

/// `GL(N, R)` modulo the normal closure of all stabilization relators from level `N-1`.
pub fn truncated_coequalizer(ring: RingDescriptor, level: usize) -> Result<CoequalizerReport> {
    // Check the budget for the big group before building relators.
    Codec::new(ring, level)?;
    let relators = stabilization_relators(ring, level)?;
    quotient_order(ring, level, &relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codec_round_trip_and_product() {
        let r = RingDescriptor::zmod(3).unwrap();
        let codec = Codec::new(r, 2).unwrap();
        let a = SquareMatrix::from_rows(r, [[1, 2], [0, 1]]).unwrap();
        let b = SquareMatrix::from_rows(r, [[2, 0], [1, 1]]).unwrap();
        let (ca, cb) = (codec.code_of(&a).unwrap(), codec.code_of(&b).unwrap());
        assert_eq!(codec.to_matrix(ca), a);
        assert_eq!(codec.to_matrix(codec.mul(ca, cb)), &a * &b);
    }

    #[test]
    fn small_group_orders() {
        // |GL(2, Z/2)| = 6, |GL(2, Z/3)| = 48, |GL(3, Z/2)| = 168
        for (m, n, order) in [(2, 2, 6), (3, 2, 48), (2, 3, 168)] {
            let r = RingDescriptor::zmod(m).unwrap();
            let rep = quotient_order(r, n, &[]).unwrap();
            assert_eq!(rep.group_order, order);
            assert_eq!(rep.quotient_order, order);
        }
    }

    #[test]
    fn refuses_integers_and_oversized_groups() {
        assert!(matches!(
            truncated_coequalizer(RingDescriptor::Integers, 4),
            Err(Error::Unsupported(_))
        ));
        let r3 = RingDescriptor::zmod(3).unwrap();
        assert!(matches!(
            truncated_coequalizer(r3, 4),
            Err(Error::Unsupported(_))
        ));
        let r2 = RingDescriptor::zmod(2).unwrap();
        assert!(matches!(
            truncated_coequalizer(r2, 3),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn determinant_relator_quotient_at_level_three() {
        // Over Z/3 the relators of level 2 have determinant 1, so the quotient
        // of GL(3, Z/3) has order at least |(Z/3)^x| = 2.
        let r3 = RingDescriptor::zmod(3).unwrap();
        let codec = Codec::new(r3, 2).unwrap();
        let mut relators = Vec::new();
        for code in 0..codec.size {
            if codec.is_invertible(code) {
                let g = codec.to_matrix(code).try_invert().unwrap();
                let one = crate::stab::embed_at(&g, 1).unwrap();
                let last = crate::stab::embed_at(&g, 3).unwrap();
                relators.push((&one * &last.inverted()).into_matrix());
            }
        }
        let rep = quotient_order(r3, 3, &relators).unwrap();
        assert_eq!(rep.group_order, 11232);
        assert_eq!(rep.quotient_order % 2, 0);
    }
}
