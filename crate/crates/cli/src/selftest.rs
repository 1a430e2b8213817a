//! Deterministic randomized invariant suite behind `k1 selftest`.

use k1_core::colimit::chain_discrepancy_witness;
use k1_core::elementary::product_of;
use k1_core::matrix::{commutator, sample_gl, seeded_rng};
use k1_core::stab::{stabilize_first, stabilize_last};
use k1_core::*;

use std::io::Write;

use crate::Failure;

type Check = fn(RingDescriptor, &InvertibleMatrix, &InvertibleMatrix) -> Result<bool>;

const CHECKS: &[(&str, Check)] = &[
    ("block commutation", |_, x, y| {
        let (lx, fy) = (stabilize_last(x, 6)?, stabilize_first(y, 6)?);
        Ok(lx.try_mul(&fy)? == fy.try_mul(&lx)?)
    }),
    ("class homomorphism", |_, x, y| {
        Ok(class_of_matrix(&x.try_mul(y)?)? == class_of_matrix(x)?.mul(&class_of_matrix(y)?)?)
    }),
    ("permutation conjugation", |ring, x, _| {
        for j in 1..=4 {
            let p = conjugating_permutation(ring, 3, j)?;
            let last = embed_at(x, 4)?;
            if last.conjugated_by(&p.inverted())? != embed_at(x, j)? {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("sl factorization", |ring, x, _| {
        let u = class_of_matrix(x)?.inv().unit().clone();
        let fix = SquareMatrix::diagonal(ring, &[u, 1.into(), 1.into()])
            .try_invert()
            .expect("unit diagonal");
        let a = x.try_mul(&fix)?;
        Ok(product_of(ring, 3, sl_factor(&a)?.factors()) == *a.matrix())
    }),
    ("witnesses verify", |ring, x, y| {
        let mut all = vec![commutation_witness(x, y)?, chain_discrepancy_witness(y)?];
        for j in 1..=4 {
            all.push(general_embedding_witness(x, j)?);
        }
        all.push(elementary_witness(&elem(ring, 3, 1, 3, 2)?)?);
        for w in &all {
            if !verify_witness(w)?.is_verified() {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("commutator witness target", |_, x, y| {
        let w = commutation_witness(x, y)?;
        Ok(w.target == commutator(&stabilize_last(x, 6)?, &stabilize_last(y, 6)?)?)
    }),
    ("lambda rho round trip", |_, x, y| {
        let w = alpha(x)?.mul(&alpha(y)?.inv())?;
        let c = rho(&w)?;
        Ok(rho(&lambda_map(&c)?)? == c && equal_in_m(&lambda_map(&c)?, &w)?)
    }),
];

pub fn run(seed: u64, count: usize) -> std::result::Result<(), Failure> {
    let mut rng = seeded_rng(seed);
    let mut rings: Vec<RingDescriptor> =
        (2..=6).map(|m| RingDescriptor::zmod(m).unwrap()).collect();
    rings.push(RingDescriptor::Integers);
    let mut failures = 0;
    let mut out = std::io::stdout().lock();
    for ring in rings {
        for (name, check) in CHECKS {
            let mut passed = 0;
            for _ in 0..count {
                let x = sample_gl(ring, 3, &mut rng);
                let y = sample_gl(ring, 3, &mut rng);
                match check(ring, &x, &y) {
                    Ok(true) => passed += 1,
                    Ok(false) => log::warn!("{name} failed over {ring} for X = {x}, Y = {y}"),
                    Err(e) => log::warn!("{name} errored over {ring}: {e}"),
                }
            }
            let status = if passed == count { "ok" } else { "FAIL" };
            // A closed pipe (e.g. `| head`) only loses the report, not the verdict.
            let _ = writeln!(out, "{status} {ring} {name}: {passed}/{count}");
            failures += count - passed;
        }
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Negative(format!("{failures} checks failed")))
    }
}
