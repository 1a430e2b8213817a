//! Worked instances for factorization and K1 classes.

mod common;

use common::zmod;
use k1_core::elementary::product_of;
use k1_core::matrix::{random_invertible, sample_gl, seeded_rng};
use k1_core::*;
use rand::Rng;
use std::collections::BTreeSet;

#[test]
fn long_elementary_product_over_z4_is_certified() {
    let ring = zmod(4);
    let mut rng = seeded_rng(60);
    for _ in 0..20 {
        let gens: Vec<_> = (0..30)
            .map(|_| {
                let p = rng.gen_range(1..=3);
                let q = (p - 1 + rng.gen_range(1..3)) % 3 + 1;
                elem(ring, 3, p, q, rng.gen_range(0..4u64)).unwrap()
            })
            .collect();
        let a = product_of(ring, 3, &gens).try_invert().unwrap();
        let f = is_in_e(&a).unwrap().expect("det 1 over Z/4");
        assert_eq!(&f.product(), a.matrix());
    }
}

#[test]
fn identity_and_non_sl_membership() {
    let r5 = zmod(5);
    assert!(is_in_e(&InvertibleMatrix::identity(r5, 3))
        .unwrap()
        .unwrap()
        .is_empty());
    let d = SquareMatrix::diagonal(r5, &[2.into(), 1.into(), 1.into()])
        .try_invert()
        .unwrap();
    assert!(is_in_e(&d).unwrap().is_none());
}

#[test]
fn integer_k1_is_sign_of_determinant() {
    let z = RingDescriptor::Integers;
    let mut rng = seeded_rng(61);
    let mut seen = BTreeSet::new();
    for _ in 0..200 {
        let x = sample_gl(z, 3, &mut rng);
        let det = x.matrix().determinant();
        assert!(det == 1.into() || det == (-1).into());
        seen.insert(class_of_matrix(&x).unwrap().unit().clone());
    }
    let group: BTreeSet<_> = k1_group(z)
        .unwrap()
        .iter()
        .map(|c| c.unit().clone())
        .collect();
    assert_eq!(seen, group);
}

#[test]
fn seeded_matrix_over_z6_inverts() {
    let x = random_invertible(zmod(6), 3, 42, 20);
    assert!(x.matrix().try_invert().is_some());
}

#[test]
fn sl_over_integers_with_large_entries() {
    let z = RingDescriptor::Integers;
    for seed in 0..20 {
        let x = random_invertible(z, 4, seed, 60);
        let x = if x.det() == &(-1).into() {
            let flip = SquareMatrix::diagonal(z, &[(-1).into(), 1.into(), 1.into(), 1.into()]);
            flip.try_invert().unwrap().try_mul(&x).unwrap()
        } else {
            x
        };
        let f = sl_factor(&x).unwrap();
        assert_eq!(&f.product(), x.matrix());
    }
}
