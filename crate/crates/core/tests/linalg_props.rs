mod common;

use common::{gf, mat, nonsingular, rng};
use proptest::prelude::*;
use rand::Rng;
use srforge::linalg::{row_multilinearity_check, schur_det};
use srforge::{Error, IndexSet, Mat};
use srforge_oracle::cofactor_det;

#[test]
fn kron_determinant_identity() {
    for p in [5u64, 7, 13] {
        let ctx = gf(p);
        let mut r = rng(p);
        for _ in 0..200 {
            let (m, n) = (r.gen_range(1..=4), r.gen_range(1..=4));
            let a = mat(&ctx, m, m, &mut r);
            let b = mat(&ctx, n, n, &mut r);
            let lhs = a.kron(&b).unwrap().det().unwrap();
            let rhs = ctx
                .mul(
                    &ctx.pow(&a.det().unwrap(), n as u128).unwrap(),
                    &ctx.pow(&b.det().unwrap(), m as u128).unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn kron_is_associative() {
    let ctx = gf(7);
    let mut r = rng(1);
    for _ in 0..50 {
        let a = mat(&ctx, r.gen_range(1..=3), r.gen_range(1..=3), &mut r);
        let b = mat(&ctx, r.gen_range(1..=3), r.gen_range(1..=3), &mut r);
        let c = mat(&ctx, r.gen_range(1..=2), r.gen_range(1..=2), &mut r);
        assert_eq!(
            a.kron(&b).unwrap().kron(&c).unwrap(),
            a.kron(&b.kron(&c).unwrap()).unwrap()
        );
    }
    let one = Mat::from_ints(&ctx, &[[1]]).unwrap();
    let a = mat(&ctx, 2, 3, &mut r);
    assert_eq!(a.kron(&one).unwrap(), a);
}

#[test]
fn elimination_matches_cofactor_oracle() {
    let ctx = gf(5);
    let mut r = rng(2);
    for n in 1..=5 {
        for _ in 0..60 {
            let m = mat(&ctx, n, n, &mut r);
            assert_eq!(m.det().unwrap(), cofactor_det(&m));
            let full = IndexSet::full(n);
            assert_eq!(m.submatrix(&full, &full).unwrap().det().unwrap(), m.det().unwrap());
        }
    }
    let gf125 = srforge::FieldCtx::parse(5, "x^3+3x+3").unwrap();
    for n in 1..=4 {
        for _ in 0..20 {
            let m = mat(&gf125, n, n, &mut r);
            assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }
    }
}

#[test]
fn schur_matches_direct() {
    let ctx = gf(7);
    let mut r = rng(3);
    for _ in 0..100 {
        let (k, l) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = nonsingular(&ctx, k, &mut r);
        let b = mat(&ctx, k, l, &mut r);
        let c = mat(&ctx, l, k, &mut r);
        let d = mat(&ctx, l, l, &mut r);
        let whole = Mat::from_blocks(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        assert_eq!(schur_det(&a, &b, &c, &d).unwrap(), whole.det().unwrap());
    }
    let id = Mat::identity(&ctx, 2).unwrap();
    let z = Mat::zeros(&ctx, 2, 2).unwrap();
    let d = mat(&ctx, 2, 2, &mut r);
    assert_eq!(schur_det(&id, &z, &z, &d).unwrap(), d.det().unwrap());
    assert_eq!(schur_det(&z, &z, &z, &d), Err(Error::SingularA));
}

#[test]
fn row_multilinearity() {
    for p in [7u64, 13] {
        let ctx = gf(p);
        let mut r = rng(p + 100);
        for _ in 0..100 {
            let n = r.gen_range(1..=4);
            let m0 = mat(&ctx, n, n, &mut r);
            let k = r.gen_range(0..n);
            let x: Vec<_> = mat(&ctx, 1, n, &mut r).row(0).to_vec();
            let y: Vec<_> = mat(&ctx, 1, n, &mut r).row(0).to_vec();
            let (a, b) = (common::elem(&ctx, &mut r), common::elem(&ctx, &mut r));
            let row: Vec<_> = x
                .iter()
                .zip(&y)
                .map(|(xi, yi)| {
                    ctx.add(&ctx.mul(&a, xi).unwrap(), &ctx.mul(&b, yi).unwrap())
                        .unwrap()
                })
                .collect();
            let m = m0.with_row(k, &row).unwrap();
            assert!(row_multilinearity_check(&m, k, &x, &y, &a, &b).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn transpose_preserves_det(seed: u64, n in 1usize..5) {
        let ctx = gf(13);
        let m = mat(&ctx, n, n, &mut rng(seed));
        prop_assert_eq!(m.transpose().det().unwrap(), m.det().unwrap());
    }

    #[test]
    fn det_is_multiplicative(seed: u64, n in 1usize..5) {
        let ctx = gf(7);
        let mut r = rng(seed);
        let (a, b) = (mat(&ctx, n, n, &mut r), mat(&ctx, n, n, &mut r));
        prop_assert_eq!(
            a.mul(&b).unwrap().det().unwrap(),
            ctx.mul(&a.det().unwrap(), &b.det().unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_round_trip(seed: u64, n in 1usize..5) {
        let ctx = gf(5);
        let a = nonsingular(&ctx, n, &mut rng(seed));
        let inv = a.inverse().unwrap().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), Mat::identity(&ctx, n).unwrap());
    }
}
