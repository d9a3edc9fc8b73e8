mod common;

use common::{gf, mat, rng, superregular};
use proptest::prelude::*;
use rand::Rng;
use srforge::format::report_to_json;
use srforge::verify::{binomial, is_block_superregular_mat, is_superregular, minor_table};
use srforge::{FieldCtx, Mat, VerifyOptions};
use srforge_oracle::{brute_block_superregular, brute_superregular, cofactor_det, subsets};

fn agree(m: &Mat) {
    let fast = is_superregular(m, &VerifyOptions::default());
    let slow = brute_superregular(m);
    assert_eq!(fast.verdict, slow.verdict, "{m}");
    let w = fast.witness.map(|w| (w.rows.as_slice().to_vec(), w.cols.as_slice().to_vec()));
    assert_eq!(w, slow.first_singular, "{m}");
}

/// Random matrices skewed towards superregular ones so both verdicts occur.
fn sample(ctx: &FieldCtx, r: &mut rand_chacha::ChaCha8Rng) -> Mat {
    let (m, t) = (r.gen_range(1..=5), r.gen_range(1..=5));
    let nz = Mat::from_fn(ctx, m, t, |_, _| common::nonzero(ctx, r)).unwrap();
    if r.gen_bool(0.5) {
        nz
    } else {
        mat(ctx, m, t, r)
    }
}

#[test]
fn oracle_agreement_gf5() {
    let ctx = gf(5);
    let mut r = rng(5);
    for _ in 0..1000 {
        agree(&sample(&ctx, &mut r));
    }
}

#[test]
fn oracle_agreement_gf7() {
    let ctx = gf(7);
    let mut r = rng(7);
    for _ in 0..300 {
        agree(&sample(&ctx, &mut r));
    }
}

#[test]
fn oracle_agreement_blocks() {
    let ctx = gf(5);
    let mut r = rng(55);
    for _ in 0..200 {
        let b = r.gen_range(1..=2);
        let (m, t) = (b * r.gen_range(1..=3), b * r.gen_range(1..=3));
        let a = mat(&ctx, m, t, &mut r);
        let fast = is_block_superregular_mat(&a, b, &VerifyOptions::default()).unwrap();
        let slow = brute_block_superregular(&a, b);
        assert_eq!(fast.verdict, slow.verdict);
        let w = fast.witness.map(|w| (w.rows.as_slice().to_vec(), w.cols.as_slice().to_vec()));
        assert_eq!(w, slow.first_singular);
    }
}

#[test]
fn full_enumeration_count() {
    let ctx = gf(7);
    let mut r = rng(11);
    let opts = VerifyOptions::default().exhaustive(true);
    for _ in 0..40 {
        let a = mat(&ctx, r.gen_range(1..=5), r.gen_range(1..=5), &mut r);
        let rep = is_superregular(&a, &opts);
        assert_eq!(rep.minors_checked, binomial(a.rows() + a.cols(), a.rows()) - 1);
        assert_eq!(rep.minors_checked, brute_superregular(&a).total);
        assert_eq!(rep.verdict, is_superregular(&a, &VerifyOptions::default()).verdict);
    }
}

#[test]
fn witness_is_singular() {
    let ctx = gf(5);
    let mut r = rng(12);
    for _ in 0..200 {
        let a = mat(&ctx, r.gen_range(1..=4), r.gen_range(1..=4), &mut r);
        let rep = is_superregular(&a, &VerifyOptions::default());
        if let Some(w) = rep.witness {
            assert!(cofactor_det(&a.submatrix(&w.rows, &w.cols).unwrap()).is_zero());
        } else {
            assert!(rep.verdict);
        }
    }
}

#[test]
fn superregular_implies_block_superregular() {
    let ctx = gf(13);
    let mut r = rng(13);
    for _ in 0..50 {
        let (bm, bt) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let a = superregular(&ctx, 2 * bm, 2 * bt, &mut r);
        let rep = is_block_superregular_mat(&a, 2, &VerifyOptions::default()).unwrap();
        assert!(rep.verdict);
        if a.is_square() {
            assert!(!a.is_singular().unwrap());
        }
    }
}

#[test]
fn serial_and_parallel_reports_are_identical() {
    let ctx = gf(7);
    let mut r = rng(14);
    for _ in 0..60 {
        let a = sample(&ctx, &mut r);
        for exhaustive in [false, true] {
            let one = is_superregular(&a, &VerifyOptions::with_jobs(1).exhaustive(exhaustive));
            let many = is_superregular(&a, &VerifyOptions::with_jobs(8).exhaustive(exhaustive));
            assert_eq!(
                report_to_json(&one).to_string(),
                report_to_json(&many).to_string()
            );
        }
    }
}

#[test]
fn minor_table_covers_every_selection() {
    let ctx = gf(7);
    let mut r = rng(15);
    for _ in 0..20 {
        let a = mat(&ctx, r.gen_range(1..=4), r.gen_range(1..=4), &mut r);
        for k in 1..=a.rows().min(a.cols()) {
            let t = minor_table(&a, k).unwrap();
            assert_eq!(t.len() as u64, binomial(a.rows(), k) * binomial(a.cols(), k));
            for (rows, cols, v) in t.iter() {
                assert_eq!(v, &cofactor_det(&a.submatrix(rows, cols).unwrap()));
            }
            assert_eq!(t.row_sets.len(), subsets(a.rows(), k).len());
        }
    }
}

proptest! {
    #[test]
    fn verdict_is_transpose_invariant(seed: u64) {
        let ctx = gf(5);
        let a = sample(&ctx, &mut rng(seed));
        let opts = VerifyOptions::default();
        prop_assert_eq!(
            is_superregular(&a, &opts).verdict,
            is_superregular(&a.transpose(), &opts).verdict
        );
    }
}
