#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srforge::construct::{random_matrix, random_search};
use srforge::{FieldCtx, FieldElem, Mat, VerifyOptions};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

pub fn elem(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    ctx.from_index(rng.gen_range(0..ctx.order()))
}

pub fn nonzero(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    ctx.from_index(rng.gen_range(1..ctx.order()))
}

pub fn mat(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    random_matrix(ctx, rows, cols, rng).unwrap()
}

pub fn nonsingular(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = mat(ctx, n, n, rng);
        if !m.is_singular().unwrap() {
            return m;
        }
    }
}

/// A superregular matrix found by seeded search; panics if none turns up.
pub fn superregular(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let seed = rng.gen();
    random_search(ctx, rows, cols, 100_000, seed, &VerifyOptions::default())
        .unwrap()
        .expect("superregular matrix of this shape exists")
}
