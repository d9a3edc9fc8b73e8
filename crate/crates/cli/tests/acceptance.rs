//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 7 fails on two misprinted Table A.2 cells. It is accepted only
//! when it fails on exactly those cells; any other failure makes the target
//! exit non-zero.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srforge::construct::{
    chain, kron_block, lift, random_matrix, random_search, scaled_columns, ConstructOptions,
};
use srforge::format::report_to_json;
use srforge::linalg::row_multilinearity_check;
use srforge::verify::{is_block_superregular, is_block_superregular_mat, is_superregular};
use srforge::{mat_frobenius, CompanionCtx, FieldCtx, IndexSet, Mat, VerifyOptions};
use srforge_cli::corpus::{self, RunOpts};
use srforge_oracle::{brute_block_superregular, brute_superregular, cofactor_det};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exhaustive() -> VerifyOptions {
    VerifyOptions::default().exhaustive(true)
}

fn case_ok(id: &str) -> (bool, String) {
    let rep = corpus::find(id).expect("known case").run(&RunOpts::default());
    let failed: Vec<String> = rep.failures().map(|c| format!("{}: {} vs {}", c.name, c.expected, c.actual)).collect();
    (rep.passed(), failed.join("; "))
}

// 1 -------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let dir = tempfile::TempDir::new().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "field p=7\nrows=3 cols=3\n6 2 2\n4 3 1\n3 3 4\n").unwrap();
    let p = path.to_str().unwrap();
    srforge_cli::run(["srforge", "minors", "--k", "2", p], &mut out, &mut err);
    let grid: Vec<Vec<String>> = String::from_utf8(out)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('|').skip(1).map(|c| c.trim().to_string()).collect())
        .collect();
    let want = vec![vec!["3", "5", "3"], vec!["5", "4", "2"], vec!["3", "6", "2"]];
    let mut out = Vec::new();
    let code = srforge_cli::run(["srforge", "--out", "json", "verify", "sr", p], &mut out, &mut err);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let pass = grid == want && code == 0 && v["verdict"] == true && v["minors_checked"] == 19;
    outcome(pass, format!("grid {grid:?}, verdict {}, minors {}", v["verdict"], v["minors_checked"]))
}

// 2-6 and 8 lean on the corpus, which embeds the transcribed values ---------

fn criterion_from_case(id: &str) -> Outcome {
    let (pass, failed) = case_ok(id);
    outcome(pass, if pass { format!("{id}: all checks") } else { failed })
}

fn criterion_5() -> Outcome {
    let (pass, failed) = case_ok("ex3.10");
    let f5 = FieldCtx::prime(5).unwrap();
    let a = Mat::from_ints(&f5, &[[1, 2, 2], [2, 1, 3], [3, 2, 4]]).unwrap();
    let det = cofactor_det(&a).as_ground();
    outcome(
        pass && det == Some(2),
        format!("ex3.10 {}; cofactor det(A) = {det:?}", if pass { "ok".to_string() } else { failed }),
    )
}

// 7 -------------------------------------------------------------------------

/// Table A.2 as printed: rows, cols (1-based) and constant.
const A2_PRINTED: [([usize; 3], [usize; 3], u64); 12] = [
    ([1, 2, 3], [1, 2, 3], 6),
    ([1, 2, 4], [1, 2, 3], 1),
    ([1, 3, 4], [1, 2, 3], 3),
    ([1, 2, 3], [1, 2, 4], 8),
    ([1, 2, 4], [1, 2, 4], 6),
    ([1, 3, 4], [1, 2, 4], 2),
    ([1, 2, 3], [1, 3, 4], 8),
    ([1, 2, 4], [1, 3, 4], 1),
    ([1, 3, 4], [1, 3, 4], 8),
    ([1, 2, 3], [2, 3, 4], 11),
    ([1, 2, 4], [2, 3, 4], 1),
    ([1, 3, 4], [2, 3, 4], 10),
];

/// Cells whose printed entry duplicates another cell.
const A2_ERRATA: [([usize; 3], [usize; 3]); 2] = [([1, 2, 4], [1, 3, 4]), ([1, 2, 4], [2, 3, 4])];

fn criterion_7() -> (Outcome, bool) {
    let f13 = FieldCtx::prime(13).unwrap();
    let a = Mat::from_ints(&f13, &[[6, 9, 2, 6], [4, 3, 8, 1], [3, 3, 4, 9], [3, 9, 9, 5]]).unwrap();
    let sub = |r: &[usize], c: &[usize]| {
        let rs = IndexSet::from_one_based(r).unwrap();
        let cs = IndexSet::from_one_based(c).unwrap();
        cofactor_det(&a.submatrix(&rs, &cs).unwrap()).as_ground().unwrap()
    };
    // independent: the zero instantiation reduces every minor to a minor of A
    let mismatched: BTreeSet<([usize; 3], [usize; 3])> = A2_PRINTED
        .iter()
        .filter(|(r, c, v)| sub(r, c) != *v)
        .map(|(r, c, _)| (*r, *c))
        .collect();
    let details: Vec<String> = mismatched
        .iter()
        .map(|(r, c)| format!("rows {r:?} cols {c:?} printed 1 true {}", sub(r, c)))
        .collect();

    let opts = RunOpts::default();
    let ex43 = corpus::find("ex4.3").unwrap().run(&opts);
    let a3 = corpus::find("tableA3").unwrap().run(&opts);
    let a2 = corpus::find("tableA2").unwrap().run(&opts);
    let sr_a2 = a2.check("instantiations superregular").is_some_and(|c| c.pass);
    let rest = ex43.passed() && a3.passed() && sr_a2;
    let pass = rest && mismatched.is_empty() && a2.passed();
    let detail = format!(
        "det constant, 200/200 superregular, Table A.3: {}; Table A.2 constants: {}",
        if rest { "ok" } else { "FAIL" },
        if details.is_empty() { "ok".to_string() } else { details.join(", ") }
    );
    let expected_failure = rest
        && mismatched == A2_ERRATA.iter().copied().collect()
        && a2.failures().all(|c| c.name == "constants" || c.name == "α and α² coefficients");
    (outcome(pass, detail), expected_failure)
}

// 9 -------------------------------------------------------------------------

fn superregular(ctx: &FieldCtx, m: usize, t: usize, r: &mut ChaCha8Rng) -> Mat {
    random_search(ctx, m, t, 100_000, r.gen(), &VerifyOptions::default())
        .unwrap()
        .expect("exists")
}

fn nonsingular(ctx: &FieldCtx, n: usize, r: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = random_matrix(ctx, n, n, r).unwrap();
        if !m.is_singular().unwrap() {
            return m;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    let mut record = |name: &str, ok: usize, of: usize| {
        all &= ok == of;
        parts.push(format!("{name} {ok}/{of}"));
    };
    let copts = ConstructOptions::default();

    let mut r = rng(901);
    let mut ok = 0;
    for i in 0..200 {
        let f = FieldCtx::prime([5, 7, 13][i % 3]).unwrap();
        let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (a, b) = (random_matrix(&f, m, m, &mut r).unwrap(), random_matrix(&f, n, n, &mut r).unwrap());
        let lhs = cofactor_det(&a.kron(&b).unwrap());
        let rhs = f
            .mul(
                &f.pow(&cofactor_det(&a), n as u128).unwrap(),
                &f.pow(&cofactor_det(&b), m as u128).unwrap(),
            )
            .unwrap();
        ok += (lhs == rhs) as usize;
    }
    record("Kronecker determinant", ok, 200);

    let ctx = CompanionCtx::parse(5, "x^3+3x+3").unwrap();
    let ext = ctx.ext();
    let mut ok = 0;
    for _ in 0..500 {
        let (x, y) = (ext.from_index(r.gen_range(0..125)), ext.from_index(r.gen_range(0..125)));
        let (px, py) = (ctx.psi(&x).unwrap(), ctx.psi(&y).unwrap());
        let sum = ctx.psi(&ext.add(&x, &y).unwrap()).unwrap() == px.add(&py).unwrap();
        let prod = ctx.psi(&ext.mul(&x, &y).unwrap()).unwrap() == px.mul(&py).unwrap();
        ok += (sum && prod && ctx.psi_inv(&px).unwrap() == x) as usize;
    }
    record("ψ isomorphism", ok, 500);

    let f7 = FieldCtx::prime(7).unwrap();
    let (mut k, mut c, mut s) = (0, 0, 0);
    for _ in 0..25 {
        let a = superregular(&f7, r.gen_range(1..=3), r.gen_range(1..=3), &mut r);
        let b = nonsingular(&f7, r.gen_range(1..=3), &mut r);
        k += is_block_superregular(&kron_block(&a, &b, &copts).unwrap(), &exhaustive()).unwrap().verdict as usize;

        let factors: Vec<Mat> = (0..r.gen_range(1..=2))
            .map(|_| {
                let n = r.gen_range(1..=2);
                superregular(&f7, n, n, &mut r)
            })
            .collect();
        let b = nonsingular(&f7, r.gen_range(1..=2), &mut r);
        c += is_block_superregular(&chain(&factors, &b, &copts).unwrap(), &exhaustive()).unwrap().verdict as usize;

        let (m, t, n) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=2));
        let a = superregular(&f7, m, t, &mut r);
        let b = nonsingular(&f7, n, &mut r);
        let bs: Vec<Mat> = (0..t).map(|_| nonsingular(&f7, n, &mut r)).collect();
        s += is_block_superregular(&scaled_columns(&a, &b, &bs, &copts).unwrap(), &exhaustive()).unwrap().verdict
            as usize;
    }
    record("A⊗B", k, 25);
    record("chain", c, 25);
    record("scaled columns", s, 25);

    let lift_ctx = CompanionCtx::parse(13, "x^3+11x+6").unwrap();
    let (mut l, mut fr) = (0, 0);
    for _ in 0..25 {
        let n = r.gen_range(1..=4);
        let a = superregular(lift_ctx.base(), n, n, &mut r);
        let t_exp = [None, Some(5), Some(7)][r.gen_range(0..3)];
        let m = lift(&[a], &lift_ctx, t_exp, &copts).unwrap();
        l += is_superregular(&m, &exhaustive()).verdict as usize;
        let j = r.gen_range(0..3);
        fr += is_superregular(&mat_frobenius(&m, j).unwrap(), &exhaustive()).verdict as usize;
    }
    record("lift (one factor)", l, 25);
    record("Frobenius", fr, 25);

    let mut ok = 0;
    for _ in 0..100 {
        let n = r.gen_range(1..=5);
        let m = random_matrix(ext, n, n, &mut r).unwrap();
        let k = r.gen_range(0..n);
        let x: Vec<_> = (0..n).map(|_| ext.from_index(r.gen_range(0..125))).collect();
        let y: Vec<_> = (0..n).map(|_| ext.from_index(r.gen_range(0..125))).collect();
        let (a, b) = (ext.from_index(r.gen_range(0..125)), ext.from_index(r.gen_range(0..125)));
        let row: Vec<_> = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| ext.add(&ext.mul(&a, xi).unwrap(), &ext.mul(&b, yi).unwrap()).unwrap())
            .collect();
        let m = m.with_row(k, &row).unwrap();
        ok += row_multilinearity_check(&m, k, &x, &y, &a, &b).unwrap() as usize;
    }
    record("row multilinearity", ok, 100);

    let mut ok = 0;
    for _ in 0..50 {
        let a = random_matrix(&f7, r.gen_range(1..=5), r.gen_range(1..=5), &mut r).unwrap();
        let one = report_to_json(&is_superregular(&a, &VerifyOptions::with_jobs(1))).to_string();
        let many = report_to_json(&is_superregular(&a, &VerifyOptions::with_jobs(8))).to_string();
        ok += (one == many) as usize;
    }
    record("serial/parallel", ok, 50);
    outcome(all, parts.join(", "))
}

// 10 ------------------------------------------------------------------------

fn agree(m: &Mat, b: Option<usize>) -> bool {
    let (fast, slow) = match b {
        None => (is_superregular(m, &VerifyOptions::default()), brute_superregular(m)),
        Some(b) => (
            is_block_superregular_mat(m, b, &VerifyOptions::default()).unwrap(),
            brute_block_superregular(m, b),
        ),
    };
    let w = fast.witness.map(|w| (w.rows.as_slice().to_vec(), w.cols.as_slice().to_vec()));
    fast.verdict == slow.verdict && w == slow.first_singular
}

fn corpus_matrices() -> Vec<(Mat, Option<usize>)> {
    let f2 = FieldCtx::prime(2).unwrap();
    let f7 = FieldCtx::prime(7).unwrap();
    let a24 = Mat::from_ints(&f2, &[[1, 0, 1, 0], [0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1]]).unwrap();
    let m22 = Mat::from_ints(&f7, &[[6, 2, 2], [4, 3, 1], [3, 3, 4]]).unwrap();
    let a = Mat::from_ints(&f7, &[[1, 2], [3, 4]]).unwrap();
    let b = Mat::from_ints(&f7, &[[1, 1], [0, 3]]).unwrap();
    let k31 = a.kron(&b).unwrap();
    let m34 = a.kron(&a).unwrap().kron(&b).unwrap();
    let ctx = CompanionCtx::parse(5, "x^3+3x+3").unwrap();
    let a310 = Mat::from_ints(ctx.base(), &[[1, 2, 2], [2, 1, 3], [3, 2, 4]]).unwrap();
    let lifted = ctx.Psi_inv_mat(&a310.kron(ctx.matrix()).unwrap()).unwrap();
    let ctx43 = CompanionCtx::parse(13, "x^3+11x+6").unwrap();
    let a43 = Mat::from_ints(ctx43.base(), &[[6, 9, 2, 6], [4, 3, 8, 1], [3, 3, 4, 9], [3, 9, 9, 5]]).unwrap();
    let m43 = ctx43.Psi_inv_mat(&a43.kron(ctx43.matrix()).unwrap()).unwrap();
    vec![
        (m22, None),
        (a24.clone(), None),
        (a24, Some(2)),
        (k31.clone(), None),
        (k31, Some(2)),
        (m34.clone(), Some(2)),
        (m34, Some(4)),
        (a310.kron(ctx.matrix()).unwrap(), Some(3)),
        (lifted, None),
        (m43, None),
    ]
}

fn criterion_10() -> Outcome {
    let f5 = FieldCtx::prime(5).unwrap();
    let mut r = rng(1000);
    let mut ok = 0;
    for _ in 0..1000 {
        let (m, t) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let a = if r.gen_bool(0.5) {
            Mat::from_fn(&f5, m, t, |_, _| f5.from_u64(r.gen_range(1..5))).unwrap()
        } else {
            random_matrix(&f5, m, t, &mut r).unwrap()
        };
        ok += agree(&a, None) as usize;
    }
    let corpus = corpus_matrices();
    let cok = corpus.iter().filter(|(m, b)| agree(m, *b)).count();
    outcome(
        ok == 1000 && cok == corpus.len(),
        format!("random {ok}/1000, corpus {cok}/{}", corpus.len()),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut unexpected = 0;
    let mut line = |n: usize, name: &str, o: Outcome, known: Option<bool>| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = match known {
            Some(true) if !o.pass => " (known: printed table errata)",
            _ => "",
        };
        println!("{tag} criterion {n:>2} {name}: {}{note}", o.detail);
        let fine = match known {
            Some(expected_failure) => o.pass || expected_failure,
            None => o.pass,
        };
        unexpected += (!fine) as usize;
    };
    line(1, "Table 1 reproduction", criterion_1(), None);
    line(2, "Example 2.4", criterion_from_case("ex2.4"), None);
    line(3, "Example 3.1", criterion_from_case("ex3.1"), None);
    line(4, "Example 3.4", criterion_from_case("ex3.4"), None);
    line(5, "Example 3.10", criterion_5(), None);
    line(6, "Example 3.11", criterion_from_case("ex3.11"), None);
    let (c7, expected) = criterion_7();
    line(7, "Example 4.3 / Tables A.2-A.3", c7, Some(expected));
    let c8 = {
        let (p1, f1) = case_ok("ex4.5");
        let (p2, f2) = case_ok("tableA5");
        outcome(p1 && p2, if p1 && p2 { "constants, 200/200 superregular".into() } else { format!("{f1} {f2}") })
    };
    line(8, "Example 4.5 / Table A.5", c8, None);
    line(9, "property suites", criterion_9(), None);
    line(10, "oracle equivalence", criterion_10(), None);
    println!("acceptance finished in {:.1?}", start.elapsed());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion outcome(s) not as analysed");
        ExitCode::FAILURE
    }
}
