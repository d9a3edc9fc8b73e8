//! Slow, independently written reference implementations for the srforge
//! test suites.
//!
//! Nothing here shares an algorithm with the library paths it checks:
//! determinants are cofactor expansions, minor enumeration is a plain
//! recursive generator with no early exit, and polynomial orders are found
//! by repeated multiplication. Only scalar field arithmetic is borrowed from
//! `FieldCtx`.

use srforge::{FieldCtx, FieldElem, Mat};

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &Mat) -> FieldElem {
    assert_eq!(m.rows(), m.cols(), "cofactor_det needs a square matrix");
    let rows: Vec<Vec<FieldElem>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    laplace(m.ctx(), &rows)
}

fn laplace(ctx: &FieldCtx, rows: &[Vec<FieldElem>]) -> FieldElem {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = ctx.zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<FieldElem>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = ctx.mul(&rows[0][j], &laplace(ctx, &minor)).unwrap();
        acc = if j % 2 == 0 {
            ctx.add(&acc, &term).unwrap()
        } else {
            ctx.sub(&acc, &term).unwrap()
        };
    }
    acc
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Outcome of a brute-force scan over every square selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteReport {
    pub verdict: bool,
    /// First singular selection in (size, rows, cols) order, 0-based.
    pub first_singular: Option<(Vec<usize>, Vec<usize>)>,
    /// Every selection visited (no early exit).
    pub total: u64,
}

fn scan(m: &Mat, block: usize) -> BruteReport {
    let (br, bc) = (m.rows() / block, m.cols() / block);
    let mut first = None;
    let mut total = 0u64;
    for k in 1..=br.min(bc) {
        for rs in subsets(br, k) {
            for cs in subsets(bc, k) {
                total += 1;
                let sub = Mat::from_fn(m.ctx(), k * block, k * block, |i, j| {
                    let r = rs[i / block] * block + i % block;
                    let c = cs[j / block] * block + j % block;
                    m.get(r, c).clone()
                })
                .unwrap();
                if first.is_none() && cofactor_det(&sub).is_zero() {
                    first = Some((rs.clone(), cs.clone()));
                }
            }
        }
    }
    BruteReport {
        verdict: first.is_none(),
        first_singular: first,
        total,
    }
}

/// Every square submatrix, cofactor determinants.
pub fn brute_superregular(m: &Mat) -> BruteReport {
    scan(m, 1)
}

/// Every square full-block submatrix for blocks of size `b`; selections are
/// reported in block coordinates.
pub fn brute_block_superregular(m: &Mat, b: usize) -> BruteReport {
    assert!(m.rows() % b == 0 && m.cols() % b == 0);
    scan(m, b)
}

/// `a·b mod f` on raw coefficient vectors over GF(p); `f` monic.
fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (n..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for k in 0..=n {
                prod[d - n + k] = (prod[d - n + k] + p * p - c * f[k]) % p;
            }
        }
    }
    prod.truncate(n);
    prod
}

/// Multiplicative order of `x` in GF(p)[x]/(f) by repeated multiplication,
/// or `None` if `x` is not a unit of finite order there (never returns to 1
/// within `p^n` steps). `f` is monic, constant term first, small `p`.
pub fn order_of_x(f: &[u64], p: u64) -> Option<u64> {
    let n = f.len() - 1;
    let q = p.pow(n as u32);
    let mut one = vec![0u64; n];
    one[0] = 1 % p;
    let mut x = vec![0u64; n.max(2)];
    x[1] = 1;
    let x = mulmod(&x, &one, f, p); // reduce x mod f (matters for n = 1)
    let mut cur = x.clone();
    for k in 1..=q {
        if cur == one {
            return Some(k);
        }
        cur = mulmod(&cur, &x, f, p);
    }
    None
}

/// Primitive iff `x` has order `p^n - 1`; that alone forces irreducibility.
pub fn brute_is_primitive(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    order_of_x(f, p) == Some(p.pow(n as u32) - 1)
}

/// Roots in GF(p) of a polynomial given constant-first, by evaluation.
pub fn prime_field_roots(f: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}
