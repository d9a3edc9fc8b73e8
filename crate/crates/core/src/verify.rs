//! Exhaustive superregularity and block-superregularity checks.
//!
//! Square selections are visited in a fixed order: minor size ascending,
//! then row sets lexicographically, then column sets lexicographically. The
//! reported witness is the first singular selection in that order and
//! `minors_checked` counts selections up to and including it, so a run with
//! any number of worker threads yields the same report as a serial run.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::companion::BlockMat;
use crate::error::{Error, Result};
use crate::field::{ElemStyle, FieldCtx, FieldElem};
use crate::linalg::{IndexSet, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Visit every selection instead of stopping at the first singular one.
    pub exhaustive: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            exhaustive: false,
        }
    }
}

impl VerifyOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        Self {
            jobs: jobs.max(1),
            ..Self::default()
        }
    }

    pub fn exhaustive(mut self, yes: bool) -> Self {
        self.exhaustive = yes;
        self
    }
}

/// A singular square selection, 0-based; block coordinates for block checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub rows: IndexSet,
    pub cols: IndexSet,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub minors_checked: u64,
    pub elapsed: Duration,
    /// `Some(b)` for a b-block check.
    pub block_size: Option<usize>,
}

impl VerifyReport {
    /// Equality on everything except wall-clock time.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        self.verdict == other.verdict
            && self.witness == other.witness
            && self.minors_checked == other.minors_checked
            && self.block_size == other.block_size
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.block_size {
            Some(b) => format!("{b}-block superregular"),
            None => "superregular".to_string(),
        };
        writeln!(f, "verdict: {}", if self.verdict { kind } else { format!("NOT {kind}") })?;
        if let Some(w) = &self.witness {
            let unit = if self.block_size.is_some() { "block " } else { "" };
            writeln!(
                f,
                "witness: {unit}rows {} cols {} (singular, 1-based)",
                w.rows, w.cols
            )?;
        }
        writeln!(f, "minors checked: {}", self.minors_checked)?;
        write!(f, "elapsed: {:.3?}", self.elapsed)
    }
}

fn pool(jobs: usize) -> Arc<ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    pools
        .entry(jobs)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("thread pool"),
            )
        })
        .clone()
}

/// Number of `k`-subsets of an `n`-set, saturating.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

fn scan(m: &Mat, block: usize, opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let (br, bc) = (m.rows() / block, m.cols() / block);
    let mut checked = 0u64;
    let mut witness: Option<Witness> = None;
    let pool = (opts.jobs > 1).then(|| pool(opts.jobs));

    for k in 1..=br.min(bc) {
        let row_sets: Vec<Vec<usize>> = (0..br).combinations(k).collect();
        let col_sets: Vec<Vec<usize>> = (0..bc).combinations(k).collect();
        let expand = |sets: &[Vec<usize>]| -> Vec<Vec<usize>> {
            sets.iter()
                .map(|s| s.iter().flat_map(|&i| i * block..(i + 1) * block).collect())
                .collect()
        };
        let (rows_x, cols_x) = (expand(&row_sets), expand(&col_sets));
        let nc = col_sets.len();
        let total = row_sets.len() * nc;
        let singular = |scratch: &mut Vec<FieldElem>, idx: usize| {
            m.det_of_selection(&rows_x[idx / nc], &cols_x[idx % nc], scratch)
                .is_zero()
        };

        let first = match &pool {
            None => {
                let mut scratch = Vec::new();
                (0..total).find(|&idx| singular(&mut scratch, idx))
            }
            Some(pool) => pool.install(|| {
                (0..total)
                    .into_par_iter()
                    .map_init(Vec::new, |scratch, idx| (idx, singular(scratch, idx)))
                    .find_first(|&(_, s)| s)
                    .map(|(idx, _)| idx)
            }),
        };

        match first {
            Some(idx) if witness.is_none() => {
                witness = Some(Witness {
                    rows: IndexSet::new(row_sets[idx / nc].clone()).expect("sorted"),
                    cols: IndexSet::new(col_sets[idx % nc].clone()).expect("sorted"),
                });
                if !opts.exhaustive {
                    checked += idx as u64 + 1;
                    break;
                }
                checked += total as u64;
            }
            _ => checked += total as u64,
        }
    }

    VerifyReport {
        verdict: witness.is_none(),
        witness,
        minors_checked: checked,
        elapsed: start.elapsed(),
        block_size: (block > 1).then_some(block),
    }
}

/// True iff every square submatrix is nonsingular. Rectangular input allowed.
pub fn is_superregular(m: &Mat, opts: &VerifyOptions) -> VerifyReport {
    scan(m, 1, opts)
}

/// Block check on a plain matrix with blocks of size `b`.
pub fn is_block_superregular_mat(m: &Mat, b: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    if b == 0 || m.rows() % b != 0 || m.cols() % b != 0 {
        return Err(Error::NotBlockAligned {
            rows: m.rows(),
            cols: m.cols(),
            block: b,
        });
    }
    let mut report = scan(m, b, opts);
    report.block_size = Some(b);
    Ok(report)
}

/// True iff every square submatrix made of whole blocks is nonsingular.
pub fn is_block_superregular(b: &BlockMat, opts: &VerifyOptions) -> Result<VerifyReport> {
    is_block_superregular_mat(b.inner(), b.block_size(), opts)
}

/// All `k×k` minors of a matrix, keyed by row and column sets.
#[derive(Clone, Debug)]
pub struct MinorTable {
    pub k: usize,
    pub row_sets: Vec<IndexSet>,
    pub col_sets: Vec<IndexSet>,
    /// Row-major over `row_sets × col_sets`.
    pub values: Vec<FieldElem>,
    ctx: FieldCtx,
}

pub fn minor_table(m: &Mat, k: usize) -> Result<MinorTable> {
    let limit = m.rows().min(m.cols());
    if k == 0 || k > limit {
        return Err(Error::SizeTooLarge { k, limit });
    }
    let row_sets: Vec<IndexSet> = (0..m.rows())
        .combinations(k)
        .map(|s| IndexSet::new(s).expect("sorted"))
        .collect();
    let col_sets: Vec<IndexSet> = (0..m.cols())
        .combinations(k)
        .map(|s| IndexSet::new(s).expect("sorted"))
        .collect();
    let mut scratch = Vec::new();
    let mut values = Vec::with_capacity(row_sets.len() * col_sets.len());
    for r in &row_sets {
        for c in &col_sets {
            values.push(m.det_of_selection(r.as_slice(), c.as_slice(), &mut scratch));
        }
    }
    Ok(MinorTable {
        k,
        row_sets,
        col_sets,
        values,
        ctx: m.ctx().clone(),
    })
}

impl MinorTable {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn get(&self, rows: &IndexSet, cols: &IndexSet) -> Option<&FieldElem> {
        let r = self.row_sets.iter().position(|s| s == rows)?;
        let c = self.col_sets.iter().position(|s| s == cols)?;
        self.values.get(r * self.col_sets.len() + c)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Iterates `(rows, cols, determinant)` in table order.
    pub fn iter(&self) -> impl Iterator<Item = (&IndexSet, &IndexSet, &FieldElem)> {
        let nc = self.col_sets.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (&self.row_sets[i / nc], &self.col_sets[i % nc], v))
    }

    /// Aligned grid with 1-based `Rows\Cols` headers.
    pub fn to_text(&self, style: ElemStyle) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["Rows\\Cols".to_string()];
        header.extend(self.col_sets.iter().map(ToString::to_string));
        grid.push(header);
        let nc = self.col_sets.len();
        for (i, r) in self.row_sets.iter().enumerate() {
            let mut line = vec![r.to_string()];
            line.extend(
                self.values[i * nc..(i + 1) * nc]
                    .iter()
                    .map(|v| self.ctx.format(v, style)),
            );
            grid.push(line);
        }
        let widths: Vec<usize> = (0..=nc)
            .map(|j| grid.iter().map(|l| l[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in grid {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(j, (cell, &w))| {
                    if j == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Long-form CSV: `rows,cols,det` with 1-based quoted index sets.
    pub fn to_csv(&self, style: ElemStyle) -> String {
        let mut out = String::from("rows,cols,det\n");
        for (r, c, v) in self.iter() {
            out.push_str(&format!("\"{r}\",\"{c}\",\"{}\"\n", self.ctx.format(v, style)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex22() -> Mat {
        let f7 = FieldCtx::prime(7).unwrap();
        Mat::from_ints(&f7, &[[6, 2, 2], [4, 3, 1], [3, 3, 4]]).unwrap()
    }

    fn ex24() -> Mat {
        let f2 = FieldCtx::prime(2).unwrap();
        Mat::from_ints(&f2, &[[1, 0, 1, 0], [0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn superregular_example() {
        let r = is_superregular(&ex22(), &VerifyOptions::default());
        assert!(r.verdict);
        assert_eq!(r.minors_checked, 19);
        assert!(r.witness.is_none());
    }

    #[test]
    fn block_but_not_plain() {
        let a = ex24();
        let r = is_superregular(&a, &VerifyOptions::default());
        assert!(!r.verdict);
        let w = r.witness.unwrap();
        assert_eq!(w.rows.len(), 1);
        assert!(a.get(w.rows.as_slice()[0], w.cols.as_slice()[0]).is_zero());
        let b = is_block_superregular_mat(&a, 2, &VerifyOptions::default()).unwrap();
        assert!(b.verdict);
        assert_eq!(b.minors_checked, 5);
        assert!(matches!(
            is_block_superregular_mat(&a, 3, &VerifyOptions::default()),
            Err(Error::NotBlockAligned { .. })
        ));
    }

    #[test]
    fn identity_witness_is_first_zero() {
        let f5 = FieldCtx::prime(5).unwrap();
        let r = is_superregular(&Mat::identity(&f5, 2).unwrap(), &VerifyOptions::default());
        let w = r.witness.unwrap();
        assert_eq!((w.rows.as_slice(), w.cols.as_slice()), (&[0][..], &[1][..]));
        assert_eq!(r.minors_checked, 2);
    }

    #[test]
    fn exhaustive_counts_everything() {
        let opts = VerifyOptions::default().exhaustive(true);
        let f5 = FieldCtx::prime(5).unwrap();
        let m = Mat::identity(&f5, 3).unwrap();
        let r = is_superregular(&m, &opts);
        assert_eq!(r.minors_checked, binomial(6, 3) - 1);
        assert!(!r.verdict);
        let rect = Mat::from_ints(&f5, &[[1, 2, 3, 4], [1, 3, 2, 4]]).unwrap();
        assert_eq!(is_superregular(&rect, &opts).minors_checked, binomial(6, 2) - 1);
    }

    #[test]
    fn parallel_matches_serial() {
        let a = ex24();
        let serial = is_superregular(&a, &VerifyOptions::with_jobs(1));
        let par = is_superregular(&a, &VerifyOptions::with_jobs(4));
        assert!(serial.same_outcome(&par));
    }

    #[test]
    fn table_one() {
        let t = minor_table(&ex22(), 2).unwrap();
        let got: Vec<u64> = t.values.iter().map(|v| v.as_ground().unwrap()).collect();
        assert_eq!(got, vec![3, 5, 3, 5, 4, 2, 3, 6, 2]);
        let text = t.to_text(ElemStyle::Coeffs);
        assert!(text.starts_with("Rows\\Cols | {1,2} | {1,3} | {2,3}"));
        let k1 = minor_table(&ex22(), 1).unwrap();
        assert_eq!(k1.values, ex22().entries().to_vec());
        assert!(matches!(minor_table(&ex22(), 4), Err(Error::SizeTooLarge { .. })));
    }
}
