//! Dense matrices over a [`FieldCtx`] with exact determinants, Kronecker
//! products and submatrix selection.
//!
//! Matrices are immutable values: every operation returns a new matrix.
//! Indices are 0-based here; human-facing output converts to 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ElemStyle, FieldCtx, FieldElem};

/// A strictly increasing list of 0-based row or column indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        Ok(Self(indices))
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Builds a set from 1-based indices.
    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, limit: 0 });
        }
        Self::new(indices.iter().map(|i| i - 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Expands block indices into element indices for blocks of size `b`.
    pub fn expand_blocks(&self, b: usize) -> IndexSet {
        IndexSet(self.0.iter().flat_map(|&i| i * b..(i + 1) * b).collect())
    }

    fn check_bounds(&self, limit: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= limit => Err(Error::IndexOutOfRange { index: last, limit }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

/// Renders 1-based, e.g. `{1,2}`.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Dense row-major matrix whose entries all belong to one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
    ctx: FieldCtx,
}

impl Mat {
    pub fn new(ctx: &FieldCtx, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !ctx.owns(e)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            rows,
            cols,
            entries,
            ctx: ctx.clone(),
        })
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(ctx, rows, cols, entries)
    }

    /// Matrix of prime-subfield elements from integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(ctx: &FieldCtx, rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        if rows.iter().any(|row| row.as_ref().len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_fn(ctx, r, c, |i, j| ctx.from_i64(rows[i].as_ref()[j]))
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(ctx, rows, cols, |_, _| ctx.zero())
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Result<Self> {
        Self::from_fn(ctx, n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    /// Entry at `(i, j)`; panics when out of bounds.
    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn same_ctx(&self, other: &Mat) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Entrywise map staying in the same field.
    pub fn map(&self, mut f: impl FnMut(&FieldElem) -> FieldElem) -> Result<Mat> {
        Mat::new(&self.ctx, self.rows, self.cols, self.entries.iter().map(&mut f).collect())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
            .expect("dimensions preserved")
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        Mat::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.ctx.add_raw(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.map(|e| self.ctx.neg_raw(e)).expect("same shape")
    }

    pub fn scale(&self, s: &FieldElem) -> Result<Mat> {
        if !self.ctx.owns(s) {
            return Err(Error::ContextMismatch);
        }
        self.map(|e| self.ctx.mul_raw(s, e))
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        Mat::from_fn(ctx, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(ctx.zero(), |acc, k| {
                ctx.add_raw(&acc, &ctx.mul_raw(self.get(i, k), other.get(k, j)))
            })
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Mat::identity(&self.ctx, self.rows)?;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut buf = self.entries.clone();
        Ok(det_in_place(&self.ctx, &mut buf, self.rows))
    }

    pub fn is_singular(&self) -> Result<bool> {
        Ok(self.det()?.is_zero())
    }

    /// Determinant of the square selection `rows × cols`, reusing `scratch`.
    /// Indices must be in bounds; no allocation when `scratch` is large enough.
    pub(crate) fn det_of_selection(
        &self,
        rows: &[usize],
        cols: &[usize],
        scratch: &mut Vec<FieldElem>,
    ) -> FieldElem {
        debug_assert_eq!(rows.len(), cols.len());
        scratch.clear();
        for &i in rows {
            for &j in cols {
                scratch.push(self.entries[i * self.cols + j].clone());
            }
        }
        det_in_place(&self.ctx, scratch, rows.len())
    }

    /// Inverse, or `None` if singular.
    pub fn inverse(&self) -> Result<Option<Mat>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let ctx = &self.ctx;
        let w = 2 * n;
        let mut aug: Vec<FieldElem> = Vec::with_capacity(n * w);
        for i in 0..n {
            aug.extend_from_slice(self.row(i));
            aug.extend((0..n).map(|j| if i == j { ctx.one() } else { ctx.zero() }));
        }
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !aug[r * w + c].is_zero()) else {
                return Ok(None);
            };
            if piv != c {
                for k in 0..w {
                    aug.swap(piv * w + k, c * w + k);
                }
            }
            let inv = ctx.inv_raw(&aug[c * w + c]).expect("pivot is nonzero");
            for k in 0..w {
                aug[c * w + k] = ctx.mul_raw(&aug[c * w + k], &inv);
            }
            for r in 0..n {
                if r == c || aug[r * w + c].is_zero() {
                    continue;
                }
                let factor = aug[r * w + c].clone();
                for k in 0..w {
                    let t = ctx.mul_raw(&factor, &aug[c * w + k]);
                    aug[r * w + k] = ctx.sub_raw(&aug[r * w + k], &t);
                }
            }
        }
        Mat::from_fn(ctx, n, n, |i, j| aug[i * w + n + j].clone()).map(Some)
    }

    /// Kronecker product: the block matrix `[a_ij · other]`.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.same_ctx(other)?;
        let (n, s) = (other.rows, other.cols);
        Mat::from_fn(&self.ctx, self.rows * n, self.cols * s, |i, j| {
            self.ctx
                .mul_raw(self.get(i / n, j / s), other.get(i % n, j % s))
        })
    }

    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Mat> {
        rows.check_bounds(self.rows)?;
        cols.check_bounds(self.cols)?;
        let (r, c) = (rows.as_slice(), cols.as_slice());
        Mat::from_fn(&self.ctx, r.len(), c.len(), |i, j| self.get(r[i], c[j]).clone())
    }

    /// Copy with row `k` replaced.
    pub fn with_row(&self, k: usize, row: &[FieldElem]) -> Result<Mat> {
        if k >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: k,
                limit: self.rows,
            });
        }
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries[k * self.cols..(k + 1) * self.cols].clone_from_slice(row);
        Mat::new(&self.ctx, self.rows, self.cols, entries)
    }

    /// Copy with rows reordered: output row `i` is input row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Mat> {
        let mut seen = vec![false; self.rows];
        if order.len() != self.rows
            || order
                .iter()
                .any(|&r| r >= self.rows || std::mem::replace(&mut seen[r], true))
        {
            return Err(Error::DimensionMismatch(
                "row order is not a permutation".into(),
            ));
        }
        Mat::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.get(order[i], j).clone())
    }

    /// Assembles a matrix from a rectangular grid of conformable blocks.
    pub fn from_blocks(grid: &[Vec<Mat>]) -> Result<Mat> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("empty block grid".into()))?;
        let ctx = first.ctx.clone();
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for row in grid {
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
        }
        for (bi, row) in grid.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                first.same_ctx(b)?;
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi}, {bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let total_r: usize = heights.iter().sum();
        let total_c: usize = widths.iter().sum();
        let mut entries = Vec::with_capacity(total_r * total_c);
        for (bi, row) in grid.iter().enumerate() {
            for i in 0..heights[bi] {
                for b in row {
                    entries.extend_from_slice(b.row(i));
                }
            }
        }
        Mat::new(&ctx, total_r, total_c, entries)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[Mat]) -> Result<Mat> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no blocks".into()))?;
        let grid: Vec<Vec<Mat>> = blocks
            .iter()
            .enumerate()
            .map(|(i, bi)| {
                blocks
                    .iter()
                    .enumerate()
                    .map(|(j, bj)| {
                        if i == j {
                            Ok(bi.clone())
                        } else {
                            Mat::zeros(&first.ctx, bi.rows, bj.cols)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Mat::from_blocks(&grid)
    }

    /// Renders the matrix as a whitespace-aligned grid.
    pub fn display(&self, style: ElemStyle) -> String {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|e| self.ctx.format(e, style))
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(ElemStyle::Coeffs))
    }
}

/// Determinant of the `n×n` row-major buffer, destroying it.
pub(crate) fn det_in_place(ctx: &FieldCtx, a: &mut [FieldElem], n: usize) -> FieldElem {
    let mut det = ctx.one();
    let mut negate = false;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
            return ctx.zero();
        };
        if piv != c {
            for k in c..n {
                a.swap(piv * n + k, c * n + k);
            }
            negate = !negate;
        }
        let pivot = a[c * n + c].clone();
        det = ctx.mul_raw(&det, &pivot);
        if c + 1 == n {
            break;
        }
        let inv = ctx.inv_raw(&pivot).expect("pivot is nonzero");
        for r in c + 1..n {
            if a[r * n + c].is_zero() {
                continue;
            }
            let factor = ctx.mul_raw(&a[r * n + c], &inv);
            for k in c + 1..n {
                let t = ctx.mul_raw(&factor, &a[c * n + k]);
                a[r * n + k] = ctx.sub_raw(&a[r * n + k], &t);
            }
        }
    }
    if negate {
        ctx.neg_raw(&det)
    } else {
        det
    }
}

/// `det [[A, B], [C, D]] = det(A) · det(D − C A⁻¹ B)` for nonsingular square `A`.
pub fn schur_det(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<FieldElem> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !d.is_square()
        || b.rows != a.rows
        || c.cols != a.cols
        || b.cols != d.cols
        || c.rows != d.rows
    {
        return Err(Error::DimensionMismatch(
            "blocks are not conformable for [[A, B], [C, D]]".into(),
        ));
    }
    let a_inv = a.inverse()?.ok_or(Error::SingularA)?;
    let schur = d.sub(&c.mul(&a_inv)?.mul(b)?)?;
    a.ctx.mul(&a.det()?, &schur.det()?)
}

/// Checks `det(M) = a·det(M[k := X]) + b·det(M[k := Y])` where row `k` of `M`
/// equals `aX + bY`.
pub fn row_multilinearity_check(
    m: &Mat,
    k: usize,
    x: &[FieldElem],
    y: &[FieldElem],
    a: &FieldElem,
    b: &FieldElem,
) -> Result<bool> {
    let ctx = m.ctx();
    let with_x = m.with_row(k, x)?;
    let with_y = m.with_row(k, y)?;
    for v in [a, b].into_iter().chain(x).chain(y) {
        if !ctx.owns(v) {
            return Err(Error::ContextMismatch);
        }
    }
    let combined: Vec<FieldElem> = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| ctx.add_raw(&ctx.mul_raw(a, xi), &ctx.mul_raw(b, yi)))
        .collect();
    if combined.as_slice() != m.row(k) {
        return Err(Error::RowMismatch(k));
    }
    let lhs = m.det()?;
    let rhs = ctx.add_raw(
        &ctx.mul_raw(a, &with_x.det()?),
        &ctx.mul_raw(b, &with_y.det()?),
    );
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn ex22(f: &FieldCtx) -> Mat {
        Mat::from_ints(f, &[[6, 2, 2], [4, 3, 1], [3, 3, 4]]).unwrap()
    }

    #[test]
    fn determinants() {
        let f7 = gf(7);
        let a = Mat::from_ints(&f7, &[[1, 2], [3, 4]]).unwrap();
        assert_eq!(a.det().unwrap(), f7.from_u64(5));
        assert_eq!(Mat::identity(&f7, 5).unwrap().det().unwrap(), f7.one());
        // value frozen from the cofactor oracle in tests/linalg_oracle.rs
        assert_eq!(ex22(&f7).det().unwrap(), f7.from_u64(6));
        let single = Mat::from_ints(&f7, &[[3]]).unwrap();
        assert_eq!(single.det().unwrap(), f7.from_u64(3));
        let rect = Mat::zeros(&f7, 2, 3).unwrap();
        assert!(matches!(rect.det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn kronecker_example() {
        let f7 = gf(7);
        let a = Mat::from_ints(&f7, &[[1, 2], [3, 4]]).unwrap();
        let b = Mat::from_ints(&f7, &[[1, 1], [0, 3]]).unwrap();
        let m = a.kron(&b).unwrap();
        let expected = Mat::from_ints(
            &f7,
            &[[1, 1, 2, 2], [0, 3, 0, 6], [3, 3, 4, 4], [0, 2, 0, 5]],
        )
        .unwrap();
        assert_eq!(m, expected);
        assert_eq!(m.det().unwrap(), f7.one());
        let one = Mat::identity(&f7, 1).unwrap();
        assert_eq!(a.kron(&one).unwrap(), a);
        let g5 = Mat::identity(&gf(5), 2).unwrap();
        assert_eq!(a.kron(&g5).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn submatrices() {
        let f7 = gf(7);
        let m = ex22(&f7);
        let s = m
            .submatrix(&IndexSet::new(vec![0, 1]).unwrap(), &IndexSet::new(vec![0, 1]).unwrap())
            .unwrap();
        assert_eq!(s, Mat::from_ints(&f7, &[[6, 2], [4, 3]]).unwrap());
        assert_eq!(s.det().unwrap(), f7.from_u64(3));
        let e = m
            .submatrix(&IndexSet::new(vec![0]).unwrap(), &IndexSet::new(vec![2]).unwrap())
            .unwrap();
        assert_eq!(e, Mat::from_ints(&f7, &[[2]]).unwrap());
        let s = m
            .submatrix(&IndexSet::new(vec![1, 2]).unwrap(), &IndexSet::new(vec![1, 2]).unwrap())
            .unwrap();
        assert_eq!(s.det().unwrap(), f7.from_u64(2));
        assert_eq!(m.submatrix(&IndexSet::full(3), &IndexSet::full(3)).unwrap(), m);
        assert!(matches!(
            m.submatrix(&IndexSet::new(vec![3]).unwrap(), &IndexSet::full(1)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(IndexSet::new(vec![1, 1]).unwrap_err(), Error::UnsortedIndexSet);
        assert_eq!(IndexSet::new(vec![0, 2]).unwrap().to_string(), "{1,3}");
    }

    #[test]
    fn schur_cases() {
        let f7 = gf(7);
        let i2 = Mat::identity(&f7, 2).unwrap();
        let z = Mat::zeros(&f7, 2, 2).unwrap();
        let d = Mat::from_ints(&f7, &[[2, 5], [1, 6]]).unwrap();
        assert_eq!(schur_det(&i2, &z, &z, &d).unwrap(), d.det().unwrap());
        let sing = Mat::from_ints(&f7, &[[1, 2], [2, 4]]).unwrap();
        assert_eq!(schur_det(&sing, &z, &z, &d).unwrap_err(), Error::SingularA);
        let bad = Mat::zeros(&f7, 3, 2).unwrap();
        assert!(matches!(
            schur_det(&i2, &bad, &z, &d),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn multilinearity_trivial_splits() {
        let f13 = gf(13);
        let m = Mat::from_ints(&f13, &[[6, 9, 2], [4, 3, 8], [3, 3, 4]]).unwrap();
        let row = m.row(1).to_vec();
        let other: Vec<_> = [1, 2, 3].iter().map(|&v| f13.from_u64(v)).collect();
        assert!(row_multilinearity_check(&m, 1, &row, &other, &f13.one(), &f13.zero()).unwrap());
        assert!(row_multilinearity_check(&m, 1, &other, &row, &f13.zero(), &f13.one()).unwrap());
        assert_eq!(
            row_multilinearity_check(&m, 1, &other, &other, &f13.one(), &f13.zero()).unwrap_err(),
            Error::RowMismatch(1)
        );
    }

    #[test]
    fn inverse_and_blocks() {
        let f5 = gf(5);
        let a = Mat::from_ints(&f5, &[[1, 2, 2], [2, 1, 3], [3, 2, 4]]).unwrap();
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(&f5, 3).unwrap());
        let sing = Mat::from_ints(&f5, &[[1, 2], [2, 4]]).unwrap();
        assert!(sing.inverse().unwrap().is_none());
        let d = Mat::block_diag(&[a.clone(), sing.clone()]).unwrap();
        assert_eq!(d.rows(), 5);
        assert_eq!(d.get(3, 4), &f5.from_u64(2));
        assert!(d.get(0, 4).is_zero());
        let perm = a.permute_rows(&[2, 0, 1]).unwrap();
        assert_eq!(perm.row(0), a.row(2));
        assert!(a.permute_rows(&[0, 0, 1]).is_err());
    }
}
