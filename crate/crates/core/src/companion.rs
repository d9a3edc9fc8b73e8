//! Companion matrices of primitive polynomials and the isomorphism between
//! GF(p^n) and the matrix ring GF(p)[C].
//!
//! Convention: `C` has 1s on the subdiagonal and `(-c_0, ..., -c_{n-1})` in
//! its last column, so `C e_i = e_{i+1}` for `i < n` and `{C^i e_1}` is the
//! standard basis. That makes membership in GF(p)[C] a matter of reading
//! the first column and checking the result.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::Mat;
use crate::poly::Poly;

/// A primitive polynomial with its companion matrix and the extension field
/// it defines.
#[derive(Clone, Debug)]
pub struct CompanionCtx {
    poly: Poly,
    base: FieldCtx,
    ext: FieldCtx,
    c: Mat,
    // C^0 .. C^{n-1}
    powers: Vec<Mat>,
    generator_exp: u64,
}

/// Companion matrix of `poly` over GF(p). Fails unless `poly` is primitive.
pub fn companion(poly: &Poly, p: u64) -> Result<CompanionCtx> {
    CompanionCtx::new(poly, p)
}

impl CompanionCtx {
    pub fn new(poly: &Poly, p: u64) -> Result<Self> {
        let base = FieldCtx::prime(p)?;
        let poly = Poly::new(p, poly.coeffs().iter().copied());
        if poly.degree().unwrap_or(0) == 0 || !poly.is_monic() {
            return Err(Error::NonMonicModulus(poly.to_string()));
        }
        if !poly.is_primitive() {
            return Err(Error::NotPrimitive(poly.to_string(), p));
        }
        let ext = FieldCtx::new(p, poly.clone())?;
        let n = ext.degree();
        let c = Mat::from_fn(&base, n, n, |i, j| {
            if j == n - 1 {
                base.from_u64((p - poly.coeff(i)) % p)
            } else if i == j + 1 {
                base.one()
            } else {
                base.zero()
            }
        })?;
        let mut powers = vec![Mat::identity(&base, n)?];
        for i in 1..n {
            powers.push(powers[i - 1].mul(&c)?);
        }
        Ok(Self {
            poly,
            base,
            ext,
            c,
            powers,
            generator_exp: 1,
        })
    }

    /// Parses the polynomial in `x^3+3x+3` syntax.
    pub fn parse(p: u64, poly: &str) -> Result<Self> {
        Self::new(&Poly::parse(poly, p)?, p)
    }

    /// Selects `C^t` as the generator used by lifting constructions.
    /// `t` must be coprime to `p^n - 1` so that `C^t` still generates `<C>`.
    pub fn with_generator_exponent(mut self, t: u64) -> Result<Self> {
        let group = self.ext.order() - 1;
        if t == 0 || arith::gcd(t, group) != 1 {
            return Err(Error::BadGeneratorExponent {
                exponent: t,
                group_order: group,
            });
        }
        self.generator_exp = t;
        Ok(self)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// GF(p), the field the blocks live in.
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// GF(p^n) defined by the polynomial.
    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn matrix(&self) -> &Mat {
        &self.c
    }

    pub fn generator_exponent(&self) -> u64 {
        self.generator_exp
    }

    /// `C^t` for the configured generator exponent.
    pub fn generator(&self) -> Result<Mat> {
        self.c.pow(self.generator_exp)
    }

    fn check_square(&self, x: &Mat) -> Result<()> {
        let n = self.degree();
        if x.ctx() != &self.base {
            return Err(Error::ContextMismatch);
        }
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n}x{n}, got {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    fn combine(&self, coeffs: &[FieldElem]) -> Result<Mat> {
        let n = self.degree();
        let mut acc = Mat::zeros(&self.base, n, n)?;
        for (f, ci) in coeffs.iter().zip(&self.powers) {
            if !f.is_zero() {
                acc = acc.add(&ci.scale(f)?)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients `(f_0, ..., f_{n-1})` with `X = Σ f_i C^i`, or `None`
    /// when `X` is not in GF(p)[C].
    pub fn in_span(&self, x: &Mat) -> Result<Option<Vec<u64>>> {
        self.check_square(x)?;
        let coeffs: Vec<FieldElem> = (0..self.degree()).map(|i| x.get(i, 0).clone()).collect();
        if &self.combine(&coeffs)? != x {
            return Ok(None);
        }
        Ok(Some(
            coeffs.iter().map(|f| f.as_ground().expect("prime field")).collect(),
        ))
    }

    /// `ψ(Σ f_i α^i) = Σ f_i C^i`.
    pub fn psi(&self, a: &FieldElem) -> Result<Mat> {
        if !self.ext.owns(a) {
            return Err(Error::ContextMismatch);
        }
        let coeffs: Vec<FieldElem> = a
            .coeffs()
            .iter()
            .map(|&c| self.base.from_u64(c as u64))
            .collect();
        self.combine(&coeffs)
    }

    /// Inverse of [`psi`](Self::psi); `NotInSpan` reports block `(0, 0)`.
    pub fn psi_inv(&self, x: &Mat) -> Result<FieldElem> {
        self.psi_inv_at(x, 0, 0)
    }

    fn psi_inv_at(&self, x: &Mat, row: usize, col: usize) -> Result<FieldElem> {
        match self.in_span(x)? {
            Some(coeffs) => self.ext.element(&coeffs),
            None => Err(Error::NotInSpan { row, col }),
        }
    }

    /// Entrywise `ψ`: an `m×t` matrix over GF(p^n) becomes an `mn×tn`
    /// block matrix over GF(p).
    #[allow(non_snake_case)]
    pub fn Psi(&self, m: &Mat) -> Result<BlockMat> {
        if m.ctx() != &self.ext {
            return Err(Error::ContextMismatch);
        }
        let grid = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| self.psi(m.get(i, j))).collect())
            .collect::<Result<Vec<Vec<Mat>>>>()?;
        Ok(BlockMat {
            inner: Mat::from_blocks(&grid)?,
            block_size: self.degree(),
            companion: Some(self.clone()),
        })
    }

    /// Entrywise `ψ⁻¹` on a block matrix with `n×n` blocks.
    #[allow(non_snake_case)]
    pub fn Psi_inv(&self, b: &BlockMat) -> Result<Mat> {
        self.Psi_inv_mat(b.inner())
    }

    /// [`Psi_inv`](Self::Psi_inv) on a plain matrix, blocked by `n`.
    #[allow(non_snake_case)]
    pub fn Psi_inv_mat(&self, m: &Mat) -> Result<Mat> {
        let n = self.degree();
        if m.rows() % n != 0 || m.cols() % n != 0 {
            return Err(Error::NotBlockAligned {
                rows: m.rows(),
                cols: m.cols(),
                block: n,
            });
        }
        let (br, bc) = (m.rows() / n, m.cols() / n);
        let mut entries = Vec::with_capacity(br * bc);
        for i in 0..br {
            for j in 0..bc {
                entries.push(self.psi_inv_at(&block_of(m, n, i, j)?, i, j)?);
            }
        }
        Mat::new(&self.ext, br, bc, entries)
    }

    /// `k` with `X = C^k`, or `None` for the zero block. Requires `X` in
    /// GF(p)[C].
    pub fn power_of(&self, x: &Mat) -> Result<Option<u64>> {
        let a = self.psi_inv(x)?;
        if a.is_zero() {
            Ok(None)
        } else {
            self.ext.dlog(&a).map(Some)
        }
    }
}

fn block_of(m: &Mat, b: usize, i: usize, j: usize) -> Result<Mat> {
    Mat::from_fn(m.ctx(), b, b, |r, c| m.get(i * b + r, j * b + c).clone())
}

/// A matrix viewed as a grid of `b×b` blocks, optionally tied to a
/// companion context whose ring every block belongs to.
#[derive(Clone, Debug)]
pub struct BlockMat {
    inner: Mat,
    block_size: usize,
    companion: Option<CompanionCtx>,
}

impl PartialEq for BlockMat {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner && self.block_size == other.block_size
    }
}

impl BlockMat {
    pub fn new(inner: Mat, block_size: usize) -> Result<Self> {
        if block_size == 0 || inner.rows() % block_size != 0 || inner.cols() % block_size != 0 {
            return Err(Error::NotBlockAligned {
                rows: inner.rows(),
                cols: inner.cols(),
                block: block_size,
            });
        }
        Ok(Self {
            inner,
            block_size,
            companion: None,
        })
    }

    /// Attaches `ctx` after checking every block lies in GF(p)[C].
    pub fn with_companion(inner: Mat, ctx: &CompanionCtx) -> Result<Self> {
        let mut b = Self::new(inner, ctx.degree())?;
        if b.inner.ctx() != ctx.base() {
            return Err(Error::ContextMismatch);
        }
        for i in 0..b.block_rows() {
            for j in 0..b.block_cols() {
                if ctx.in_span(&b.block(i, j)?)?.is_none() {
                    return Err(Error::NotInSpan { row: i, col: j });
                }
            }
        }
        b.companion = Some(ctx.clone());
        Ok(b)
    }

    pub fn inner(&self) -> &Mat {
        &self.inner
    }

    pub fn into_inner(self) -> Mat {
        self.inner
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn companion(&self) -> Option<&CompanionCtx> {
        self.companion.as_ref()
    }

    pub fn block_rows(&self) -> usize {
        self.inner.rows() / self.block_size
    }

    pub fn block_cols(&self) -> usize {
        self.inner.cols() / self.block_size
    }

    /// Block `(i, j)`, 0-based.
    pub fn block(&self, i: usize, j: usize) -> Result<Mat> {
        if i >= self.block_rows() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.block_rows(),
            });
        }
        if j >= self.block_cols() {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.block_cols(),
            });
        }
        block_of(&self.inner, self.block_size, i, j)
    }

    /// Exponent grid: `Some(k)` for a block equal to `C^k`, `None` for `O`.
    /// Needs an attached companion context.
    pub fn power_pattern(&self) -> Option<Vec<Vec<Option<u64>>>> {
        let ctx = self.companion.as_ref()?;
        (0..self.block_rows())
            .map(|i| {
                (0..self.block_cols())
                    .map(|j| ctx.power_of(&self.block(i, j).ok()?).ok())
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }

    /// One line per block row, e.g. `C^1 C^32 O`.
    pub fn compact(&self) -> Option<String> {
        let pattern = self.power_pattern()?;
        let mut out = String::new();
        for row in pattern {
            let cells: Vec<String> = row
                .iter()
                .map(|k| k.map_or("O".to_string(), |k| format!("C^{k}")))
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        Some(out)
    }
}

impl fmt::Display for BlockMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner)
    }
}

/// Entrywise Frobenius `σ_j`.
pub fn mat_frobenius(m: &Mat, j: usize) -> Result<Mat> {
    let ctx = m.ctx();
    let entries = m
        .entries()
        .iter()
        .map(|a| ctx.frobenius(a, j))
        .collect::<Result<Vec<_>>>()?;
    Mat::new(ctx, m.rows(), m.cols(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> CompanionCtx {
        CompanionCtx::parse(5, "x^3+3x+3").unwrap()
    }

    #[test]
    fn displayed_companions() {
        let ctx = c5();
        let expect = Mat::from_ints(ctx.base(), &[[0, 0, 2], [1, 0, 2], [0, 1, 0]]).unwrap();
        assert_eq!(ctx.matrix(), &expect);
        let d = CompanionCtx::parse(5, "x^3+3x+2").unwrap();
        let expect = Mat::from_ints(d.base(), &[[0, 0, 3], [1, 0, 2], [0, 1, 0]]).unwrap();
        assert_eq!(d.matrix(), &expect);
        assert!(matches!(
            CompanionCtx::parse(5, "x^2+1"),
            Err(Error::NotPrimitive(..))
        ));
    }

    #[test]
    fn span_membership() {
        let ctx = c5();
        let c = ctx.matrix().clone();
        assert_eq!(ctx.in_span(&c).unwrap(), Some(vec![0, 1, 0]));
        let o = Mat::zeros(ctx.base(), 3, 3).unwrap();
        assert_eq!(ctx.in_span(&o).unwrap(), Some(vec![0, 0, 0]));
        assert_eq!(ctx.in_span(&c.add(&c.transpose()).unwrap()).unwrap(), None);
        let small = Mat::zeros(ctx.base(), 2, 2).unwrap();
        assert!(matches!(ctx.in_span(&small), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn psi_basics() {
        let ctx = c5();
        let ext = ctx.ext().clone();
        assert_eq!(ctx.psi(&ext.one()).unwrap(), Mat::identity(ctx.base(), 3).unwrap());
        assert_eq!(ctx.psi(&ext.alpha()).unwrap(), *ctx.matrix());
        let two_alpha = ext.element(&[0, 2]).unwrap();
        assert_eq!(ctx.psi(&two_alpha).unwrap(), ctx.matrix().pow(32).unwrap());
        assert_eq!(ctx.matrix().pow(124).unwrap(), Mat::identity(ctx.base(), 3).unwrap());
        assert_eq!(ext.dlog(&ctx.psi_inv(ctx.matrix()).unwrap()).unwrap(), 1);
    }

    #[test]
    fn psi_inv_of_kron() {
        let ctx = c5();
        let a = Mat::from_ints(ctx.base(), &[[1, 2, 2], [2, 1, 3], [3, 2, 4]]).unwrap();
        let m = a.kron(ctx.matrix()).unwrap();
        let b = BlockMat::with_companion(m.clone(), &ctx).unwrap();
        let pattern: Vec<Vec<u64>> = b
            .power_pattern()
            .unwrap()
            .into_iter()
            .map(|r| r.into_iter().map(Option::unwrap).collect())
            .collect();
        assert_eq!(pattern, vec![vec![1, 32, 32], vec![32, 1, 94], vec![94, 32, 63]]);
        let n = ctx.Psi_inv(&b).unwrap();
        assert_eq!(ctx.Psi(&n).unwrap().inner(), &m);
        assert!(b.compact().unwrap().starts_with("C^1 C^32 C^32\n"));
    }

    #[test]
    fn psi_inv_rejects_foreign_blocks() {
        let ctx = c5();
        let mut m = Mat::identity(ctx.base(), 6).unwrap();
        m = m.with_row(4, &m.row(3).to_vec()).unwrap();
        assert!(matches!(
            ctx.Psi_inv_mat(&m),
            Err(Error::NotInSpan { row: 1, col: 1 })
        ));
    }

    #[test]
    fn generator_exponent_checked() {
        assert!(c5().with_generator_exponent(3).is_ok());
        assert!(matches!(
            c5().with_generator_exponent(2),
            Err(Error::BadGeneratorExponent { exponent: 2, group_order: 124 })
        ));
    }

    #[test]
    fn frobenius_exponents() {
        let ctx = c5();
        let ext = ctx.ext();
        let m = Mat::new(
            ext,
            1,
            4,
            [1, 32, 94, 63].iter().map(|&k| ext.alpha_pow(k)).collect(),
        )
        .unwrap();
        let s = mat_frobenius(&m, 2).unwrap();
        let logs: Vec<u64> = s.entries().iter().map(|a| ext.dlog(a).unwrap()).collect();
        assert_eq!(logs, vec![25, 56, 118, 87]);
        assert_eq!(mat_frobenius(&m, 0).unwrap(), m);
        let thrice = (0..3).try_fold(m.clone(), |acc, _| mat_frobenius(&acc, 1)).unwrap();
        assert_eq!(thrice, m);
        assert!(matches!(mat_frobenius(&m, 3), Err(Error::IndexOutOfRange { .. })));
    }
}
