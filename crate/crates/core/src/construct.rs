//! Constructions of block-superregular and superregular matrices.
//!
//! Every construction checks its hypotheses unless
//! [`ConstructOptions::checked`] is off: the conclusions are only promised
//! when the inputs are what the construction expects.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::companion::{BlockMat, CompanionCtx};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::Mat;
use crate::verify::{is_superregular, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Re-verify superregularity and nonsingularity of the inputs.
    pub checked: bool,
    /// Accept `j = 1` in [`perturb_block`]; outputs must then be verified.
    pub allow_j1: bool,
    pub verify: VerifyOptions,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            checked: true,
            allow_j1: false,
            verify: VerifyOptions::default(),
        }
    }
}

impl ConstructOptions {
    pub fn unchecked() -> Self {
        Self {
            checked: false,
            ..Self::default()
        }
    }
}

fn require_square(m: &Mat) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

fn require_sr(m: &Mat, index: usize, opts: &ConstructOptions) -> Result<()> {
    if opts.checked && !is_superregular(m, &opts.verify).verdict {
        return Err(Error::NotSuperregular { index });
    }
    Ok(())
}

fn is_nonsingular(m: &Mat) -> Result<bool> {
    require_square(m)?;
    Ok(!m.is_singular()?)
}

/// `A⊗B`, an `n`-block superregular matrix when `A` is superregular and
/// `B` is a nonsingular `n×n` matrix.
pub fn kron_block(a: &Mat, b: &Mat, opts: &ConstructOptions) -> Result<BlockMat> {
    require_square(b)?;
    require_sr(a, 0, opts)?;
    if opts.checked && !is_nonsingular(b)? {
        return Err(Error::SingularB);
    }
    BlockMat::new(a.kron(b)?, b.rows())
}

/// `A_1⊗…⊗A_l⊗B` with block size `N·n/n_1`, where `N = Π n_i`.
pub fn chain(factors: &[Mat], b: &Mat, opts: &ConstructOptions) -> Result<BlockMat> {
    let first = factors
        .first()
        .ok_or_else(|| Error::DimensionMismatch("chain needs at least one factor".into()))?;
    require_square(b)?;
    for (i, a) in factors.iter().enumerate() {
        require_square(a)?;
        require_sr(a, i, opts)?;
    }
    if opts.checked && !is_nonsingular(b)? {
        return Err(Error::SingularB);
    }
    let mut m = first.clone();
    for a in &factors[1..] {
        m = m.kron(a)?;
    }
    let big_n = m.rows();
    let block = big_n / first.rows() * b.rows();
    BlockMat::new(m.kron(b)?, block)
}

/// The block matrix with `(i, j)` block `a_ij·B·B_j`.
///
/// `SingularFactor` positions: 0 is `B`, `j + 1` is `B_j`.
pub fn scaled_columns(a: &Mat, b: &Mat, bs: &[Mat], opts: &ConstructOptions) -> Result<BlockMat> {
    if bs.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} column factors for {} columns",
            bs.len(),
            a.cols()
        )));
    }
    require_square(b)?;
    let n = b.rows();
    for f in bs {
        if f.rows() != n || f.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "column factor is {}x{}, expected {n}x{n}",
                f.rows(),
                f.cols()
            )));
        }
    }
    require_sr(a, 0, opts)?;
    if opts.checked {
        for (pos, f) in std::iter::once(b).chain(bs).enumerate() {
            if !is_nonsingular(f)? {
                return Err(Error::SingularFactor { position: pos });
            }
        }
    }
    let products = bs.iter().map(|bj| b.mul(bj)).collect::<Result<Vec<_>>>()?;
    let grid = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| products[j].scale(a.get(i, j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BlockMat::new(Mat::from_blocks(&grid)?, n)
}

/// `Ψ⁻¹(A_1⊗…⊗A_l⊗C^t)` over GF(p^n). `t_exp` overrides the exponent
/// configured on `ctx`.
///
/// The result equals `α^t·(A_1⊗…⊗A_l)`. It is superregular when at most one
/// factor is larger than 1×1; a Kronecker product of two factors of size
/// at least 2 always has a vanishing 2×2 minor, so the output is then never
/// superregular even though `A_1⊗…⊗A_l⊗C^t` is block superregular.
pub fn lift(
    factors: &[Mat],
    ctx: &CompanionCtx,
    t_exp: Option<u64>,
    opts: &ConstructOptions,
) -> Result<Mat> {
    let ctx = match t_exp {
        Some(t) => ctx.clone().with_generator_exponent(t)?,
        None => ctx.clone(),
    };
    let first = factors
        .first()
        .ok_or_else(|| Error::DimensionMismatch("lift needs at least one factor".into()))?;
    for (i, a) in factors.iter().enumerate() {
        if a.ctx() != ctx.base() {
            return Err(Error::ContextMismatch);
        }
        require_square(a)?;
        require_sr(a, i, opts)?;
    }
    let mut m = first.clone();
    for a in &factors[1..] {
        m = m.kron(a)?;
    }
    ctx.Psi_inv_mat(&m.kron(&ctx.generator()?)?)
}

/// `M = Ψ⁻¹(𝓜⊗C)` together with the ground matrix `𝓜` it came from.
#[derive(Clone, Debug)]
pub struct PerturbBase {
    ground: Mat,
    matrix: Mat,
    ctx: CompanionCtx,
}

impl PerturbBase {
    /// Builds `M = α·𝓜` from a superregular ground matrix.
    pub fn from_ground(ground: &Mat, ctx: &CompanionCtx, opts: &ConstructOptions) -> Result<Self> {
        if ground.ctx() != ctx.base() {
            return Err(Error::ContextMismatch);
        }
        require_square(ground)?;
        require_sr(ground, 0, opts)?;
        let ext = ctx.ext();
        let alpha = ext.alpha();
        let matrix = Mat::from_fn(ext, ground.rows(), ground.cols(), |i, j| {
            let a = ground.get(i, j).as_ground().expect("prime field");
            ext.mul(&ext.from_u64(a), &alpha).expect("same field")
        })?;
        Ok(Self {
            ground: ground.clone(),
            matrix,
            ctx: ctx.clone(),
        })
    }

    /// Accepts an extension-field matrix whose entries all have the form
    /// `a·α` with `a` in GF(p), and recovers `𝓜`.
    pub fn from_extension(m: &Mat, ctx: &CompanionCtx, opts: &ConstructOptions) -> Result<Self> {
        if m.ctx() != ctx.ext() {
            return Err(Error::ContextMismatch);
        }
        let base = ctx.base();
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let c = m.get(i, j).coeffs();
                if c.len() < 2 || c.iter().enumerate().any(|(k, &v)| k != 1 && v != 0) {
                    return Err(Error::MalformedBase { row: i, col: j });
                }
                entries.push(base.from_u64(c[1] as u64));
            }
        }
        Self::from_ground(&Mat::new(base, m.rows(), m.cols(), entries)?, ctx, opts)
    }

    pub fn ground(&self) -> &Mat {
        &self.ground
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn ctx(&self) -> &CompanionCtx {
        &self.ctx
    }
}

/// A single perturbed row `j` with entries `Σ_{i≥2} f_{l,i} α^i`.
///
/// JSON: `{"row": 1, "coeffs": {"1": {"2": 3, "3": 0}, "2": {...}}}`, with
/// 1-based row and column numbers and `i` the power of `α`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbSpecRow {
    pub row: usize,
    #[serde(default)]
    pub coeffs: BTreeMap<usize, BTreeMap<usize, i64>>,
}

impl PerturbSpecRow {
    pub fn new(row: usize) -> Self {
        Self {
            row,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sets `f_{col,power}`; both 1-based as in the JSON form.
    pub fn set(&mut self, col: usize, power: usize, value: i64) -> &mut Self {
        self.coeffs.entry(col).or_default().insert(power, value);
        self
    }
}

/// The first `rows` rows receive `n_{i,l} α^t`; the result is then
/// permuted so that output row `i` is row `omega[i]` (1-based).
///
/// JSON: `{"t": 2, "rows": 2, "table": [[...], [...]], "omega": [1, 2, 3]}`;
/// `omega` may be omitted for the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbSpecBlock {
    pub t: u32,
    pub rows: usize,
    pub table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega: Vec<usize>,
}

/// `M + F` where `F` is zero outside row `spec.row`.
pub fn perturb_row(base: &PerturbBase, spec: &PerturbSpecRow) -> Result<Mat> {
    let m = base.matrix();
    let ext = m.ctx();
    let n = ext.degree();
    if spec.row == 0 || spec.row > m.rows() {
        return Err(Error::BadCoefficientRange(format!(
            "row {} outside 1..={}",
            spec.row,
            m.rows()
        )));
    }
    let mut row: Vec<FieldElem> = m.row(spec.row - 1).to_vec();
    for (&col, powers) in &spec.coeffs {
        if col == 0 || col > m.cols() {
            return Err(Error::BadCoefficientRange(format!(
                "column {col} outside 1..={}",
                m.cols()
            )));
        }
        for (&power, &value) in powers {
            if power < 2 || power > n {
                return Err(Error::BadCoefficientRange(format!(
                    "power {power} of alpha outside 2..={n}"
                )));
            }
            let term = ext.mul(&ext.from_i64(value), &ext.alpha_pow(power as u64))?;
            row[col - 1] = ext.add(&row[col - 1], &term)?;
        }
    }
    m.with_row(spec.row - 1, &row)
}

/// Checks `t > 1`, `j > 1` and `j(t-1) < n` and the table shape.
pub fn check_block_spec(spec: &PerturbSpecBlock, m: usize, n: usize, allow_j1: bool) -> Result<()> {
    let (t, j) = (spec.t as usize, spec.rows);
    let mut failed = Vec::new();
    if t <= 1 {
        failed.push(format!("t > 1 (t = {t})"));
    }
    if j <= 1 && !(allow_j1 && j == 1) {
        failed.push(format!("j > 1 (j = {j})"));
    }
    if j * t.saturating_sub(1) >= n {
        failed.push(format!("j(t-1) < n ({} >= {n})", j * t.saturating_sub(1)));
    }
    if !failed.is_empty() {
        return Err(Error::ConstraintViolated(failed.join(", ")));
    }
    if j > m {
        return Err(Error::BadCoefficientRange(format!("{j} perturbed rows but only {m} rows")));
    }
    if spec.table.len() != j || spec.table.iter().any(|r| r.len() != m) {
        return Err(Error::BadCoefficientRange(format!("table must be {j}x{m}")));
    }
    if !spec.omega.is_empty() {
        let mut seen = spec.omega.clone();
        seen.sort_unstable();
        if seen != (1..=m).collect::<Vec<_>>() {
            return Err(Error::BadCoefficientRange(format!(
                "omega {:?} is not a permutation of 1..={m}",
                spec.omega
            )));
        }
    }
    Ok(())
}

/// Rows `1..=j` of `M` receive `n_{i,l} α^t`, then rows are permuted by `ω`.
pub fn perturb_block(base: &PerturbBase, spec: &PerturbSpecBlock, opts: &ConstructOptions) -> Result<Mat> {
    let m = base.matrix();
    let ext = m.ctx();
    check_block_spec(spec, m.rows(), ext.degree(), opts.allow_j1)?;
    let at = ext.alpha_pow(spec.t as u64);
    let mut out = m.clone();
    for (i, coeffs) in spec.table.iter().enumerate() {
        let row = m
            .row(i)
            .iter()
            .zip(coeffs)
            .map(|(e, &c)| ext.add(e, &ext.mul(&ext.from_i64(c), &at)?))
            .collect::<Result<Vec<_>>>()?;
        out = out.with_row(i, &row)?;
    }
    if spec.omega.is_empty() {
        Ok(out)
    } else {
        let order: Vec<usize> = spec.omega.iter().map(|&r| r - 1).collect();
        out.permute_rows(&order)
    }
}

/// `x / α^k`; with `x = det(N)` this exposes the polynomial whose constant
/// term is `det(𝓜)`.
pub fn div_alpha_pow(ctx: &FieldCtx, x: &FieldElem, k: u64) -> Result<FieldElem> {
    let ak = ctx.pow(&ctx.alpha(), k as u128)?;
    ctx.div(x, &ak)
}

/// Uniform random `rows×cols` matrix from a seeded ChaCha8 stream.
pub fn random_matrix(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Result<Mat> {
    let q = ctx.order();
    Mat::from_fn(ctx, rows, cols, |_, _| ctx.from_index(rng.gen_range(0..q)))
}

/// First of `tries` uniformly sampled matrices that is superregular.
pub fn random_search(
    ctx: &FieldCtx,
    rows: usize,
    cols: usize,
    tries: u64,
    seed: u64,
    verify: &VerifyOptions,
) -> Result<Option<Mat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let m = random_matrix(ctx, rows, cols, &mut rng)?;
        if is_superregular(&m, verify).verdict {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
