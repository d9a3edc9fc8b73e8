//! Exact arithmetic in GF(p) and GF(p^n).
//!
//! A [`FieldCtx`] fixes the prime `p` and a monic irreducible modulus of
//! degree `n`; elements are coefficient vectors over GF(p) in the basis
//! `1, α, …, α^(n-1)` where `α` is the class of `x`. Prime fields built with
//! [`FieldCtx::prime`] use the modulus `x`, so elements are plain residues.
//!
//! Contexts are compared structurally: two contexts built from the same
//! `(p, modulus)` interoperate, anything else is a [`Error::ContextMismatch`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::arith::{self, add_mod, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default upper bound on the field order for discrete-log tables and
/// exhaustive element enumeration.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 20;

type Coeffs = SmallVec<[u32; 4]>;

/// An element of a finite field, tagged with the identity of its context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    ctx_id: u64,
    coeffs: Coeffs,
}

impl FieldElem {
    /// Coefficients over GF(p), `coeffs()[i]` multiplying `α^i`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx_id
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a prime-subfield residue, if every higher coefficient is zero.
    pub fn as_ground(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0] as u64)
        } else {
            None
        }
    }
}

/// How elements are rendered as text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ElemStyle {
    /// `5` in prime fields, `[1,3,2]` (constant first) in extensions.
    #[default]
    Coeffs,
    /// `2α^2+3α+1`.
    Poly,
    /// `α^k`, falling back to [`ElemStyle::Poly`] when no log table is available.
    Power,
}

struct DlogTable {
    // log[index(a)] for a != 0; u32::MAX marks zero
    log: Vec<u32>,
    antilog: Vec<u32>,
}

struct Inner {
    id: u64,
    p: u64,
    n: usize,
    order: u64,
    modulus: Poly,
    primitive: bool,
    prime_mode: bool,
    cap: u64,
    dlog: OnceLock<Result<DlogTable>>,
}

/// Description of a finite field. Cheap to clone; immutable after
/// construction apart from the lazily built log table.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})/({})", self.p(), self.degree(), self.modulus())
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.id == other.0.id
                && self.0.p == other.0.p
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

fn fingerprint(p: u64, modulus: &Poly) -> u64 {
    // FNV-1a; stable across runs so ids are reproducible
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for word in std::iter::once(p).chain(modulus.coeffs().iter().copied()) {
        for byte in word.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

impl FieldCtx {
    /// GF(p) with elements represented as residues.
    pub fn prime(p: u64) -> Result<Self> {
        Self::prime_with_cap(p, DEFAULT_TABLE_CAP)
    }

    pub fn prime_with_cap(p: u64, cap: u64) -> Result<Self> {
        check_prime(p)?;
        Self::build(p, Poly::x(p), true, cap)
    }

    /// GF(p^n) = GF(p)[x]/(modulus) for a monic irreducible modulus.
    pub fn new(p: u64, modulus: Poly) -> Result<Self> {
        Self::with_cap(p, modulus, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(p: u64, modulus: Poly, cap: u64) -> Result<Self> {
        check_prime(p)?;
        let modulus = if modulus.p() == p {
            modulus
        } else {
            Poly::new(p, modulus.coeffs().iter().copied())
        };
        if modulus.degree().unwrap_or(0) == 0 || !modulus.is_monic() {
            return Err(Error::NonMonicModulus(modulus.to_string()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::ReducibleModulus(modulus.to_string(), p));
        }
        Self::build(p, modulus, false, cap)
    }

    /// Accepts `"prime"` or a polynomial in `x^3+3x+3` syntax.
    pub fn parse(p: u64, modulus: &str) -> Result<Self> {
        if modulus.trim().eq_ignore_ascii_case("prime") {
            Self::prime(p)
        } else {
            check_prime(p)?;
            Self::new(p, Poly::parse(modulus, p)?)
        }
    }

    /// A copy of this context with a different table cap.
    pub fn with_table_cap(&self, cap: u64) -> Self {
        Self::build(self.p(), self.0.modulus.clone(), self.0.prime_mode, cap)
            .expect("parameters were validated when the original context was built")
    }

    fn build(p: u64, modulus: Poly, prime_mode: bool, cap: u64) -> Result<Self> {
        let n = modulus.degree().expect("nonzero modulus");
        let order = arith::checked_order(p, n)
            .filter(|&q| q < (1u64 << 63))
            .ok_or(Error::FieldTooLarge {
                order: (p as u128).saturating_pow(n as u32),
                cap: u64::MAX >> 1,
            })?;
        let primitive = modulus.is_primitive();
        Ok(Self(Arc::new(Inner {
            id: fingerprint(p, &modulus),
            p,
            n,
            order,
            modulus,
            primitive,
            prime_mode,
            cap: cap.min(u32::MAX as u64),
            dlog: OnceLock::new(),
        })))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `n` over GF(p).
    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Number of elements `p^n`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    /// True when built by [`FieldCtx::prime`] (modulus `x`).
    pub fn is_prime_field(&self) -> bool {
        self.0.prime_mode
    }

    /// True when the class of `x` generates the multiplicative group.
    pub fn is_primitive(&self) -> bool {
        self.0.primitive
    }

    pub fn table_cap(&self) -> u64 {
        self.0.cap
    }

    fn make(&self, coeffs: Coeffs) -> FieldElem {
        FieldElem {
            ctx_id: self.0.id,
            coeffs,
        }
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        if a.ctx_id == self.0.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// True if the element was produced by a context equal to this one.
    pub fn owns(&self, a: &FieldElem) -> bool {
        a.ctx_id == self.0.id
    }

    pub fn zero(&self) -> FieldElem {
        self.make(SmallVec::from_elem(0, self.0.n))
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// The class of `x`. In a prime field built by [`FieldCtx::prime`] this is 0.
    pub fn alpha(&self) -> FieldElem {
        self.from_poly(&Poly::x(self.p()))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut c: Coeffs = SmallVec::from_elem(0, self.0.n);
        c[0] = (v % self.p()) as u32;
        self.make(c)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_u64(v.rem_euclid(self.p() as i64) as u64)
    }

    /// Element with the given constant-first coefficients (reduced mod p).
    /// At most `n` coefficients are accepted.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.n {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.n
            )));
        }
        let mut c: Coeffs = SmallVec::from_elem(0, self.0.n);
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = (v % self.p()) as u32;
        }
        Ok(self.make(c))
    }

    /// Reduces a polynomial over GF(p) modulo the field modulus.
    pub fn from_poly(&self, poly: &Poly) -> FieldElem {
        let r = Poly::new(self.p(), poly.coeffs().iter().copied()).rem(&self.0.modulus);
        let mut c: Coeffs = SmallVec::from_elem(0, self.0.n);
        for (i, &v) in r.coeffs().iter().enumerate() {
            c[i] = v as u32;
        }
        self.make(c)
    }

    /// Element as a polynomial in `x` of degree below `n`.
    pub fn to_poly(&self, a: &FieldElem) -> Poly {
        Poly::new(self.p(), a.coeffs.iter().map(|&c| c as u64))
    }

    /// Base-p integer encoding `Σ c_i p^i`, in `[0, p^n)`.
    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p() + c as u64)
    }

    /// Inverse of [`FieldCtx::index_of`].
    pub fn from_index(&self, mut idx: u64) -> FieldElem {
        let p = self.p();
        let mut c: Coeffs = SmallVec::from_elem(0, self.0.n);
        for slot in c.iter_mut() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        self.make(c)
    }

    /// Every element in index order. Fails above the table cap.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        self.ensure_enumerable()?;
        Ok((0..self.order()).map(move |i| self.from_index(i)))
    }

    fn ensure_enumerable(&self) -> Result<()> {
        if self.order() > self.0.cap {
            Err(Error::FieldTooLarge {
                order: self.order() as u128,
                cap: self.0.cap,
            })
        } else {
            Ok(())
        }
    }

    // ---- unchecked arithmetic (callers guarantee ownership) ----

    pub(crate) fn add_raw(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p();
        self.make(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x as u64, y as u64, p) as u32)
                .collect(),
        )
    }

    pub(crate) fn sub_raw(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p();
        self.make(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x as u64, y as u64, p) as u32)
                .collect(),
        )
    }

    pub(crate) fn neg_raw(&self, a: &FieldElem) -> FieldElem {
        let p = self.p();
        self.make(
            a.coeffs
                .iter()
                .map(|&x| ((p - x as u64) % p) as u32)
                .collect(),
        )
    }

    pub(crate) fn mul_raw(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p();
        let n = self.0.n;
        if n == 1 {
            let mut c: Coeffs = SmallVec::new();
            c.push(mul_mod(a.coeffs[0] as u64, b.coeffs[0] as u64, p) as u32);
            return self.make(c);
        }
        let mut acc: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                acc[i + j] = add_mod(acc[i + j], mul_mod(x as u64, y as u64, p), p);
            }
        }
        let m = self.0.modulus.coeffs();
        for d in (n..2 * n - 1).rev() {
            let c = acc[d];
            if c == 0 {
                continue;
            }
            // x^d = x^(d-n) * x^n and x^n = -(m_0 + … + m_{n-1} x^{n-1})
            for (k, &mk) in m.iter().take(n).enumerate() {
                acc[d - n + k] = sub_mod(acc[d - n + k], mul_mod(c, mk, p), p);
            }
            acc[d] = 0;
        }
        self.make(acc[..n].iter().map(|&c| c as u32).collect())
    }

    pub(crate) fn pow_raw(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.0.n == 1 {
            let v = inv_mod(a.coeffs[0] as u64, self.p()).expect("nonzero residue");
            return Ok(self.from_u64(v));
        }
        Ok(self.pow_raw(a, self.order() as u128 - 2))
    }

    // ---- checked arithmetic ----

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_raw(a, b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.inv_raw(a)
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let inv = self.inv(b)?;
        self.mul(a, &inv)
    }

    pub fn pow(&self, a: &FieldElem, e: u128) -> Result<FieldElem> {
        self.check(a)?;
        Ok(self.pow_raw(a, e))
    }

    /// Evaluates a polynomial over GF(p) at a field element.
    pub fn eval_poly(&self, poly: &Poly, at: &FieldElem) -> Result<FieldElem> {
        self.check(at)?;
        if poly.p() != self.p() {
            return Err(Error::ContextMismatch);
        }
        Ok(poly.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            self.add_raw(&self.mul_raw(&acc, at), &self.from_u64(c))
        }))
    }

    /// The automorphism `σ_j(a) = a^(p^j)`, for `0 <= j < n`.
    pub fn frobenius(&self, a: &FieldElem, j: usize) -> Result<FieldElem> {
        self.check(a)?;
        if j >= self.0.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.0.n,
            });
        }
        let mut out = a.clone();
        for _ in 0..j {
            out = self.pow_raw(&out, self.p() as u128);
        }
        Ok(out)
    }

    fn dlog_table(&self) -> Result<&DlogTable> {
        self.0
            .dlog
            .get_or_init(|| self.build_dlog())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_dlog(&self) -> Result<DlogTable> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive(self.modulus().to_string(), self.p()));
        }
        self.ensure_enumerable()?;
        let q = self.order() as usize;
        let mut log = vec![u32::MAX; q];
        let mut antilog = Vec::with_capacity(q - 1);
        let alpha = self.alpha();
        let mut cur = self.one();
        for k in 0..q - 1 {
            let idx = self.index_of(&cur) as usize;
            log[idx] = k as u32;
            antilog.push(idx as u32);
            cur = self.mul_raw(&cur, &alpha);
        }
        Ok(DlogTable { log, antilog })
    }

    /// Discrete logarithm to base `α`, in `[0, p^n - 2]`.
    pub fn dlog(&self, a: &FieldElem) -> Result<u64> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let table = self.dlog_table()?;
        Ok(table.log[self.index_of(a) as usize] as u64)
    }

    /// `α^k`, using the log table when it is available.
    pub fn alpha_pow(&self, k: u64) -> FieldElem {
        let group = self.order() - 1;
        match self.dlog_table() {
            Ok(t) => self.from_index(t.antilog[(k % group) as usize] as u64),
            Err(_) => self.pow_raw(&self.alpha(), k as u128),
        }
    }

    /// All roots of `poly` in this field, by exhaustive evaluation.
    pub fn find_roots(&self, poly: &Poly) -> Result<Vec<FieldElem>> {
        if poly.p() != self.p() {
            return Err(Error::ContextMismatch);
        }
        let mut roots = Vec::new();
        for e in self.elements()? {
            if self.eval_poly(poly, &e)?.is_zero() {
                roots.push(e);
            }
        }
        Ok(roots)
    }

    /// Renders an element; see [`ElemStyle`].
    pub fn format(&self, a: &FieldElem, style: ElemStyle) -> String {
        if self.is_prime_field() {
            return a.coeffs[0].to_string();
        }
        match style {
            ElemStyle::Coeffs => {
                let parts: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            ElemStyle::Poly => format_alpha_poly(a.coeffs()),
            ElemStyle::Power => {
                if a.is_zero() {
                    return "0".into();
                }
                match self.dlog(a) {
                    Ok(0) => "1".into(),
                    Ok(1) => "α".into(),
                    Ok(k) => format!("α^{k}"),
                    Err(_) => format_alpha_poly(a.coeffs()),
                }
            }
        }
    }

    /// Parses `5` (prime-subfield element) or `[1,3,2]` (coefficient list).
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                coeffs.push(parse_residue(part, self.p())?);
            }
            self.element(&coeffs)
        } else {
            Ok(self.from_u64(parse_residue(t, self.p())?))
        }
    }
}

fn parse_residue(text: &str, p: u64) -> Result<u64> {
    text.parse::<i64>()
        .map(|v| v.rem_euclid(p as i64) as u64)
        .map_err(|_| Error::Parse(format!("bad field coefficient '{text}'")))
}

fn format_alpha_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        terms.push(match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "α".to_string(),
            (1, c) => format!("{c}α"),
            (d, 1) => format!("α^{d}"),
            (d, c) => format!("{c}α^{d}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !arith::is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    Ok(())
}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}
