//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficients are stored constant term first and kept trimmed, so the
//! zero polynomial is the empty vector. Text syntax is the usual
//! `x^3+3x+3`, with coefficients reduced modulo `p` on parse.

use std::fmt;

use crate::arith::{self, add_mod, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial from constant-first coefficients, reducing them mod `p`.
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        let mut out = Self { p, coeffs };
        out.trim();
        out
    }

    /// Same as [`Poly::new`] but accepts signed coefficients.
    pub fn from_signed(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Self {
        Self::new(p, coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u64))
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, [c])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, [0, 1])
    }

    pub fn monomial(p: u64, degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..len).map(|i| add_mod(self.coeff(i), other.coeff(i), self.p)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..len).map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p)),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)))
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(divisor.leading(), p).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = mul_mod(rem[top], lead_inv, p);
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (k, &d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = sub_mod(rem[shift + k], mul_mod(c, d, p), p);
                }
            }
            rem.pop();
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut acc = Self::constant(self.p, 1).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation at a point of GF(p).
    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// Rabin's irreducibility test for a polynomial of degree >= 1.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        // x^(p^k) mod f for k = 0..=n
        let mut frob = Vec::with_capacity(n + 1);
        let mut cur = x.rem(&f);
        frob.push(cur.clone());
        for _ in 0..n {
            cur = cur.pow_mod(self.p as u128, &f);
            frob.push(cur.clone());
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        arith::factorize(n as u128).into_iter().all(|(r, _)| {
            let k = n / r as usize;
            let g = frob[k].sub(&x).gcd(&f);
            g.degree() == Some(0)
        })
    }

    /// `p^n - 1` for a polynomial of degree `n`, if it fits in a `u128`.
    fn group_order(&self) -> Option<u128> {
        let n = u32::try_from(self.degree()?).ok()?;
        (self.p as u128).checked_pow(n).map(|q| q - 1)
    }

    /// True iff the polynomial is irreducible and the class of `x` has
    /// multiplicative order `p^n - 1` in `GF(p)[x]/(self)`.
    pub fn is_primitive(&self) -> bool {
        if !self.is_irreducible() {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p).rem(&f);
        if x.is_zero() {
            return false;
        }
        let Some(order) = self.group_order() else {
            return false;
        };
        let one = Self::constant(self.p, 1);
        arith::factorize(order)
            .into_iter()
            .all(|(r, _)| x.pow_mod(order / r, &f) != one)
    }

    /// All monic polynomials of the given degree in lexicographic order of
    /// their lower coefficients (constant term varying fastest).
    pub fn monic_of_degree(p: u64, degree: usize) -> impl Iterator<Item = Poly> {
        let count = p.checked_pow(degree as u32).expect("enumeration too large");
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                coeffs.push(idx % p);
                idx /= p;
            }
            coeffs.push(1);
            Poly::new(p, coeffs)
        })
    }

    /// Parses `x^3+3x+3`-style text; coefficients are reduced mod `p`.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("malformed polynomial '{text}'"));
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
                if cur.is_empty() {
                    return Err(bad());
                }
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((negative, cur));

        let mut coeffs: Vec<u64> = Vec::new();
        for (negative, term) in terms {
            let (coef_part, degree) = match term.find(['x', 'X']) {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(bad)?
                    };
                    (term[..pos].trim_end_matches('*'), degree)
                }
            };
            let c = if coef_part.is_empty() {
                if degree == 0 {
                    return Err(bad());
                }
                1
            } else {
                coef_part.parse::<u64>().map_err(|_| bad())? % p
            };
            let c = if negative { (p - c) % p } else { c };
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            coeffs[degree] = add_mod(coeffs[degree], c, p);
        }
        Ok(Self::new(p, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (d, 1) => write!(f, "x^{d}")?,
                (d, c) => write!(f, "{c}x^{d}")?,
            }
        }
        Ok(())
    }
}
