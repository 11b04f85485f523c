//! Dense univariate polynomials over a [`FieldCtx`], plus the canonical
//! [`Factorization`] shape shared by the explicit engine and the oracle.
//!
//! Coefficients are stored ascending by degree with trailing zeros trimmed;
//! the zero polynomial is the empty sequence and its degree is `None`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

// Coefficient-code kernels. Prime fields accumulate raw u64 sums and reduce
// once: p <= 2^20 keeps len * p^2 comfortably below 2^64.
fn mul_vec(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if ctx.k() == 1 {
        let p = ctx.p();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        for o in out.iter_mut() {
            *o %= p;
        }
    } else {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = ctx.add_code(out[i + j], ctx.mul_code(ai, bj));
            }
        }
    }
    trim(&mut out);
    out
}

fn divrem_vec(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lead_inv = ctx.inv_code(b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = ctx.mul_code(rem[i + db], lead_inv);
        quot[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = ctx.sub_code(rem[i + j], ctx.mul_code(c, bj));
        }
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficient codes, trimming
    /// trailing zeros.
    pub fn from_codes(ctx: &FieldCtx, coeffs: Vec<u64>) -> Polynomial {
        for &c in &coeffs {
            assert!(c < ctx.q(), "coefficient code {} out of range for {}", c, ctx);
        }
        let mut coeffs = coeffs;
        trim(&mut coeffs);
        Polynomial { ctx: ctx.clone(), coeffs }
    }

    pub fn from_elements(elems: &[FieldElement]) -> Result<Polynomial> {
        let ctx = match elems.first() {
            Some(e) => e.ctx().clone(),
            None => panic!("from_elements needs at least one element; use Polynomial::zero"),
        };
        let mut coeffs = Vec::with_capacity(elems.len());
        for e in elems {
            if e.ctx() != &ctx {
                return Err(Error::MixedFields);
            }
            coeffs.push(e.code());
        }
        Ok(Polynomial::from_codes(&ctx, coeffs))
    }

    pub fn zero(ctx: &FieldCtx) -> Polynomial {
        Polynomial { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Polynomial {
        Polynomial::from_codes(ctx, vec![1])
    }

    pub fn x(ctx: &FieldCtx) -> Polynomial {
        Polynomial::from_codes(ctx, vec![0, 1])
    }

    pub fn constant(e: &FieldElement) -> Polynomial {
        Polynomial::from_codes(e.ctx(), vec![e.code()])
    }

    pub fn monomial(ctx: &FieldCtx, coeff: u64, degree: usize) -> Polynomial {
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = coeff;
        Polynomial::from_codes(ctx, coeffs)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_codes(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.ctx.element(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.ctx.element(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = self.ctx.add_code(a, b);
        }
        trim(&mut out);
        Ok(Polynomial { ctx: self.ctx.clone(), coeffs: out })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = self.ctx.sub_code(a, b);
        }
        trim(&mut out);
        Ok(Polynomial { ctx: self.ctx.clone(), coeffs: out })
    }

    pub fn neg(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.neg_code(c)).collect();
        Polynomial { ctx: self.ctx.clone(), coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(Polynomial { ctx: self.ctx.clone(), coeffs: mul_vec(&self.ctx, &self.coeffs, &other.coeffs) })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.ctx() != &self.ctx {
            return Err(Error::MixedFields);
        }
        let mut coeffs: Vec<u64> = self.coeffs.iter().map(|&a| self.ctx.mul_code(a, c.code())).collect();
        trim(&mut coeffs);
        Ok(Polynomial { ctx: self.ctx.clone(), coeffs })
    }

    /// Exact division with remainder: `self = q * other + r`, `deg r < deg other`.
    pub fn divrem(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ctx(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divrem_vec(&self.ctx, &self.coeffs, &other.coeffs);
        Ok((
            Polynomial { ctx: self.ctx.clone(), coeffs: q },
            Polynomial { ctx: self.ctx.clone(), coeffs: r },
        ))
    }

    pub fn rem(&self, other: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(other)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, e: u128, m: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut result = Polynomial::one(&self.ctx).rem(m)?;
        let mut base = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, point: &FieldElement) -> Result<FieldElement> {
        if point.ctx() != &self.ctx {
            return Err(Error::MixedFields);
        }
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.ctx.add_code(self.ctx.mul_code(acc, point.code()), c);
        }
        Ok(self.ctx.element(acc))
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.ctx);
        }
        let p = self.ctx.p();
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let scalar = (i as u64) % p;
            out.push(self.ctx.mul_code(c, scalar));
        }
        trim(&mut out);
        Polynomial { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Scales to leading coefficient 1; the zero polynomial is unchanged.
    pub fn make_monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => {
                let inv = self.ctx.inv_code(lead).expect("nonzero lead");
                let coeffs = self.coeffs.iter().map(|&c| self.ctx.mul_code(c, inv)).collect();
                Polynomial { ctx: self.ctx.clone(), coeffs }
            }
        }
    }

    /// `f(x) -> f(x^n)`.
    pub fn inflate(&self, n: usize) -> Polynomial {
        assert!(n >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u64; (self.coeffs.len() - 1) * n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * n] = c;
        }
        Polynomial { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Coefficient-wise embedding into the extension of `view`.
    pub fn embed(&self, view: &crate::field::ExtensionView) -> Result<Polynomial> {
        if view.base() != &self.ctx {
            return Err(Error::MixedFields);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| view.embed(&self.ctx.element(c)).map(|e| e.code()))
            .collect::<Result<Vec<u64>>>()?;
        Ok(Polynomial { ctx: view.ext().clone(), coeffs })
    }

    /// Coefficient-wise retraction to the base field of `view`; `None` when
    /// some coefficient lies outside the embedded base field.
    pub fn retract(&self, view: &crate::field::ExtensionView) -> Result<Option<Polynomial>> {
        if view.ext() != &self.ctx {
            return Err(Error::MixedFields);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            match view.retract(&self.ctx.element(c))? {
                Some(e) => coeffs.push(e.code()),
                None => return Ok(None),
            }
        }
        Ok(Some(Polynomial { ctx: view.base().clone(), coeffs }))
    }

    /// Polynomial composition `self(g)`.
    pub fn compose(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(g)?;
        let mut acc = Polynomial::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            acc = acc.add(&Polynomial::from_codes(&self.ctx, vec![c]))?;
        }
        Ok(acc)
    }

    /// The a-reciprocal `f*_a(x) = x^n f(a/x) / f(0)`; maps roots by
    /// `alpha -> a/alpha` and is monic on monic input.
    pub fn a_reciprocal(&self, a: &FieldElement) -> Result<Polynomial> {
        if a.ctx() != &self.ctx {
            return Err(Error::MixedFields);
        }
        if a.is_zero() {
            return Err(Error::ZeroParameter);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.coeffs[0] == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.coeffs.len() - 1;
        let c0_inv = self.ctx.inv_code(self.coeffs[0]).expect("nonzero constant");
        let mut out = vec![0u64; n + 1];
        let mut a_pow = 1u64;
        // coefficient of x^(n-i) is c_i * a^i / c_0
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[n - i] = self.ctx.mul_code(self.ctx.mul_code(c, a_pow), c0_inv);
            a_pow = self.ctx.mul_code(a_pow, a.code());
        }
        trim(&mut out);
        Ok(Polynomial { ctx: self.ctx.clone(), coeffs: out })
    }

    /// Whether `f = f*_a`.
    pub fn is_a_self_reciprocal(&self, a: &FieldElement) -> Result<bool> {
        Ok(self.a_reciprocal(a)? == *self)
    }

    /// Canonical order: degree first, then coefficient codes compared from
    /// the constant term upward.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        debug_assert!(self.ctx == other.ctx);
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Renders in the canonical text format, e.g. `1*x^4+1*x^2+2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical text format; accepts omitted `1*` and `^1`.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Unsupported("empty polynomial text"));
        }
        if s == "0" {
            return Ok(Polynomial::zero(ctx));
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let bad = Error::Unsupported("malformed polynomial term");
            let (coeff_str, xpart) = match term.split_once('*') {
                Some((c, x)) => (Some(c.trim()), Some(x.trim())),
                None => {
                    if term.starts_with('x') {
                        (None, Some(term))
                    } else {
                        (Some(term), None)
                    }
                }
            };
            let coeff: u64 = match coeff_str {
                Some(c) => c.parse().map_err(|_| bad.clone())?,
                None => 1,
            };
            if coeff >= ctx.q() {
                return Err(Error::Unsupported("coefficient code out of range"));
            }
            let degree: usize = match xpart {
                None => 0,
                Some("x") => 1,
                Some(x) => {
                    let rest = x.strip_prefix("x^").ok_or(bad.clone())?;
                    rest.parse().map_err(|_| bad)?
                }
            };
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            coeffs[degree] = ctx.add_code(coeffs[degree], coeff);
        }
        trim(&mut coeffs);
        Ok(Polynomial { ctx: ctx.clone(), coeffs })
    }
}

impl fmt::Display for Polynomial {
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
            if d == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*x^{}", c, d)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.ctx)
    }
}

/// A multiset of monic irreducible factors with multiplicities, plus the
/// leading scalar. `lead * prod f_i^{m_i}` reproduces the original
/// polynomial exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    lead: FieldElement,
    factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn new(lead: FieldElement, factors: Vec<(Polynomial, usize)>) -> Factorization {
        Factorization { lead, factors }
    }

    pub fn lead(&self) -> &FieldElement {
        &self.lead
    }

    pub fn factors(&self) -> &[(Polynomial, usize)] {
        &self.factors
    }

    /// Sorts factors canonically and merges duplicates; idempotent.
    pub fn canonicalize(&self) -> Factorization {
        let mut factors = self.factors.clone();
        factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        let mut merged: Vec<(Polynomial, usize)> = Vec::with_capacity(factors.len());
        for (poly, mult) in factors {
            match merged.last_mut() {
                Some((last, m)) if *last == poly => *m += mult,
                _ => merged.push((poly, mult)),
            }
        }
        Factorization { lead: self.lead.clone(), factors: merged }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(&self.lead);
        for (poly, mult) in &self.factors {
            acc = acc.mul(&poly.pow(*mult)).expect("same field");
        }
        acc
    }

    /// Total degree `sum m_i * deg f_i`.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.lead.is_one() {
            write!(f, "{}", self.lead)?;
            if !self.factors.is_empty() {
                write!(f, " * ")?;
            }
        }
        if self.factors.is_empty() && self.lead.is_one() {
            return write!(f, "1");
        }
        for (i, (poly, mult)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            // the lone monomial x prints bare; everything else in parens
            if poly.coeff_codes() == [0, 1] {
                write!(f, "x^{}", mult)?;
            } else {
                write!(f, "({})^{}", poly, mult)?;
            }
        }
        Ok(())
    }
}
