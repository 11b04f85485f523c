//! Arithmetic for `F_q = F_{p^k}` and its quadratic extension `F_{q^2}`.
//!
//! Elements are canonically encoded as integers `sum c_i * p^i` in `[0, q)`
//! where `(c_0, ..., c_{k-1})` are the power-basis coordinates. Small
//! extension fields carry discrete-log tables (with Zech logarithms for odd
//! characteristic), so every operation is a table lookup; prime fields use
//! direct modular arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::intnum::{gcd, is_prime, prime_factors};

/// Largest supported field cardinality (desk scale).
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Extension fields up to this size get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 16;

const LOG_SENTINEL: u32 = u32::MAX;

struct Tables {
    /// exp[i] = code of g^i for 0 <= i < q-1.
    exp: Vec<u64>,
    /// log[code] = i with g^i = code; log[0] is a sentinel.
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), sentinel when 1 + g^i = 0. Odd p only.
    zech: Vec<u32>,
}

struct CtxInner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus coefficients, ascending, length k+1; empty when k = 1.
    modulus: Vec<u64>,
    tables: Option<Tables>,
    primitive_root: OnceLock<u64>,
}

/// A finite field `F_{p^k}`, cheap to clone and safe to share.
#[derive(Clone)]
pub struct FieldCtx(Arc<CtxInner>);

/// An element of a [`FieldCtx`], held as its canonical integer code.
#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldCtx,
    code: u64,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.ctx == other.ctx
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

// ---------------------------------------------------------------------------
// Raw polynomial arithmetic over F_p, used for modulus validation/search and
// as the arithmetic fallback for untabled extension fields.
// ---------------------------------------------------------------------------

mod fppoly {
    use crate::intnum::prime_factors;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo monic `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (j, &mj) in m.iter().enumerate().take(dm) {
                    let idx = shift + j;
                    r[idx] = (r[idx] + (p - mj % p) % p * lead) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            *o = (ai + p - bi) % p;
        }
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lead = *b.last().unwrap();
            let inv = super::inv_mod_p(lead, p);
            let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
            let r = rem(&a, &monic, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    /// Rabin irreducibility test for a monic polynomial over F_p.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        if f[0] == 0 {
            // divisible by x
            return false;
        }
        let x = vec![0u64, 1];
        // x^(p^j) mod f, computed incrementally over ascending targets
        let mut xq = x.clone();
        let mut reached = 0usize;
        let power_to = |target: usize, xq: &mut Vec<u64>, reached: &mut usize| {
            while *reached < target {
                *xq = pow_mod(xq, p, f, p);
                *reached += 1;
            }
        };
        let mut targets: Vec<usize> = prime_factors(k as u64).iter().map(|&r| k / r as usize).collect();
        targets.sort_unstable();
        for j in targets {
            power_to(j, &mut xq, &mut reached);
            let diff = sub(&xq, &x, p);
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        power_to(k, &mut xq, &mut reached);
        sub(&xq, &x, p).is_empty()
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // extended Euclid; a must be nonzero mod p
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i64) as u64
}

impl CtxInner {
    fn h(&self) -> u64 {
        self.q - 1
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.k as usize];
        for c in out.iter_mut() {
            *c = code % self.p;
            code /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut code = 0u64;
        for i in (0..self.k as usize).rev() {
            code = code * self.p + coeffs.get(i).copied().unwrap_or(0);
        }
        code
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.tables {
            if a == 0 {
                return b;
            }
            if b == 0 {
                return a;
            }
            let h = self.h();
            let la = t.log[a as usize] as u64;
            let lb = t.log[b as usize] as u64;
            let d = (lb + h - la) % h;
            let z = t.zech[d as usize];
            if z == LOG_SENTINEL {
                return 0;
            }
            return t.exp[((la + z as u64) % h) as usize];
        }
        let ca = self.decode(a);
        let cb = self.decode(b);
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if let Some(t) = &self.tables {
            if a == 0 {
                return 0;
            }
            let h = self.h();
            return t.exp[((t.log[a as usize] as u64 + h / 2) % h) as usize];
        }
        let ca = self.decode(a);
        let neg: Vec<u64> = ca.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&neg)
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return if a >= b { a - b } else { a + self.p - b };
        }
        if self.p == 2 {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let h = self.h();
            let l = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % h;
            return t.exp[l as usize];
        }
        let prod = fppoly::mul(&self.decode(a), &self.decode(b), self.p);
        self.encode(&fppoly::rem(&prod, &self.modulus, self.p))
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(inv_mod_p(a, self.p));
        }
        if let Some(t) = &self.tables {
            let h = self.h();
            let l = (h - t.log[a as usize] as u64) % h;
            return Some(t.exp[l as usize]);
        }
        Some(self.pow(a, (self.q - 2) as u128))
    }

    fn pow(&self, a: u64, e: u128) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let h = self.h();
        if h == 0 {
            return a; // F_2 has only 0 and 1
        }
        let e = (e % h as u128) as u64;
        if let Some(t) = &self.tables {
            let l = (t.log[a as usize] as u128 * e as u128 % h as u128) as u64;
            return t.exp[l as usize];
        }
        let mut result = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplication without tables, used while the tables are being built.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let prod = fppoly::mul(&self.decode(a), &self.decode(b), self.p);
        self.encode(&fppoly::rem(&prod, &self.modulus, self.p))
    }

    fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(result, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        result
    }

    fn find_primitive_root(&self) -> u64 {
        let h = self.h();
        if h == 1 {
            return 1;
        }
        let factors = prime_factors(h);
        for code in 2..self.q {
            let mut ok = true;
            for &r in &factors {
                if self.pow_raw(code, h / r) == 1 {
                    ok = false;
                    break;
                }
            }
            if ok {
                return code;
            }
        }
        unreachable!("every finite field has a primitive root");
    }

    fn primitive_root(&self) -> u64 {
        *self.primitive_root.get_or_init(|| self.find_primitive_root())
    }
}

impl FieldCtx {
    /// Builds `F_{p^k}`. With no modulus and `k > 1`, selects the
    /// lexicographically smallest monic irreducible of degree `k` over `F_p`
    /// (coefficients compared from the constant term upward).
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree(k as u64));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let q = match q {
            Some(q) => q as u64,
            None => return Err(Error::FieldTooLarge((p as u128).saturating_pow(k))),
        };
        let modulus = if k == 1 {
            if modulus.is_some() {
                return Err(Error::Unsupported("explicit modulus requires extension degree k > 1"));
            }
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let ok = m.len() == k as usize + 1
                        && *m.last().unwrap() == 1
                        && m.iter().all(|&c| c < p)
                        && fppoly::is_irreducible(m, p);
                    if !ok {
                        return Err(Error::ReducibleModulus);
                    }
                    m.to_vec()
                }
                None => smallest_irreducible(p, k),
            }
        };
        let mut inner = CtxInner { p, k, q, modulus, tables: None, primitive_root: OnceLock::new() };
        if k > 1 && q <= TABLE_LIMIT {
            let g = inner.find_primitive_root();
            let h = q - 1;
            let mut exp = vec![0u64; h as usize];
            let mut log = vec![LOG_SENTINEL; q as usize];
            exp[0] = 1;
            log[1] = 0;
            for i in 1..h as usize {
                exp[i] = inner.mul_raw(exp[i - 1], g);
                log[exp[i] as usize] = i as u32;
            }
            let mut zech = Vec::new();
            if p != 2 {
                zech = vec![LOG_SENTINEL; h as usize];
                for (i, z) in zech.iter_mut().enumerate() {
                    // 1 + g^i in coordinates
                    let mut c = inner.decode(exp[i]);
                    c[0] = (c[0] + 1) % p;
                    let s = inner.encode(&c);
                    if s != 0 {
                        *z = log[s as usize];
                    }
                }
            }
            inner.tables = Some(Tables { exp, log, zech });
            let _ = inner.primitive_root.set(g);
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients (ascending, monic); `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn element(&self, code: u64) -> FieldElement {
        assert!(code < self.0.q, "element code {} out of range for {}", code, self);
        FieldElement { ctx: self.clone(), code }
    }

    /// Element with the given power-basis coordinates (missing ones are zero).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.0.k as usize);
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.0.p).collect();
        self.element(self.0.encode(&reduced))
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Iterates all element codes in canonical order.
    pub fn codes(&self) -> impl Iterator<Item = u64> {
        0..self.0.q
    }

    /// The smallest-code primitive root of `F_q^*`.
    pub fn primitive_root(&self) -> FieldElement {
        self.element(self.0.primitive_root())
    }

    /// The `gcd(d, q-1)` solutions of `x^d = 1`, as consecutive powers of a
    /// fixed generator; deterministic order.
    pub fn elements_of_order_dividing(&self, d: u64) -> Vec<FieldElement> {
        assert!(d >= 1);
        let h = self.0.h();
        if h == 0 {
            return vec![self.one()];
        }
        let e = gcd(d, h);
        let gen = self.0.pow(self.0.primitive_root(), (h / e) as u128);
        let mut out = Vec::with_capacity(e as usize);
        let mut cur = 1u64;
        for _ in 0..e {
            out.push(self.element(cur));
            cur = self.0.mul(cur, gen);
        }
        out
    }

    /// Builds `F_{q^2}` with the deterministic modulus rule and the embedding
    /// that sends the base generator to the smallest-code root of the base
    /// modulus in the extension.
    pub fn quadratic_extension(&self) -> Result<ExtensionView> {
        let inner = &self.0;
        if (inner.q as u128) * (inner.q as u128) > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge((inner.q as u128) * (inner.q as u128)));
        }
        let ext = FieldCtx::new(inner.p, inner.k * 2, None)?;
        let k = inner.k as usize;
        let mut embed_codes = vec![0u64; inner.q as usize];
        if k == 1 {
            // prime subfield: scalars embed as themselves
            for (c, slot) in embed_codes.iter_mut().enumerate() {
                *slot = c as u64;
            }
        } else {
            // smallest-code root of the base modulus in ext
            let mut root = None;
            'scan: for cand in ext.codes() {
                let mut acc = 0u64;
                for &mc in inner.modulus.iter().rev() {
                    acc = ext.0.add(ext.0.mul(acc, cand), mc);
                }
                if acc == 0 {
                    root = Some(cand);
                    break 'scan;
                }
            }
            let root = root.expect("base modulus splits in the quadratic extension");
            let mut pow_root = vec![1u64; k];
            for i in 1..k {
                pow_root[i] = ext.0.mul(pow_root[i - 1], root);
            }
            for code in 0..inner.q {
                let coords = inner.decode(code);
                let mut acc = 0u64;
                for (i, &c) in coords.iter().enumerate() {
                    acc = ext.0.add(acc, ext.0.mul(c, pow_root[i]));
                }
                embed_codes[code as usize] = acc;
            }
        }
        let retract_map = embed_codes
            .iter()
            .enumerate()
            .map(|(base_code, &ext_code)| (ext_code, base_code as u64))
            .collect();
        Ok(ExtensionView { base: self.clone(), ext, embed_codes, retract_map })
    }

    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        self.0.add(a, b)
    }

    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.0.sub(a, b)
    }

    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        self.0.neg(a)
    }

    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        self.0.mul(a, b)
    }

    pub(crate) fn inv_code(&self, a: u64) -> Option<u64> {
        self.0.inv(a)
    }
}

/// Picks the lexicographically smallest monic irreducible of degree `k`,
/// comparing coefficient tuples from the constant term upward.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = (p as u128).pow(k as u32);
    let mut m = 0u128;
    loop {
        debug_assert!(m < total, "no irreducible of degree {k} over F_{p}");
        let mut cand = vec![0u64; k + 1];
        cand[k] = 1;
        // big-endian digits of m, so cand[0] (constant term) varies slowest
        let mut rest = m;
        for i in (0..k).rev() {
            cand[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if fppoly::is_irreducible(&cand, p) {
            return cand;
        }
        m += 1;
    }
}

impl FieldElement {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Power-basis coordinates, length k.
    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.0.decode(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn check_ctx(&self, other: &FieldElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(self.ctx.element(self.ctx.0.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(self.ctx.element(self.ctx.0.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(self.ctx.element(self.ctx.0.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        let inv = self.ctx.0.inv(other.code).ok_or(Error::DivisionByZero)?;
        Ok(self.ctx.element(self.ctx.0.mul(self.code, inv)))
    }

    pub fn neg(&self) -> FieldElement {
        self.ctx.element(self.ctx.0.neg(self.code))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let inv = self.ctx.0.inv(self.code).ok_or(Error::DivisionByZero)?;
        Ok(self.ctx.element(inv))
    }

    /// `self^e` by square-and-multiply (table-backed fields reduce the
    /// exponent through the discrete log instead).
    pub fn pow(&self, e: u128) -> FieldElement {
        self.ctx.element(self.ctx.0.pow(self.code, e))
    }

    /// Order of the element in `F_q^*`, by descending through the prime
    /// factorization of q-1.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let h = self.ctx.0.h();
        if h == 0 {
            return Ok(1);
        }
        let mut d = h;
        for r in prime_factors(h) {
            while d.is_multiple_of(r) && self.ctx.0.pow(self.code, (d / r) as u128) == 1 {
                d /= r;
            }
        }
        Ok(d)
    }

    /// Whether the element has a square root in its own field. Zero counts
    /// as a square; in characteristic 2 everything is a square.
    pub fn is_square(&self) -> bool {
        if self.ctx.0.p == 2 || self.is_zero() {
            return true;
        }
        self.ctx.0.pow(self.code, ((self.ctx.0.q - 1) / 2) as u128) == 1
    }

    /// Deterministic square root: of the two roots in odd characteristic,
    /// the one with the smaller canonical code.
    pub fn sqrt(&self) -> Result<FieldElement> {
        let q = self.ctx.0.q;
        if self.ctx.0.p == 2 {
            return Ok(self.pow((q / 2) as u128));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_square() {
            return Err(Error::NotASquare);
        }
        let r = if q % 4 == 3 {
            self.pow(((q + 1) / 4) as u128)
        } else {
            self.tonelli_shanks()
        };
        let other = r.neg();
        Ok(if other.code < r.code { other } else { r })
    }

    fn tonelli_shanks(&self) -> FieldElement {
        let ctx = &self.ctx;
        let q = ctx.0.q;
        let (s, t) = crate::intnum::split_two_power(q - 1);
        // smallest-code quadratic nonresidue
        let z = ctx
            .codes()
            .map(|c| ctx.element(c))
            .find(|e| !e.is_zero() && !e.is_square())
            .expect("odd field has a nonsquare");
        let mut m = s;
        let mut c = z.pow(t as u128);
        let mut u = self.pow(t as u128);
        let mut r = self.pow(t.div_ceil(2) as u128);
        loop {
            if u.is_one() {
                return r;
            }
            let mut i = 0u32;
            let mut probe = u.clone();
            while !probe.is_one() {
                probe = probe.pow(2);
                i += 1;
            }
            let b = c.pow(1u128 << (m - i - 1));
            m = i;
            c = b.pow(2);
            u = u.mul(&c).expect("same field");
            r = r.mul(&b).expect("same field");
        }
    }
}

/// `F_{q^2}` together with the embedding of `F_q` and the Frobenius map.
#[derive(Debug)]
pub struct ExtensionView {
    base: FieldCtx,
    ext: FieldCtx,
    embed_codes: Vec<u64>,
    retract_map: HashMap<u64, u64>,
}

impl ExtensionView {
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn embed(&self, e: &FieldElement) -> Result<FieldElement> {
        if e.ctx() != &self.base {
            return Err(Error::MixedFields);
        }
        Ok(self.ext.element(self.embed_codes[e.code() as usize]))
    }

    /// Pulls an extension element back to the base field when it lies in the
    /// embedded copy; `None` otherwise.
    pub fn retract(&self, e: &FieldElement) -> Result<Option<FieldElement>> {
        if e.ctx() != &self.ext {
            return Err(Error::MixedFields);
        }
        Ok(self.retract_map.get(&e.code()).map(|&c| self.base.element(c)))
    }

    /// The map `beta -> beta^q`; an involution fixing exactly the embedded
    /// base field.
    pub fn frobenius(&self, e: &FieldElement) -> Result<FieldElement> {
        if e.ctx() != &self.ext {
            return Err(Error::MixedFields);
        }
        Ok(e.pow(self.base.q() as u128))
    }

    pub fn fixed_by_frobenius(&self, e: &FieldElement) -> Result<bool> {
        Ok(self.frobenius(e)? == *e)
    }
}

/// Parses a field spec string of the form `"p"` or `"p^k"`.
pub fn parse_field_spec(spec: &str) -> Option<(u64, u32)> {
    let spec = spec.trim();
    match spec.split_once('^') {
        Some((p, k)) => {
            let p = p.trim().parse().ok()?;
            let k = k.trim().parse().ok()?;
            Some((p, k))
        }
        None => Some((spec.parse().ok()?, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64, k: u32) -> FieldCtx {
        FieldCtx::new(p, k, None).unwrap()
    }

    #[test]
    fn field_new_prime() {
        let f5 = f(5, 1);
        assert_eq!(f5.q(), 5);
        assert_eq!(f5.modulus(), None);
    }

    #[test]
    fn field_new_f4_modulus() {
        // the only irreducible monic quadratic over F_2
        let f4 = f(2, 2);
        assert_eq!(f4.modulus(), Some(&[1u64, 1, 1][..]));
    }

    #[test]
    fn field_new_rejects_nonprime() {
        assert_eq!(FieldCtx::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn field_new_rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert_eq!(FieldCtx::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus);
    }

    #[test]
    fn field_too_large() {
        assert!(matches!(FieldCtx::new(2, 21, None).unwrap_err(), Error::FieldTooLarge(_)));
    }

    #[test]
    fn arith_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.element(3).mul(&f7.element(5)).unwrap(), f7.element(1));

        // omega * omega = omega + 1 in F_4 with modulus x^2 + x + 1
        let f4 = f(2, 2);
        let omega = f4.element_from_coeffs(&[0, 1]);
        let expected = f4.element_from_coeffs(&[1, 1]);
        assert_eq!(omega.mul(&omega).unwrap(), expected);

        let f5 = f(5, 1);
        assert_eq!(f5.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = f(5, 1);
        let f7 = f(7, 1);
        assert_eq!(f5.element(1).add(&f7.element(1)).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn mult_order_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.one().mult_order().unwrap(), 1);
        assert_eq!(f7.element(6).mult_order().unwrap(), 2);
        let f5 = f(5, 1);
        assert_eq!(f5.element(2).mult_order().unwrap(), 4);
        assert_eq!(f5.zero().mult_order().unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn squares_examples() {
        let f7 = f(7, 1);
        assert!(f7.element(2).is_square()); // 3^2 = 2
        assert!(!f7.element(3).is_square());
        let f4 = f(2, 2);
        for c in f4.codes() {
            assert!(f4.element(c).is_square());
        }
    }

    #[test]
    fn sqrt_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.element(2).sqrt().unwrap(), f7.element(3));
        assert_eq!(f7.element(1).sqrt().unwrap(), f7.element(1));
        assert_eq!(f7.element(3).sqrt().unwrap_err(), Error::NotASquare);
    }

    #[test]
    fn sqrt_exhaustive_small_fields() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3), (7, 2)] {
            let fq = f(p, k);
            let mut squares = 0usize;
            for c in fq.codes() {
                let e = fq.element(c);
                if e.is_square() {
                    if !e.is_zero() {
                        squares += 1;
                    }
                    let r = e.sqrt().unwrap();
                    assert_eq!(r.mul(&r).unwrap(), e, "sqrt failed in {} for {}", fq, c);
                    // tie-break: smaller canonical code
                    assert!(r.code() <= r.neg().code());
                }
            }
            let expected = if p == 2 { fq.q() - 1 } else { (fq.q() - 1) / 2 };
            assert_eq!(squares as u64, expected, "square count in {}", fq);
        }
    }

    #[test]
    fn order_invariants_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1C5);
        let fields = [f(7, 1), f(5, 1), f(3, 2), f(7, 2), f(2, 4), f(13, 1)];
        for _ in 0..1000 {
            let fq = &fields[rng.random_range(0..fields.len())];
            let code = rng.random_range(1..fq.q());
            let e = fq.element(code);
            let d = e.mult_order().unwrap();
            assert!(e.pow(d as u128).is_one());
            assert_eq!((fq.q() - 1) % d, 0);
            for r in prime_factors(d) {
                assert!(!e.pow((d / r) as u128).is_one());
            }
        }
    }

    #[test]
    fn quadratic_extension_examples() {
        let f7 = f(7, 1);
        let view = f7.quadratic_extension().unwrap();
        assert_eq!(view.ext().q(), 49);
        let e3 = view.embed(&f7.element(3)).unwrap();
        assert_eq!(view.frobenius(&e3).unwrap(), e3);

        // i^7 = -i for i with i^2 = -1 in F_49
        let minus_one = view.embed(&f7.element(6)).unwrap();
        let i = minus_one.sqrt().unwrap();
        assert_eq!(view.frobenius(&i).unwrap(), i.neg());

        let f5 = f(5, 1);
        let v5 = f5.quadratic_extension().unwrap();
        let lhs = v5.embed(&f5.element(2)).unwrap().mul(&v5.embed(&f5.element(3)).unwrap()).unwrap();
        assert_eq!(lhs, v5.embed(&f5.element(1)).unwrap());
    }

    #[test]
    fn frobenius_fixed_field_exhaustive() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (3, 2)] {
            let fq = f(p, k);
            let view = fq.quadratic_extension().unwrap();
            let embedded: std::collections::HashSet<u64> =
                fq.codes().map(|c| view.embed(&fq.element(c)).unwrap().code()).collect();
            for c in view.ext().codes() {
                let e = view.ext().element(c);
                let fixed = view.fixed_by_frobenius(&e).unwrap();
                assert_eq!(fixed, embedded.contains(&c), "fixed-field mismatch in {}^2 at {}", fq, c);
                // frobenius is an involution
                let back = view.frobenius(&view.frobenius(&e).unwrap()).unwrap();
                assert_eq!(back, e);
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (p, k) in [(7u64, 1u32), (3, 2), (5, 1), (13, 1)] {
            let fq = f(p, k);
            let view = fq.quadratic_extension().unwrap();
            let ext = view.ext();
            for _ in 0..200 {
                let a = ext.element(rng.random_range(0..ext.q()));
                let b = ext.element(rng.random_range(0..ext.q()));
                let lhs = view.frobenius(&a.add(&b).unwrap()).unwrap();
                let rhs = view.frobenius(&a).unwrap().add(&view.frobenius(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = view.frobenius(&a.mul(&b).unwrap()).unwrap();
                let rhs = view.frobenius(&a).unwrap().mul(&view.frobenius(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn embed_preserves_order() {
        for (p, k) in [(7u64, 1u32), (3, 2), (5, 1)] {
            let fq = f(p, k);
            let view = fq.quadratic_extension().unwrap();
            for c in 1..fq.q() {
                let e = fq.element(c);
                assert_eq!(e.mult_order().unwrap(), view.embed(&e).unwrap().mult_order().unwrap());
            }
        }
    }

    #[test]
    fn elements_of_order_dividing_examples() {
        let f7 = f(7, 1);
        let codes: Vec<u64> = f7.elements_of_order_dividing(2).iter().map(|e| e.code()).collect();
        assert_eq!(codes.len(), 2);
        assert!(codes.contains(&1) && codes.contains(&6));

        let f5 = f(5, 1);
        let codes: Vec<u64> = f5.elements_of_order_dividing(1).iter().map(|e| e.code()).collect();
        assert_eq!(codes, vec![1]);

        // cubes of the primitive root 3 of F_7: 1, 2, 4
        assert_eq!(f7.primitive_root().code(), 3);
        let codes: Vec<u64> = f7.elements_of_order_dividing(3).iter().map(|e| e.code()).collect();
        assert_eq!(codes, vec![1, 2, 4]);
    }

    #[test]
    fn desk_scale_bound_fields_work() {
        // largest supported binary field: no tables, coefficient fallback
        let big = f(2, 17);
        assert_eq!(big.q(), 131072);
        let e = big.element(54321);
        assert!(e.mul(&e.inv().unwrap()).unwrap().is_one());
        let r = e.sqrt().unwrap();
        assert_eq!(r.mul(&r).unwrap(), e);
        assert_eq!((big.q() - 1) % e.mult_order().unwrap(), 0);
        assert!(matches!(big.quadratic_extension().unwrap_err(), Error::FieldTooLarge(_)));

        // large prime field
        let fp = f(1_048_573, 1);
        let e = fp.element(999_999);
        assert!(e.mul(&e.inv().unwrap()).unwrap().is_one());
        let sq = e.mul(&e).unwrap();
        let r = sq.sqrt().unwrap();
        assert_eq!(r.mul(&r).unwrap(), sq);
    }

    #[test]
    fn tabled_and_raw_arithmetic_agree() {
        // F_27 is table-backed; recompute a sample with the raw fallback.
        let f27 = f(3, 3);
        let inner = &f27.0;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let a = rng.random_range(0..27);
            let b = rng.random_range(0..27);
            assert_eq!(inner.mul(a, b), inner.mul_raw(a, b));
            let ca = inner.decode(a);
            let cb = inner.decode(b);
            let sum: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % 3).collect();
            assert_eq!(inner.add(a, b), inner.encode(&sum));
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_field_spec("7"), Some((7, 1)));
        assert_eq!(parse_field_spec("3^2"), Some((3, 2)));
        assert_eq!(parse_field_spec("x"), None);
    }
}
