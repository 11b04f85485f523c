//! Dickson polynomials of the first and second kind over a finite field,
//! the functional-identity check, and the permutation criterion.
//!
//! `D_n` satisfies `D_n(y + a/y) = y^n + a^n/y^n` and `E_n` satisfies
//! `E_n(y + a/y) * (y - a/y) = y^(n+1) - a^(n+1)/y^(n+1)`; both are built by
//! the three-term recurrence with seeds `D_0 = 2`, `E_0 = 1`, the values
//! forced by those identities at n = 0.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::intnum::gcd;
use crate::poly::Polynomial;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum DicksonKind {
    First,
    Second,
}

impl fmt::Display for DicksonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DicksonKind::First => write!(f, "first"),
            DicksonKind::Second => write!(f, "second"),
        }
    }
}

/// A Dickson polynomial instance `D_n(x, a)` or `E_n(x, a)`.
#[derive(Clone, Debug)]
pub struct DicksonSpec {
    pub kind: DicksonKind,
    pub n: u64,
    pub a: FieldElement,
}

impl DicksonSpec {
    pub fn new(kind: DicksonKind, n: u64, a: FieldElement) -> DicksonSpec {
        DicksonSpec { kind, n, a }
    }

    pub fn polynomial(&self) -> Result<Polynomial> {
        match self.kind {
            DicksonKind::First => dickson_first(self.n, &self.a),
            DicksonKind::Second => dickson_second(self.n, &self.a),
        }
    }
}

fn by_recurrence(seed0: u64, n: u64, a: &FieldElement) -> Polynomial {
    let ctx = a.ctx();
    let mut prev = Polynomial::from_codes(ctx, vec![seed0 % ctx.p()]);
    let mut cur = Polynomial::x(ctx);
    if n == 0 {
        return prev;
    }
    for _ in 2..=n {
        // next = x * cur - a * prev
        let mut shifted = vec![0u64];
        shifted.extend_from_slice(cur.coeff_codes());
        let shifted = Polynomial::from_codes(ctx, shifted);
        let next = shifted.sub(&prev.scale(a).expect("same field")).expect("same field");
        prev = cur;
        cur = next;
    }
    cur
}

/// `[D_0, D_1, ..., D_n]` in one pass of the recurrence.
pub(crate) fn dickson_first_prefix(n: u64, a: &FieldElement) -> Vec<Polynomial> {
    let ctx = a.ctx();
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Polynomial::from_codes(ctx, vec![2 % ctx.p()]));
    if n >= 1 {
        out.push(Polynomial::x(ctx));
    }
    for j in 2..=n {
        let mut shifted = vec![0u64];
        shifted.extend_from_slice(out[j as usize - 1].coeff_codes());
        let shifted = Polynomial::from_codes(ctx, shifted);
        let next = shifted
            .sub(&out[j as usize - 2].scale(a).expect("same field"))
            .expect("same field");
        out.push(next);
    }
    out
}

/// `D_n(x, a)`, monic of degree n.
pub fn dickson_first(n: u64, a: &FieldElement) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::InvalidDegree(n));
    }
    let poly = by_recurrence(2, n, a);
    debug_assert!(n > 64 || poly == by_formula(DicksonKind::First, n, a));
    Ok(poly)
}

/// `E_n(x, a)`, monic of degree n.
pub fn dickson_second(n: u64, a: &FieldElement) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::InvalidDegree(n));
    }
    let poly = by_recurrence(1, n, a);
    debug_assert!(n > 64 || poly == by_formula(DicksonKind::Second, n, a));
    Ok(poly)
}

/// Closed-form coefficients: the x^(n-2i) coefficient is
/// `n/(n-i) * C(n-i, i) * (-a)^i` for the first kind and `C(n-i, i) * (-a)^i`
/// for the second. Binomials are computed over the integers and reduced
/// mod p, so the integral factor n/(n-i) never meets characteristic-p
/// division. Exact up to n = 64.
fn by_formula(kind: DicksonKind, n: u64, a: &FieldElement) -> Polynomial {
    assert!((1..=64).contains(&n));
    let ctx = a.ctx();
    let mut coeffs = vec![0u64; n as usize + 1];
    let mut minus_a_pow = ctx.one();
    for i in 0..=(n / 2) {
        let binom = binomial_u128(n - i, i);
        let integer_coeff = match kind {
            // n * C(n-i, i) / (n-i) is always integral
            DicksonKind::First => binom * n as u128 / (n - i) as u128,
            DicksonKind::Second => binom,
        };
        let scalar = ctx.element((integer_coeff % ctx.p() as u128) as u64);
        let term = scalar.mul(&minus_a_pow).expect("same field");
        coeffs[(n - 2 * i) as usize] = term.code();
        minus_a_pow = minus_a_pow.mul(&a.neg()).expect("same field");
    }
    Polynomial::from_codes(ctx, coeffs)
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Verifies the defining functional identities on `samples` seeded points of
/// `F_{q^2}^*`; for the second kind, points with `y^2 = a` are skipped.
pub fn waring_check(kind: DicksonKind, n: u64, a: &FieldElement, samples: u32, seed: u64) -> Result<bool> {
    let ctx = a.ctx();
    let view = ctx.quadratic_extension()?;
    let ext = view.ext().clone();
    let a_ext = view.embed(a)?;
    let poly = DicksonSpec::new(kind, n, a.clone()).polynomial()?.embed(&view)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u32;
    while checked < samples {
        let y = ext.element(rng.random_range(1..ext.q()));
        let a_over_y = a_ext.div(&y)?;
        let u = y.add(&a_over_y)?;
        let yn = y.pow(n as u128);
        let an_over_yn = a_ext.pow(n as u128).div(&yn)?;
        match kind {
            DicksonKind::First => {
                if poly.eval(&u)? != yn.add(&an_over_yn)? {
                    return Ok(false);
                }
            }
            DicksonKind::Second => {
                let denom = y.sub(&a_over_y)?;
                if denom.is_zero() {
                    continue; // y^2 = a
                }
                let lhs = poly.eval(&u)?.mul(&denom)?;
                let yn1 = y.pow((n + 1) as u128);
                let rhs = yn1.sub(&a_ext.pow((n + 1) as u128).div(&yn1)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        checked += 1;
    }
    Ok(true)
}

/// Permutation criterion for the first kind: `D_n(x, 0) = x^n` permutes
/// `F_q` iff `gcd(n, q-1) = 1`; for nonzero `a`, `D_n(x, a)` permutes `F_q`
/// iff `gcd(n, q^2-1) = 1`.
pub fn is_permutation(kind: DicksonKind, n: u64, a: &FieldElement) -> Result<bool> {
    if kind != DicksonKind::First {
        return Err(Error::Unsupported("permutation criterion applies to the first kind only"));
    }
    let q = a.ctx().q();
    if a.is_zero() {
        Ok(gcd(n, q - 1) == 1)
    } else {
        Ok(gcd(n, q * q - 1) == 1)
    }
}
