//! The correspondence between monic degree-m polynomials and monic
//! a-self-reciprocal polynomials of degree 2m.
//!
//! `phi` sends `f` to `x^m f(x + a/x)`; `psi` reads the top half of the
//! coefficients of `g = b_{2m} x^{2m} + ... + b_0` and returns
//! `b_m + sum b_{2m-i} D_{m-i}(x, a)`. The two maps are mutually inverse
//! multiplicative bijections, and they transport irreducibility: `psi(g)` is
//! irreducible for irreducible self-reciprocal `g`, and `psi(h * h*_a)` is
//! irreducible for irreducible `h` with `h != h*_a`.

use crate::dickson::dickson_first_prefix;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;

/// `x^m f(x + a/x)` for monic `f` of degree m >= 1: monic, a-self-reciprocal
/// and of degree 2m. Horner-style accumulation over `x^2 + a` keeps the
/// computation free of rational intermediates.
pub fn phi(f: &Polynomial, a: &FieldElement) -> Result<Polynomial> {
    if a.ctx() != f.ctx() {
        return Err(Error::MixedFields);
    }
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    let ctx = f.ctx();
    let m = f.degree().expect("monic implies nonzero");
    // x^m f(x + a/x) = sum_j c_j (x^2 + a)^j x^(m-j)
    let u = Polynomial::from_codes(ctx, vec![a.code(), 0, 1]);
    let codes = f.coeff_codes();
    let mut acc = Polynomial::from_codes(ctx, vec![codes[m]]);
    for j in (0..m).rev() {
        acc = acc.mul(&u)?;
        if codes[j] != 0 {
            acc = acc.add(&Polynomial::monomial(ctx, codes[j], m - j))?;
        }
    }
    Ok(acc)
}

/// Inverse of [`phi`]: accepts a monic polynomial of even degree `2m` whose
/// coefficients satisfy `b_i = a^(m-i) b_{2m-i}` (the image of `phi`) and
/// returns `b_m + sum b_{2m-i} D_{m-i}(x, a)`.
///
/// Inputs outside the image are rejected with `NotSelfReciprocal`. Note that
/// this is slightly stricter than `f = f*_a`: polynomials with constant term
/// `-a^m` (such as `x^2 - a`) equal their own a-reciprocal but are not
/// reachable by `phi`, and truncating them would not round-trip.
pub fn psi(g: &Polynomial, a: &FieldElement) -> Result<Polynomial> {
    if a.ctx() != g.ctx() {
        return Err(Error::MixedFields);
    }
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if !g.is_monic() || g.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    let deg = g.degree().expect("monic implies nonzero");
    if !deg.is_multiple_of(2) {
        return Err(Error::OddDegree);
    }
    let m = deg / 2;
    let ctx = g.ctx();
    let b = g.coeff_codes();
    let mut a_pow = ctx.one();
    for i in (0..m).rev() {
        a_pow = a_pow.mul(a).expect("same field");
        // b_i must equal a^(m-i) * b_{2m-i}
        let expected = ctx.mul_code(a_pow.code(), b[2 * m - i]);
        if b[i] != expected {
            return Err(Error::NotSelfReciprocal);
        }
    }
    let dicksons = dickson_first_prefix(m as u64, a);
    let mut out = Polynomial::from_codes(ctx, vec![b[m]]);
    for i in 0..m {
        let coeff = b[2 * m - i];
        if coeff == 0 {
            continue;
        }
        let term = dicksons[m - i].scale(&ctx.element(coeff))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Round-trip harness: checks `psi(phi(f)) = f` when the input is a plain
/// monic polynomial, or `phi(psi(g)) = g` when it is already in the image of
/// `phi`.
pub fn phi_psi_roundtrip(poly: &Polynomial, a: &FieldElement) -> Result<bool> {
    let as_image = poly.degree().map(|d| d % 2 == 0).unwrap_or(false) && psi(poly, a).is_ok();
    if as_image {
        let f = psi(poly, a)?;
        Ok(phi(&f, a)? == *poly)
    } else {
        let g = phi(poly, a)?;
        Ok(psi(&g, a)? == *poly)
    }
}
