//! Generic factorization machinery, independent of any Dickson structure, used to verify the
//! explicit engine: Rabin irreducibility, characteristic-aware squarefree
//! decomposition, distinct-degree/equal-degree factorization, and the
//! exponent (order of a root) of an irreducible polynomial.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intnum::{gcd_u128, prime_factors, prime_factors_u128, rad};
use crate::poly::{Factorization, Polynomial};

/// Rabin's test: `f` of degree m is irreducible iff `x^(q^m) = x (mod f)`
/// and `gcd(x^(q^(m/r)) - x, f) = 1` for every prime `r | m`.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let m = match f.degree() {
        None | Some(0) => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let f = f.make_monic();
    let ctx = f.ctx().clone();
    let q = ctx.q() as u128;
    let x = Polynomial::x(&ctx);
    let mut h = x.clone();
    let mut reached = 0usize;
    let mut raise = |h: &mut Polynomial, to: usize| {
        while reached < to {
            *h = h.pow_mod(q, &f).expect("nonzero modulus");
            reached += 1;
        }
    };
    let mut targets: Vec<usize> = prime_factors(m as u64).iter().map(|&r| m / r as usize).collect();
    targets.sort_unstable();
    for j in targets {
        raise(&mut h, j);
        let g = f.gcd(&h.sub(&x).expect("same field")).expect("same field");
        if g.degree() != Some(0) {
            return false;
        }
    }
    raise(&mut h, m);
    h == x.rem(&f).expect("nonzero modulus")
}

/// Coefficient-wise p-th root of a polynomial whose derivative vanishes
/// (all exponents divisible by p).
fn pth_root(f: &Polynomial) -> Polynomial {
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let codes = f.coeff_codes();
    debug_assert!(codes.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
    let root_exp = (ctx.q() / ctx.p()) as u128;
    let mut out = vec![0u64; (codes.len() - 1) / p + 1];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = ctx.element(codes[j * p]).pow(root_exp).code();
    }
    Polynomial::from_codes(ctx, out)
}

/// `f = prod g_i^i` with the `g_i` squarefree, monic and pairwise coprime,
/// returned in increasing multiplicity order. Derivative-zero parts are
/// handled by p-th root extraction and recursion.
pub fn squarefree_decompose(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    assert!(f.degree().map(|d| d >= 1).unwrap_or(false), "need deg >= 1");
    let mut parts: BTreeMap<usize, Polynomial> = BTreeMap::new();
    decompose_into(&f.make_monic(), 1, &mut parts);
    parts.into_iter().map(|(m, g)| (g, m)).collect()
}

fn decompose_into(f: &Polynomial, scale: usize, parts: &mut BTreeMap<usize, Polynomial>) {
    if f.degree().map(|d| d == 0).unwrap_or(true) {
        return;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        decompose_into(&pth_root(f), scale * f.ctx().p() as usize, parts);
        return;
    }
    let mut c = f.gcd(&deriv).expect("same field");
    let mut w = f.divrem(&c).expect("nonzero gcd").0;
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c).expect("same field");
        let z = w.divrem(&y).expect("nonzero gcd").0;
        if z.degree() != Some(0) {
            parts
                .entry(scale * i)
                .and_modify(|g| *g = g.mul(&z).expect("same field"))
                .or_insert(z);
        }
        w = y;
        c = c.divrem(&w).expect("nonzero gcd").0;
        i += 1;
    }
    // what remains of c collects the factors with multiplicity divisible by p
    if c.degree() != Some(0) {
        decompose_into(&pth_root(&c), scale * f.ctx().p() as usize, parts);
    }
}

/// Splits squarefree monic `f` into products of irreducibles grouped by
/// degree, in increasing degree order.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let ctx = f.ctx().clone();
    let q = ctx.q() as u128;
    let x = Polynomial::x(&ctx);
    let mut rem = f.clone();
    let mut out = Vec::new();
    let mut h = x.pow_mod(q, &rem).expect("nonzero modulus"); // x^(q^d) mod rem
    let mut d = 1usize;
    while rem.degree().map(|deg| deg >= 2 * d).unwrap_or(false) {
        let g = rem.gcd(&h.sub(&x).expect("same field")).expect("same field");
        if g.degree() != Some(0) {
            out.push((g.clone(), d));
            rem = rem.divrem(&g).expect("nonzero divisor").0;
            if rem.degree() == Some(0) {
                return out;
            }
            h = h.rem(&rem).expect("nonzero modulus");
        }
        d += 1;
        h = h.pow_mod(q, &rem).expect("nonzero modulus");
    }
    if rem.degree().map(|deg| deg >= 1).unwrap_or(false) {
        out.push((rem.clone(), rem.degree().unwrap()));
    }
    out
}

/// Equal-degree splitting of a squarefree product of degree-`d` irreducibles.
/// Odd characteristic uses the quadratic-residue map through the norm to the
/// prime subgroup; characteristic 2 uses the absolute trace sum.
fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let deg = f.degree().expect("nonzero");
    if deg == d {
        out.push(f.make_monic());
        return;
    }
    let ctx = f.ctx().clone();
    let q = ctx.q();
    // linear blocks over a small field: roots by direct scan
    if d == 1 && q <= 4096 {
        for code in ctx.codes() {
            let e = ctx.element(code);
            if f.eval(&e).expect("same field").is_zero() {
                out.push(Polynomial::from_codes(&ctx, vec![ctx.neg_code(code), 1]));
            }
        }
        return;
    }
    let split = loop {
        let deg_h = rng.random_range(1..deg);
        let mut codes: Vec<u64> = (0..=deg_h).map(|_| rng.random_range(0..q)).collect();
        if codes.iter().all(|&c| c == 0) {
            codes[0] = 1;
        }
        let h = Polynomial::from_codes(&ctx, codes);
        let g = f.gcd(&h).expect("same field");
        if g.degree().unwrap_or(0) > 0 && g.degree() < f.degree() {
            break g;
        }
        let probe = if ctx.p() == 2 {
            // trace: h + h^2 + h^4 + ... over F_2, k*d terms
            let rounds = ctx.k() as usize * d;
            let mut cur = h.rem(f).expect("nonzero modulus");
            let mut acc = cur.clone();
            for _ in 1..rounds {
                cur = cur.mul(&cur).expect("same field").rem(f).expect("nonzero modulus");
                acc = acc.add(&cur).expect("same field");
            }
            acc
        } else {
            // h^((q^d - 1)/2) = (h^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut frob = h.rem(f).expect("nonzero modulus");
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(q as u128, f).expect("nonzero modulus");
                norm = norm.mul(&frob).expect("same field").rem(f).expect("nonzero modulus");
            }
            let r = norm.pow_mod(((q - 1) / 2) as u128, f).expect("nonzero modulus");
            r.sub(&Polynomial::one(&ctx)).expect("same field")
        };
        let g = f.gcd(&probe).expect("same field");
        if g.degree().unwrap_or(0) > 0 && g.degree() < f.degree() {
            break g;
        }
    };
    let rest = f.divrem(&split).expect("nonzero divisor").0;
    equal_degree(&split, d, rng, out);
    equal_degree(&rest, d, rng, out);
}

/// Complete factorization into monic irreducibles in canonical order.
/// Equal-degree splitting draws from a ChaCha stream seeded by `seed`, so
/// runs are reproducible; the canonical output is seed-independent.
pub fn factor(f: &Polynomial, seed: u64) -> Factorization {
    assert!(f.degree().map(|d| d >= 1).unwrap_or(false), "need deg >= 1");
    let lead = f.leading_coeff();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (g, mult) in squarefree_decompose(f) {
        for (block, d) in distinct_degree(&g) {
            let mut irreducibles = Vec::new();
            equal_degree(&block, d, &mut rng, &mut irreducibles);
            factors.extend(irreducibles.into_iter().map(|h| (h, mult)));
        }
    }
    Factorization::new(lead, factors).canonicalize()
}

fn field_power_u128(q: u64, m: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(m as u32)
        .ok_or(Error::FieldTooLarge(u128::MAX))
}

/// The exponent of an irreducible polynomial: the multiplicative order of
/// `x` in `F_q[x]/(f)`, i.e. the order of any root. Computed by order
/// descent over the factorization of `q^m - 1`, so `q^m` must fit in 128
/// bits.
pub fn exponent(f: &Polynomial) -> Result<u128> {
    let m = match f.degree() {
        None | Some(0) => return Err(Error::NotIrreducible),
        Some(m) => m,
    };
    if f.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let f = f.make_monic();
    let ctx = f.ctx().clone();
    let big_q = field_power_u128(ctx.q(), m)?;
    let x = Polynomial::x(&ctx);
    let one = Polynomial::one(&ctx);
    let mut e = big_q - 1;
    for r in prime_factors_u128(big_q - 1) {
        while e % r == 0 && x.pow_mod(e / r, &f)? == one {
            e /= r;
        }
    }
    Ok(e)
}

/// Predicate for irreducibility of `f(x^n)` given irreducible `f` of degree
/// m and exponent e: `rad(n) | e`, `gcd(n, (q^m-1)/e) = 1`, and `4 | n`
/// forces `4 | q^m - 1`. Agrees with `is_irreducible(f.inflate(n))`.
pub fn composition_irreducible(f: &Polynomial, n: u64) -> Result<bool> {
    assert!(n >= 1);
    let e = exponent(f)?;
    let m = f.degree().expect("checked by exponent");
    let big_q = field_power_u128(f.ctx().q(), m)?;
    let cofactor = (big_q - 1) / e;
    let ok = e % rad(n) as u128 == 0
        && gcd_u128(n as u128, cofactor) == 1
        && (!n.is_multiple_of(4) || (big_q - 1) % 4 == 0);
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};

    fn f(p: u64, k: u32) -> FieldCtx {
        FieldCtx::new(p, k, None).unwrap()
    }

    fn poly(ctx: &FieldCtx, coeffs: &[u64]) -> Polynomial {
        Polynomial::from_codes(ctx, coeffs.to_vec())
    }

    #[test]
    fn irreducibility_examples() {
        let f7 = f(7, 1);
        assert!(is_irreducible(&poly(&f7, &[1, 0, 1]))); // -1 nonsquare mod 7
        let f5 = f(5, 1);
        assert!(!is_irreducible(&poly(&f5, &[1, 0, 1]))); // roots 2, 3
        assert!(is_irreducible(&Polynomial::x(&f5)));
        assert!(!is_irreducible(&Polynomial::one(&f5)));
    }

    #[test]
    fn squarefree_examples() {
        let f4 = f(2, 2);
        // x (x+1)^2
        let x = Polynomial::x(&f4);
        let xp1 = poly(&f4, &[1, 1]);
        let prod = x.mul(&xp1).unwrap().mul(&xp1).unwrap();
        let parts = squarefree_decompose(&prod);
        assert_eq!(parts, vec![(x.clone(), 1), (xp1, 2)]);

        // squarefree input comes back whole
        let f5 = f(5, 1);
        let g = poly(&f5, &[1, 1, 1]);
        assert_eq!(squarefree_decompose(&g), vec![(g.clone(), 1)]);

        // x^p - c = (x - c^(1/p))^p
        let c = f5.element(3);
        let mut codes = vec![0u64; 6];
        codes[0] = c.neg().code();
        codes[5] = 1;
        let binom = poly(&f5, &codes);
        let root = c.pow((f5.q() / f5.p()) as u128);
        let expect = poly(&f5, &[root.neg().code(), 1]);
        assert_eq!(squarefree_decompose(&binom), vec![(expect, 5)]);
    }

    #[test]
    fn factor_examples() {
        let f5 = f(5, 1);
        // x^8 + 1 = (x^4 + 2)(x^4 + 3) over F_5
        let mut codes = vec![0u64; 9];
        codes[0] = 1;
        codes[8] = 1;
        let fact = factor(&poly(&f5, &codes), 0);
        let expect = [(poly(&f5, &[2, 0, 0, 0, 1]), 1), (poly(&f5, &[3, 0, 0, 0, 1]), 1)];
        assert_eq!(fact.factors(), &expect[..]);

        // x^4 + 1 = (x^2 + 3x + 1)(x^2 + 4x + 1) over F_7
        let f7 = f(7, 1);
        let fact = factor(&poly(&f7, &[1, 0, 0, 0, 1]), 0);
        let expect = [(poly(&f7, &[1, 3, 1]), 1), (poly(&f7, &[1, 4, 1]), 1)];
        assert_eq!(fact.factors(), &expect[..]);

        // irreducible input comes back alone
        let g = poly(&f7, &[1, 0, 1]);
        let fact = factor(&g, 9);
        assert_eq!(fact.factors(), &[(g, 1)][..]);
    }

    #[test]
    fn factor_is_seed_stable_and_canonical() {
        let f9 = f(3, 2);
        let mut codes = vec![0u64; 13];
        codes[0] = 1;
        codes[3] = 2;
        codes[12] = 1;
        let target = poly(&f9, &codes);
        let a = factor(&target, 1);
        let b = factor(&target, 1);
        let c = factor(&target, 42);
        assert_eq!(a, b);
        assert_eq!(a, c); // canonical output is seed-independent
        assert_eq!(a.expand(), target);
    }

    #[test]
    fn factor_reconstructs_seeded_inputs() {
        let fields = [f(2, 1), f(3, 1), f(2, 2), f(5, 1), f(7, 1), f(3, 2), f(5, 2)];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xFAC);
        for trial in 0..1000 {
            let fq = &fields[rng.random_range(0..fields.len())];
            let deg = rng.random_range(1..=12usize);
            let mut codes: Vec<u64> = (0..=deg).map(|_| rng.random_range(0..fq.q())).collect();
            if codes[deg] == 0 {
                codes[deg] = 1;
            }
            let target = poly(fq, &codes);
            let fact = factor(&target, trial);
            assert_eq!(fact.expand(), target, "reconstruction failed over {fq}");
            for (g, _) in fact.factors() {
                assert!(is_irreducible(g), "non-irreducible factor {g:?}");
                assert!(g.is_monic());
            }
        }
    }

    #[test]
    fn exponent_examples() {
        let f5 = f(5, 1);
        assert_eq!(exponent(&poly(&f5, &[3, 1])).unwrap(), 4); // x - 2
        assert_eq!(exponent(&poly(&f5, &[4, 1])).unwrap(), 1); // x - 1
        let f3 = f(3, 1);
        assert_eq!(exponent(&poly(&f3, &[1, 0, 1])).unwrap(), 4);
        assert_eq!(exponent(&poly(&f5, &[1, 0, 1])).unwrap_err(), Error::NotIrreducible);
        assert_eq!(exponent(&Polynomial::x(&f5)).unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn composition_examples() {
        let f5 = f(5, 1);
        let xm2 = poly(&f5, &[3, 1]);
        assert!(composition_irreducible(&xm2, 4).unwrap());
        assert!(is_irreducible(&xm2.inflate(4)));
        let xm1 = poly(&f5, &[4, 1]);
        assert!(!composition_irreducible(&xm1, 2).unwrap());
        let f7 = f(7, 1);
        let xm6 = poly(&f7, &[1, 1]);
        assert!(composition_irreducible(&xm6, 2).unwrap());
        assert!(is_irreducible(&poly(&f7, &[1, 0, 1])));
    }

    #[test]
    fn binomial_factor_shape_of_unity_roots() {
        // rad(n) | q-1 with q = 1 mod 4 or 8 not dividing n: binomials only.
        for (p, k, n) in [(5u64, 1u32, 16u64), (13, 1, 12), (7, 1, 12), (3, 2, 16), (7, 1, 6)] {
            let fq = f(p, k);
            let mut codes = vec![0u64; n as usize + 1];
            codes[0] = fq.one().neg().code();
            codes[n as usize] = 1;
            let fact = factor(&poly(&fq, &codes), 3);
            for (g, _) in fact.factors() {
                let d = g.degree().unwrap();
                let interior = g.coeff_codes()[1..d].iter().all(|&c| c == 0);
                assert!(interior, "non-binomial factor {g:?} of x^{n}-1 over {fq}");
            }
        }
        // q = 3 mod 4 with 8 | n: binomials or trinomials
        // x^(2t) - (b + b^q) x^t + b^(q+1) with b outside F_q, i.e. the
        // middle/constant pair forms an F_q-irreducible quadratic.
        for (p, n) in [(7u64, 8u64), (3, 8), (7, 24), (11, 16)] {
            let fq = f(p, 1);
            let mut codes = vec![0u64; n as usize + 1];
            codes[0] = fq.one().neg().code();
            codes[n as usize] = 1;
            let fact = factor(&poly(&fq, &codes), 3);
            for (g, _) in fact.factors() {
                let d = g.degree().unwrap();
                let body = g.coeff_codes();
                let binomial = body[1..d].iter().all(|&c| c == 0);
                if binomial {
                    continue;
                }
                assert_eq!(d % 2, 0, "odd-degree non-binomial {g:?}");
                let t = d / 2;
                let support_ok = (1..d).all(|i| i == t || body[i] == 0);
                assert!(support_ok, "unexpected support {g:?}");
                // z^2 + body[t] z + body[0] must be irreducible over F_q
                let quad = poly(&fq, &[body[0], body[t], 1]);
                assert!(is_irreducible(&quad), "trinomial shape without conjugate pair {g:?}");
            }
        }
    }
}
