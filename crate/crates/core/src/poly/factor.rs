//! Factorization over prime fields: square-free split, distinct-degree split,
//! then Cantor-Zassenhaus equal-degree splitting.
//!
//! The equal-degree step draws from a seeded ChaCha stream and the output is
//! sorted, so results do not depend on the seed or on the order splits occur.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::poly::{FpPoly, IntPoly};

pub const DEFAULT_SEED: u64 = 0x7a3e_5eed;

/// Monic irreducible factors of `f mod ell` with multiplicities.
pub fn factor_mod(f: &IntPoly, ell: u64) -> Result<Vec<(FpPoly, u32)>> {
    factor_mod_seeded(f, ell, DEFAULT_SEED)
}

pub fn factor_mod_seeded(f: &IntPoly, ell: u64, seed: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let reduced = f.reduce_mod(ell);
    if reduced.is_zero() {
        return Err(Error::ZeroPolynomial(ell));
    }
    Ok(factor(&reduced, seed))
}

/// Factors a nonzero polynomial over its prime field. Constants give an
/// empty list; the leading coefficient is dropped.
pub fn factor(f: &FpPoly, seed: u64) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        for (block, degree) in distinct_degree(&part) {
            for irreducible in equal_degree(&block, degree, &mut rng) {
                out.push((irreducible, mult));
            }
        }
    }
    out.sort();
    out
}

/// Square-free decomposition `f = ∏ a_i^i` of a monic polynomial, with
/// p-th root extraction where the derivative vanishes.
pub fn square_free(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in square_free(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if fac.degree().is_some_and(|d| d > 0) {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.div(&w);
    }
    if c.degree().is_some_and(|d| d > 0) {
        for (g, m) in square_free(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a monic square-free polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().is_some_and(|n| n >= 2 * d) {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn random_poly(p: u64, below_degree: usize, rng: &mut impl Rng) -> FpPoly {
    FpPoly::new(p, (0..below_degree).map(|_| rng.gen_range(0..p)).collect())
}

/// Equal-degree splitting of a monic square-free product of degree-`d`
/// irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut impl Rng) -> Vec<FpPoly> {
    let n = f.degree().expect("nonzero polynomial");
    if n == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    loop {
        let a = random_poly(p, n, rng);
        if a.degree().is_none_or(|k| k == 0) {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace to F_2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = t.pow_mod(p, f);
                norm = norm.mul_mod(&t, f);
            }
            norm.pow_mod((p - 1) / 2, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&candidate);
        if let Some(k) = g.degree() {
            if k > 0 && k < n {
                let mut parts = equal_degree(&g, d, rng);
                parts.extend(equal_degree(&f.div(&g), d, rng));
                return parts;
            }
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let p = f.modulus();
    let x = FpPoly::x(p);
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![x.rem(&f)];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(p, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(&f) {
        return false;
    }
    factorize(n as u64)
        .into_iter()
        .all(|(q, _)| f.gcd(&frob[n / q as usize].sub(&x)).is_one())
}

/// First monic irreducible of degree `r` over `F_ell`, enumerating the lower
/// coefficients as base-`ell` digits with the constant term least significant.
pub fn find_irreducible(ell: u64, r: usize) -> Result<FpPoly> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
    }
    let mut digits = vec![0u64; r];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let candidate = FpPoly::new(ell, coeffs);
        if is_irreducible(&candidate) {
            return Ok(candidate);
        }
        // increment; irreducibles always exist so this terminates
        for d in digits.iter_mut() {
            *d += 1;
            if *d < ell {
                break;
            }
            *d = 0;
        }
    }
}

/// Sorted `(degree, multiplicity)` multiset of a factorization.
pub fn factor_shape(factors: &[(FpPoly, u32)]) -> Vec<(usize, u32)> {
    let mut shape: Vec<(usize, u32)> =
        factors.iter().map(|(f, m)| (f.degree().unwrap_or(0), *m)).collect();
    shape.sort_unstable();
    shape
}
