//! Resultants and discriminants over Z by the subresultant PRS, which keeps
//! every intermediate in Z[x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// `Res(a, b)`; zero if either input is zero.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(_), Some(_)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    let ca = a.content();
    let cb = b.content();
    let mut a = a.div_scalar_exact(&ca).unwrap();
    let mut b = b.div_scalar_exact(&cb).unwrap();
    let (mut da, mut db) = (a.degree().unwrap(), b.degree().unwrap());
    let t = pow(&ca, db) * pow(&cb, da);
    let mut s = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    if db == 0 {
        // Res(a, c) = c^deg a for a nonzero constant c
        return s * t * pow(&b.leading_coeff(), da);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * pow(&h, delta);
        b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
        g = a.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            let num = pow(&g, delta);
            let den = pow(&h, delta - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        da = a.degree().unwrap();
        match b.degree() {
            None => return BigInt::zero(),
            Some(0) => {
                let num = pow(&b.leading_coeff(), da);
                let den = pow(&h, da - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                return s * t * q;
            }
            Some(d) => db = d,
        }
    }
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegreeTooSmall),
    };
    let res = resultant(f, &f.derivative());
    let (q, r) = res.div_rem(&f.leading_coeff());
    debug_assert!(r.is_zero());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// True iff `f mod ell` keeps its degree and is coprime to its derivative.
pub fn is_separable_mod(f: &IntPoly, ell: u64) -> bool {
    let reduced = f.reduce_mod(ell);
    if reduced.degree() != f.degree() || reduced.is_zero() {
        return false;
    }
    reduced.gcd(&reduced.derivative()).is_one()
}
