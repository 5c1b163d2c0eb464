use std::collections::BTreeMap;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// The `d`-th cyclotomic polynomial, by exact division of `x^d - 1` by the
/// cyclotomic polynomials of the proper divisors of `d`.
pub fn cyclotomic(d: u64) -> Result<IntPoly> {
    Ok(cyclotomic_table(d)?.remove(&d).expect("d divides itself"))
}

/// `Φ_e` for every divisor `e` of `n`.
pub fn cyclotomic_table(n: u64) -> Result<BTreeMap<u64, IntPoly>> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclotomic index must be >= 1".into()));
    }
    let mut table: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for d in divisors(n) {
        let mut phi = IntPoly::x_pow_minus_one(d as usize);
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            phi = phi.div_exact(&table[&e]).expect("cyclotomic factors divide x^d - 1");
        }
        table.insert(d, phi);
    }
    Ok(table)
}

/// `(t^n - 1)/(t - 1)` for odd `n`, `(t^n - 1)/(t^2 - 1)` for even `n`: the
/// minimal polynomial of the order-`n` automorphism `x -> ζ_n x` acting on
/// the Jacobian of `y^2 = x^n - a`.
pub fn pn_poly(n: u64) -> Result<IntPoly> {
    if n < 3 {
        return Err(Error::GenusZero(n));
    }
    let numerator = IntPoly::x_pow_minus_one(n as usize);
    let denominator = if n % 2 == 1 {
        IntPoly::x_pow_minus_one(1)
    } else {
        IntPoly::x_pow_minus_one(2)
    };
    Ok(numerator.div_exact(&denominator).expect("exact for every n"))
}
