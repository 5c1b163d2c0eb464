use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod};

/// Polynomial over the prime field `F_p`, coefficients in `[0, p)`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        poly.trim();
        poly
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("nonzero element of a prime field");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(p, (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % p).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(p, (0..n).map(|i| (self.coeff(i) + p - rhs.coeff(i)) % p).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(divisor.leading_coeff(), p).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = mul_mod(rem[i + dd], inv, p);
            if q == 0 {
                continue;
            }
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(q, c, p)) % p;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn div(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).0
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        self.mul(rhs).rem(modulus)
    }

    /// `self^exp mod modulus`, exponent given as little-endian u64 limbs.
    pub fn pow_mod_limbs(&self, exp: &[u64], modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for &limb in exp.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.mul_mod(&acc, modulus);
                if (limb >> bit) & 1 == 1 {
                    acc = acc.mul_mod(&base, modulus);
                }
            }
        }
        acc
    }

    pub fn pow_mod(&self, exp: u64, modulus: &Self) -> Self {
        self.pow_mod_limbs(&[exp], modulus)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    /// For `self = g(x^p)`, returns `g` (the p-th root over `F_p`).
    pub fn pth_root(&self) -> Self {
        let p = self.p as usize;
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}*x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_identity() {
        let a = FpPoly::from_i64(7, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let b = FpPoly::from_i64(7, &[2, 7, 1, 8]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().is_none_or(|d| d < 3));
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_is_monic() {
        // (x - 1)(x - 2) and (x - 1)(x - 3) over F_5
        let a = FpPoly::from_i64(5, &[2, -3, 1]);
        let b = FpPoly::from_i64(5, &[3, -4, 1]).scale(3);
        assert_eq!(a.gcd(&b), FpPoly::from_i64(5, &[-1, 1]));
    }

    #[test]
    fn char_p_derivative_vanishes() {
        let f = FpPoly::from_i64(3, &[1, 0, 0, 1]);
        assert!(f.derivative().is_zero());
        assert_eq!(f.pth_root(), FpPoly::from_i64(3, &[1, 1]));
    }

    #[test]
    fn fermat_in_quotient_ring() {
        // x^(p^2) ≡ x mod an irreducible quadratic
        let m = FpPoly::from_i64(3, &[1, 0, 1]);
        let x = FpPoly::x(3);
        assert_eq!(x.pow_mod(9, &m), x);
    }
}
