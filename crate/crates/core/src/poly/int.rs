use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{decimal, reduce};
use crate::poly::FpPoly;

/// Dense integer polynomial, coefficients in ascending degree.
///
/// The last stored coefficient is nonzero; the zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawIntPoly")]
pub struct IntPoly {
    #[serde(with = "decimal::bigint_vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawIntPoly {
    #[serde(with = "decimal::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl From<RawIntPoly> for IntPoly {
    fn from(raw: RawIntPoly) -> Self {
        IntPoly::new(raw.coeffs)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(1, n);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides every coefficient by `c`; `None` unless all divisions are exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Exact quotient `self / divisor` over Z, or `None` if it does not exist.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<Self> {
        let dd = divisor.degree()?;
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(Self::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lc = b.leading_coeff();
        let mut rem = self.clone();
        let mut steps = da - db + 1;
        while rem.degree().is_some_and(|d| d >= db) {
            let shift = rem.degree().unwrap() - db;
            let top = rem.leading_coeff();
            let mut next = rem.scale(&lc).coeffs;
            for (j, c) in b.coeffs.iter().enumerate() {
                next[shift + j] -= &top * c;
            }
            rem = Self::new(next);
            steps -= 1;
        }
        rem.scale(&num_traits::pow(lc, steps))
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn mod_coeffs(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// True when `self ≡ other` coefficientwise modulo `m`.
    pub fn congruent(&self, other: &IntPoly, m: &BigInt) -> bool {
        (self - other).coeffs.iter().all(|c| c.mod_floor(m).is_zero())
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        FpPoly::new(p, self.coeffs.iter().map(|c| reduce(c, p)).collect())
    }

    /// Lift of an `F_p` polynomial with coefficients in `[0, p)`.
    pub fn lift(f: &FpPoly) -> Self {
        Self::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}
