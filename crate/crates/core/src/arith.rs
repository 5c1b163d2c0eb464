//! Exact integer and modular arithmetic.
//!
//! Large values (CRT moduli, polynomial coefficients, unit-group orders) are
//! [`BigInt`]/[`BigUint`]. Conductors, primes and group orders that need to be
//! factored are small and handled as `u64`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue `residue mod modulus` with `0 <= residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    #[serde(with = "decimal::bigint")]
    residue: BigInt,
    #[serde(with = "decimal::bigint")]
    modulus: BigInt,
}

impl ResidueClass {
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::one() {
            return Err(Error::InvalidParameter(format!("modulus {modulus} must be >= 1")));
        }
        let residue = residue.into().mod_floor(&modulus);
        Ok(ResidueClass { residue, modulus })
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Representative in `(-M/2, M/2]`.
    pub fn balanced(&self) -> BigInt {
        if &self.residue * 2 > self.modulus {
            &self.residue - &self.modulus
        } else {
            self.residue.clone()
        }
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        value.mod_floor(&self.modulus) == self.residue
    }
}

/// Combines congruences with pairwise coprime moduli into a single class
/// modulo the product. An empty list gives `0 mod 1`.
pub fn crt_combine(classes: &[ResidueClass]) -> Result<ResidueClass> {
    let mut acc = ResidueClass { residue: BigInt::zero(), modulus: BigInt::one() };
    for class in classes {
        let (r1, m1) = (&acc.residue, &acc.modulus);
        let (r2, m2) = (&class.residue, &class.modulus);
        let ext = m1.extended_gcd(m2);
        if !ext.gcd.is_one() {
            if (r1 - r2).mod_floor(&ext.gcd).is_zero() {
                return Err(Error::NonCoprimeModuli(m1.to_string(), m2.to_string()));
            }
            return Err(Error::ConflictingConstraints(format!(
                "{r1} mod {m1} vs {r2} mod {m2}"
            )));
        }
        // ext.x * m1 ≡ 1 (mod m2)
        let t = ((r2 - r1) * &ext.x).mod_floor(m2);
        let modulus = m1 * m2;
        let residue = (r1 + m1 * t).mod_floor(&modulus);
        acc = ResidueClass { residue, modulus };
    }
    Ok(acc)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// The first thirteen primes form a complete strong-pseudoprime witness set
// below 3.3e24, which covers every u64.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic Miller-Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d < TRIAL_DIVISION_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Brent's variant of Pollard rho; `n` must be composite.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut g = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// All positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Multiplicative order of `a` modulo `m`, found by stripping prime factors
/// from the group order `phi(m)`.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidParameter("modulus must be >= 1".into()));
    }
    if m == 1 {
        return Ok(1);
    }
    let a = a % m;
    if gcd_u64(a, m) != 1 {
        return Err(Error::NotAUnit(a, m));
    }
    let mut order = euler_phi(m);
    for (q, _) in factorize(order) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Exponent of `p` in `n`, or `None` when `n == 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `n mod m` as a `u64` in `[0, m)`.
pub fn reduce(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue below a u64 modulus")
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
        .collect()
}

pub fn big_pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Serde helpers writing integers as decimal strings.
pub mod decimal {
    pub mod bigint {
        use num_bigint::BigInt;
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}")))
        }
    }

    pub mod biguint {
        use num_bigint::BigUint;
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}")))
        }
    }

    pub mod bigint_vec {
        use num_bigint::BigInt;
        use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = v.iter().map(ToString::to_string).collect();
            strings.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let strings = Vec::<String>::deserialize(d)?;
            strings
                .iter()
                .map(|s| s.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}"))))
                .collect()
        }
    }
}
