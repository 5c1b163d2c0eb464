//! Point counts over small finite fields, Frobenius characteristic
//! polynomials, and sampled evidence about the mod-p image.
//!
//! The census only ever reports evidence. A verdict of
//! `ConsistentWithFullImage` means no sampled Frobenius ruled out
//! `GSp_2g(F_p)`; it is not a proof of surjectivity.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, mul_mod, primes_up_to, reduce};
use crate::construct::CurveSpec;
use crate::error::{Error, Result};
use crate::poly::{factor, factor_shape, find_irreducible, is_irreducible, is_separable_mod, FpPoly, IntPoly};

/// Largest field size enumerated by default.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Minimum number of good primes for a census.
pub const MIN_SAMPLES: usize = 5;

/// Samples needed before a structural bias is reported as an obstruction.
pub const OBSTRUCTION_WINDOW: usize = 50;

/// `F_{ℓ^r}` as `F_ℓ[t]/(m(t))` with `m` the first irreducible in
/// lexicographic order. Elements are coefficient vectors of length `r`,
/// indexed by their base-`ℓ` value.
#[derive(Debug, Clone)]
pub struct ExtField {
    ell: u64,
    degree: usize,
    /// lower coefficients of the monic modulus
    reduction: Vec<u64>,
}

impl ExtField {
    pub fn new(ell: u64, degree: usize) -> Result<Self> {
        let modulus = find_irreducible(ell, degree)?;
        Ok(ExtField { ell, degree, reduction: modulus.coeffs()[..degree].to_vec() })
    }

    pub fn size(&self) -> u64 {
        self.ell.pow(self.degree as u32)
    }

    pub fn modulus(&self) -> FpPoly {
        let mut c = self.reduction.clone();
        c.push(1);
        FpPoly::new(self.ell, c)
    }

    fn index(&self, a: &[u64]) -> usize {
        a.iter().rev().fold(0usize, |acc, &c| acc * self.ell as usize + c as usize)
    }

    fn element(&self, mut index: u64, out: &mut [u64]) {
        for c in out.iter_mut() {
            *c = index % self.ell;
            index /= self.ell;
        }
    }

    /// `out = a * b`; `scratch` must hold `2r - 1` entries.
    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64], scratch: &mut [u64]) {
        let (r, p) = (self.degree, self.ell);
        scratch.fill(0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                scratch[i + j] = (scratch[i + j] + x * y) % p;
            }
        }
        // t^r = -Σ reduction_i t^i
        for top in (r..2 * r - 1).rev() {
            let c = scratch[top];
            if c == 0 {
                continue;
            }
            scratch[top] = 0;
            for (i, &m) in self.reduction.iter().enumerate() {
                let idx = top - r + i;
                scratch[idx] = (scratch[idx] + (p - m) * c) % p;
            }
        }
        out.copy_from_slice(&scratch[..r]);
    }

    /// `a^((q-1)/2)` as `1`, `-1` or `0`, by square-and-multiply.
    pub fn quadratic_character(&self, a: &[u64]) -> i8 {
        let element = FpPoly::new(self.ell, a.to_vec());
        if element.is_zero() {
            return 0;
        }
        let q = BigUint::from(self.ell).pow(self.degree as u32);
        let exp: BigUint = (q - 1u32) / 2u32;
        let value = element.pow_mod_limbs(&exp.to_u64_digits(), &self.modulus());
        if value.is_one() {
            1
        } else {
            -1
        }
    }
}

fn check_budget(ell: u64, r: u32, budget: u64) -> Result<()> {
    match ell.checked_pow(r) {
        Some(q) if q <= budget => Ok(()),
        _ => Err(Error::BudgetExceeded { ell, degree: r, budget }),
    }
}

fn check_good_reduction(f: &IntPoly, ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell == 2 || !is_separable_mod(f, ell) {
        return Err(Error::BadReduction(ell));
    }
    Ok(())
}

pub fn count_points(f: &IntPoly, ell: u64, r: u32) -> Result<u64> {
    count_points_with_budget(f, ell, r, DEFAULT_BUDGET)
}

/// Projective points of the smooth model of `y^2 = f(x)` over `F_{ℓ^r}`:
/// `Σ_x (1 + χ(f(x)))` plus one point at infinity for odd degree, or
/// `1 + χ(lc f)` for even degree.
pub fn count_points_with_budget(f: &IntPoly, ell: u64, r: u32, budget: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
    }
    check_good_reduction(f, ell)?;
    check_budget(ell, r, budget)?;
    let coeffs: Vec<u64> = f.coeffs().iter().map(|c| reduce(c, ell)).collect();
    let odd_degree = (coeffs.len() - 1) % 2 == 1;
    if r == 1 {
        return Ok(count_prime_field(&coeffs, ell, odd_degree));
    }
    let field = ExtField::new(ell, r as usize)?;
    Ok(count_extension(&coeffs, &field, odd_degree))
}

fn count_prime_field(coeffs: &[u64], ell: u64, odd_degree: bool) -> u64 {
    let mut is_square = vec![false; ell as usize];
    for y in 1..ell {
        is_square[mul_mod(y, y, ell) as usize] = true;
    }
    let lc = *coeffs.last().unwrap();
    let mut total = if odd_degree {
        1
    } else if is_square[lc as usize] {
        2
    } else {
        0
    };
    for x in 0..ell {
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, ell) + c) % ell);
        total += match v {
            0 => 1,
            v if is_square[v as usize] => 2,
            _ => 0,
        };
    }
    total
}

fn count_extension(coeffs: &[u64], field: &ExtField, odd_degree: bool) -> u64 {
    let q = field.size();
    let r = field.degree;
    let mut scratch = vec![0u64; 2 * r - 1];
    let mut y = vec![0u64; r];
    let mut sq = vec![0u64; r];
    let mut is_square = vec![false; q as usize];
    for index in 1..q {
        field.element(index, &mut y);
        field.mul(&y, &y, &mut sq, &mut scratch);
        is_square[field.index(&sq)] = true;
    }
    let lc = *coeffs.last().unwrap() as usize;
    let mut total = if odd_degree {
        1
    } else if is_square[lc] {
        2
    } else {
        0
    };
    let mut x = vec![0u64; r];
    let mut acc = vec![0u64; r];
    let mut tmp = vec![0u64; r];
    for index in 0..q {
        field.element(index, &mut x);
        acc.fill(0);
        for &c in coeffs.iter().rev() {
            field.mul(&acc, &x, &mut tmp, &mut scratch);
            tmp[0] = (tmp[0] + c) % field.ell;
            std::mem::swap(&mut acc, &mut tmp);
        }
        total += match field.index(&acc) {
            0 => 1,
            v if is_square[v] => 2,
            _ => 0,
        };
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRecord {
    pub ell: u64,
    /// `N_1..N_g`
    pub counts: Vec<u64>,
    /// `T^2g - a_1 T^(2g-1) + ... + ℓ^g`, ascending coefficients
    pub charpoly: IntPoly,
    pub charpoly_mod_p: FpPoly,
    /// `ℓ mod p`
    pub multiplier: u64,
    pub irreducible_mod_p: bool,
}

impl FrobeniusRecord {
    pub fn genus(&self) -> usize {
        self.charpoly.degree().unwrap_or(0) / 2
    }

    /// `a_i` with `charpoly = Σ (-1)^i a_i T^(2g-i)`; `a_0 = 1`.
    pub fn a(&self, i: usize) -> BigInt {
        let two_g = 2 * self.genus();
        let c = self.charpoly.coeff(two_g - i);
        if i % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn trace(&self) -> BigInt {
        self.a(1)
    }

    /// `a_(2g-i) = ℓ^(g-i) a_i` for `0 <= i <= g`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus();
        (0..=g).all(|i| self.a(2 * g - i) == self.a(i) * num_traits::pow(BigInt::from(self.ell), g - i))
    }

    /// `|a_i| <= C(2g, i) ℓ^(i/2)`, compared after squaring.
    pub fn weil_bounds_hold(&self) -> bool {
        let two_g = 2 * self.genus();
        let ell = BigInt::from(self.ell);
        let mut binom = BigInt::one();
        for i in 0..=two_g {
            let a = self.a(i);
            if &a * &a > &binom * &binom * num_traits::pow(ell.clone(), i) {
                return false;
            }
            binom = binom * (two_g - i) / (i + 1);
        }
        true
    }

    /// Point counts `N_1..N_upto` predicted from the characteristic polynomial.
    pub fn predicted_counts(&self, upto: usize) -> Vec<BigInt> {
        let two_g = 2 * self.genus();
        let e: Vec<BigInt> = (0..=two_g).map(|i| self.a(i)).collect();
        let mut s: Vec<BigInt> = vec![BigInt::zero()];
        for k in 1..=upto {
            let mut acc = if k <= two_g { e[k].clone() * BigInt::from(k) } else { BigInt::zero() };
            for i in 1..k {
                if k - i > two_g {
                    continue;
                }
                let term = &e[k - i] * &s[i];
                if i % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            s.push(if k % 2 == 1 { acc } else { -acc });
        }
        (1..=upto)
            .map(|r| num_traits::pow(BigInt::from(self.ell), r) + 1 - &s[r])
            .collect()
    }

    /// Predicted counts are positive for `r <= 2g`.
    pub fn counts_positive(&self) -> bool {
        self.predicted_counts(2 * self.genus()).iter().all(Signed::is_positive)
    }
}

/// Characteristic polynomial from power sums `s_r = ℓ^r + 1 - N_r` via
/// Newton's identities for `a_1..a_g` and the functional equation for the rest.
pub fn charpoly_from_counts(counts: &[u64], ell: u64) -> IntPoly {
    let g = counts.len();
    let ell_big = BigInt::from(ell);
    let s: Vec<BigInt> = std::iter::once(BigInt::zero())
        .chain(
            counts
                .iter()
                .enumerate()
                .map(|(i, &n)| num_traits::pow(ell_big.clone(), i + 1) + 1 - BigInt::from(n)),
        )
        .collect();
    let mut e = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Newton identity division is exact");
        e.push(q);
    }
    for i in (0..g).rev() {
        e.push(&e[i] * num_traits::pow(ell_big.clone(), g - i));
    }
    let two_g = 2 * g;
    IntPoly::new(
        (0..=two_g)
            .map(|j| {
                let k = two_g - j;
                if k % 2 == 1 {
                    -e[k].clone()
                } else {
                    e[k].clone()
                }
            })
            .collect(),
    )
}

fn genus_of(f: &IntPoly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 3 => Ok((d - 1) / 2),
        _ => Err(Error::InvalidParameter("hyperelliptic f must have degree >= 3".into())),
    }
}

pub fn frobenius_charpoly(f: &IntPoly, ell: u64, g: usize, p: u64) -> Result<FrobeniusRecord> {
    frobenius_record(f, ell, g, p, DEFAULT_BUDGET)
}

pub fn frobenius_record(f: &IntPoly, ell: u64, g: usize, p: u64, budget: u64) -> Result<FrobeniusRecord> {
    if genus_of(f)? != g {
        return Err(Error::InvalidParameter(format!("f does not define a genus-{g} curve")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_good_reduction(f, ell)?;
    check_budget(ell, g as u32, budget)?;
    let counts = (1..=g as u32)
        .map(|r| count_points_with_budget(f, ell, r, budget))
        .collect::<Result<Vec<_>>>()?;
    let charpoly = charpoly_from_counts(&counts, ell);
    let charpoly_mod_p = charpoly.reduce_mod(p);
    let irreducible_mod_p = is_irreducible(&charpoly_mod_p);
    Ok(FrobeniusRecord { ell, counts, charpoly, charpoly_mod_p, multiplier: ell % p, irreducible_mod_p })
}

/// Compares predicted `N_r`, `g < r <= 2g`, with direct enumeration for
/// every `r` whose field fits in the budget. Returns `(r, predicted, counted)`.
pub fn self_check(f: &IntPoly, record: &FrobeniusRecord, budget: u64) -> Result<Vec<(u32, BigInt, u64)>> {
    let g = record.genus();
    let predicted = record.predicted_counts(2 * g);
    let mut out = Vec::new();
    for r in g + 1..=2 * g {
        if check_budget(record.ell, r as u32, budget).is_err() {
            break;
        }
        let counted = count_points_with_budget(f, record.ell, r as u32, budget)?;
        out.push((r as u32, predicted[r - 1].clone(), counted));
    }
    Ok(out)
}

/// Order of `x` in `(F_p[x]/P)^×`, i.e. of the companion matrix of `P`.
/// `None` when `P(0) = 0` or a residue-field order does not fit in a u64.
pub fn companion_order(poly: &FpPoly, seed: u64) -> Option<BigUint> {
    let p = poly.modulus();
    if poly.coeff(0) == 0 || poly.degree().is_none_or(|d| d == 0) {
        return None;
    }
    let x = FpPoly::x(p);
    let mut total = BigUint::one();
    for (q, m) in factor(poly, seed) {
        let k = q.degree().unwrap() as u32;
        let group = p.checked_pow(k)? - 1;
        let mut order = group;
        for (prime, _) in factorize(group) {
            while order % prime == 0 && x.pow_mod(order / prime, &q).is_one() {
                order /= prime;
            }
        }
        let mut order = BigUint::from(order);
        if m > 1 {
            let power = q.pow(m);
            let mut y = x.pow_mod_limbs(&order.to_u64_digits(), &power);
            while !y.is_one() {
                y = y.pow_mod(p, &power);
                order *= p;
            }
        }
        total = total.lcm(&order);
    }
    Some(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageVerdict {
    ConsistentWithFullImage,
    Inconclusive,
    ObstructionFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

pub const EVIDENCE_POLICY: &str = "evidence only, not a proof of surjectivity; \
ConsistentWithFullImage requires every class of (Z/p)^x among the multipliers and at least one \
charpoly irreducible mod p; ObstructionFound requires at least 50 samples and either one common \
reducible factorization shape mod p, or more than a quarter of the samples with trace exactly 0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEvidence {
    pub p: u64,
    pub sampled: usize,
    pub multiplier_classes_hit: Vec<u64>,
    pub irreducible_fraction: Fraction,
    pub trace_zero_count: usize,
    #[serde(with = "opt_decimal")]
    pub order_lcm: Option<BigUint>,
    pub verdict: ImageVerdict,
    pub policy: String,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(|_| serde::de::Error::custom("not a decimal integer")))
            .transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    pub budget: u64,
    pub seed: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { budget: DEFAULT_BUDGET, seed: crate::poly::DEFAULT_SEED, workers: None }
    }
}

/// Records for every good prime `3 <= ℓ <= ell_bound`, `ℓ ≠ p`, whose
/// fields fit in the budget, sorted by `ℓ`.
pub fn census(f: &IntPoly, p: u64, ell_bound: u64, config: &CensusConfig) -> Result<Vec<FrobeniusRecord>> {
    let g = genus_of(f)?;
    let primes: Vec<u64> = primes_up_to(ell_bound)
        .into_iter()
        .filter(|&l| l != 2 && l != p && is_separable_mod(f, l))
        .filter(|&l| check_budget(l, g as u32, config.budget).is_ok())
        .collect();
    let run = || {
        primes
            .par_iter()
            .map(|&ell| frobenius_record(f, ell, g, p, config.budget))
            .collect::<Result<Vec<_>>>()
    };
    match config.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run),
        None => run(),
    }
}

pub fn summarize(records: &[FrobeniusRecord], p: u64, seed: u64) -> Result<ImageEvidence> {
    if records.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(records.len()));
    }
    let mut classes: Vec<u64> = records.iter().map(|r| r.multiplier).collect();
    classes.sort_unstable();
    classes.dedup();
    let irreducible = records.iter().filter(|r| r.irreducible_mod_p).count();
    let trace_zero_count = records.iter().filter(|r| r.trace().is_zero()).count();
    let order_lcm = records
        .iter()
        .map(|r| companion_order(&r.charpoly_mod_p, seed))
        .try_fold(BigUint::one(), |acc, o| o.map(|o| acc.lcm(&o)));

    let all_units = classes.len() as u64 == p - 1;
    let shapes: Vec<Vec<(usize, u32)>> =
        records.iter().map(|r| factor_shape(&factor(&r.charpoly_mod_p, seed))).collect();
    let common_reducible_shape = irreducible == 0 && shapes.windows(2).all(|w| w[0] == w[1]);
    let obstruction = records.len() >= OBSTRUCTION_WINDOW
        && (common_reducible_shape || 4 * trace_zero_count > records.len());
    let verdict = if obstruction {
        ImageVerdict::ObstructionFound
    } else if all_units && irreducible > 0 {
        ImageVerdict::ConsistentWithFullImage
    } else {
        ImageVerdict::Inconclusive
    };
    Ok(ImageEvidence {
        p,
        sampled: records.len(),
        multiplier_classes_hit: classes,
        irreducible_fraction: Fraction { num: irreducible as u64, den: records.len() as u64 },
        trace_zero_count,
        order_lcm,
        verdict,
        policy: EVIDENCE_POLICY.to_string(),
    })
}

pub fn image_evidence_for(
    f: &IntPoly,
    p: u64,
    ell_bound: u64,
    config: &CensusConfig,
) -> Result<(Vec<FrobeniusRecord>, ImageEvidence)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let records = census(f, p, ell_bound, config)?;
    let evidence = summarize(&records, p, config.seed)?;
    Ok((records, evidence))
}

pub fn image_evidence(curve: &CurveSpec, ell_bound: u64) -> Result<ImageEvidence> {
    image_evidence_for(&curve.f, curve.p, ell_bound, &CensusConfig::default()).map(|(_, e)| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference count with the character computed by exponentiation.
    fn count_by_euler(f: &IntPoly, ell: u64, r: u32) -> u64 {
        let field = ExtField::new(ell, r as usize).unwrap();
        let m = field.modulus();
        let fr = f.reduce_mod(ell);
        let mut total: i64 = 0;
        let mut x = vec![0u64; r as usize];
        for index in 0..field.size() {
            field.element(index, &mut x);
            let xp = FpPoly::new(ell, x.clone());
            let mut acc = FpPoly::zero(ell);
            for &c in fr.coeffs().iter().rev() {
                acc = acc.mul_mod(&xp, &m).add(&FpPoly::constant(ell, c));
            }
            let mut v = acc.coeffs().to_vec();
            v.resize(r as usize, 0);
            total += 1 + field.quadratic_character(&v) as i64;
        }
        let deg = fr.degree().unwrap();
        total += if deg % 2 == 1 {
            1
        } else {
            1 + field.quadratic_character(&[fr.leading_coeff()]
                .iter()
                .copied()
                .chain(std::iter::repeat(0))
                .take(r as usize)
                .collect::<Vec<_>>()) as i64
        };
        total as u64
    }

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&poly(&[-1, 0, 0, 1]), 5, 1).unwrap(), 6);
        assert_eq!(count_points(&poly(&[-1, 0, 0, 0, 1]), 3, 1).unwrap(), 4);
        assert_eq!(count_points(&poly(&[-1, 0, 0, 0, 0, 1]), 3, 1).unwrap(), 4);
    }

    #[test]
    fn count_errors() {
        assert_eq!(count_points(&poly(&[-1, 0, 0, 1]), 3, 1), Err(Error::BadReduction(3)));
        assert_eq!(count_points(&poly(&[-1, 0, 0, 1]), 2, 1), Err(Error::BadReduction(2)));
        assert_eq!(
            count_points_with_budget(&poly(&[-1, 0, 0, 1]), 7, 3, 100),
            Err(Error::BudgetExceeded { ell: 7, degree: 3, budget: 100 })
        );
    }

    #[test]
    fn table_engine_matches_euler_criterion() {
        let curves = [poly(&[-1, 0, 0, 1]), poly(&[1, 3, 0, 2, 0, 1]), poly(&[2, -1, 4, 0, 1, 3])];
        for f in &curves {
            for ell in [5u64, 7, 11] {
                if !is_separable_mod(f, ell) {
                    continue;
                }
                for r in 1..=3u32 {
                    if ell.pow(r) > 2000 {
                        continue;
                    }
                    assert_eq!(count_points(f, ell, r).unwrap(), count_by_euler(f, ell, r), "{f} ell={ell} r={r}");
                }
            }
        }
    }

    #[test]
    fn charpoly_examples() {
        let rec = frobenius_charpoly(&poly(&[-1, 0, 0, 1]), 5, 1, 7).unwrap();
        assert_eq!(rec.charpoly, poly(&[5, 0, 1]));
        let rec = frobenius_charpoly(&poly(&[-1, 0, 0, 0, 1]), 3, 1, 5).unwrap();
        assert_eq!(rec.charpoly, poly(&[3, 0, 1]));
        assert_eq!(rec.multiplier, 3);
    }

    #[test]
    fn genus_two_prediction_matches_enumeration() {
        let f = poly(&[-1, 0, 0, 0, 0, 1]);
        let rec = frobenius_charpoly(&f, 7, 2, 5).unwrap();
        assert_eq!(rec.charpoly.degree(), Some(4));
        assert!(rec.functional_equation_holds());
        assert!(rec.weil_bounds_hold());
        for (r, predicted, counted) in self_check(&f, &rec, DEFAULT_BUDGET).unwrap() {
            assert_eq!(predicted, BigInt::from(counted), "r = {r}");
        }
    }

    #[test]
    fn companion_order_matches_direct_power_scan() {
        for coeffs in [[1i64, 1, 1], [3, 2, 1], [2, 0, 1], [1, 5, 1]] {
            let p = 7;
            let poly = FpPoly::from_i64(p, &coeffs);
            let order = companion_order(&poly, 0).unwrap();
            let x = FpPoly::x(p);
            let scanned = (1..=400u64).find(|&k| x.pow_mod(k, &poly).is_one()).unwrap();
            assert_eq!(order, BigUint::from(scanned), "{poly}");
        }
    }

    #[test]
    fn too_few_primes() {
        let f = poly(&[-1, 0, 0, 1]);
        let cfg = CensusConfig::default();
        assert_eq!(image_evidence_for(&f, 7, 3, &cfg), Err(Error::InsufficientData(0)));
    }
}
