//! CM structure of `Jac(y^2 = x^n - a)`: the endomorphism ring is
//! `∏_{d | n, d > 2} Z[ζ_d]`, and the splitting of `p` in each `Q(ζ_d)` gives
//! the unit group of `O_F ⊗ F_p` that bounds the mod-p image at `p`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, decimal, divisors, euler_phi, is_prime, mult_order};
use crate::certify::{CertificateEntry, Justification, Scope, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_table, pn_poly, IntPoly};

/// Splitting of `p` in `Q(ζ_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDatum {
    pub d: u64,
    /// ramification index
    pub e: u64,
    /// residue degree
    pub f: u64,
    /// number of primes above `p`
    #[serde(rename = "g")]
    pub g_count: u64,
}

impl SplittingDatum {
    /// Unit-group order of `∏_{v|p} F_v[ε]/ε^e`: `((p^f - 1) p^(f(e-1)))^g`.
    pub fn local_unit_order(&self, p: u64) -> BigUint {
        let residue_field = big_pow(p, self.f as u32);
        let per_place = (&residue_field - 1u32) * big_pow(p, (self.f * (self.e - 1)) as u32);
        num_traits::pow(per_place, self.g_count as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoStructure {
    pub n: u64,
    pub genus: u64,
    pub factors: Vec<SplittingDatum>,
    #[serde(with = "decimal::biguint")]
    pub unit_group_order: BigUint,
    pub p_unramified: bool,
}

pub fn genus_for(n: u64) -> u64 {
    (n.saturating_sub(1)) / 2
}

/// Divisors `d | n` with `d > 2`, ascending.
pub fn endo_ring(n: u64) -> Result<Vec<u64>> {
    if n < 3 {
        return Err(Error::GenusZero(n));
    }
    Ok(divisors(n).into_iter().filter(|&d| d > 2).collect())
}

pub fn splitting_data(d: u64, p: u64) -> Result<SplittingDatum> {
    if d == 0 {
        return Err(Error::InvalidParameter("conductor must be >= 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut prime_to_p = d;
    let mut p_power = 1u64;
    while prime_to_p.is_multiple_of(p) {
        prime_to_p /= p;
        p_power *= p;
    }
    let e = euler_phi(p_power);
    let f = mult_order(p % prime_to_p, prime_to_p)?;
    let g_count = euler_phi(prime_to_p) / f;
    Ok(SplittingDatum { d, e, f, g_count })
}

/// `|(O_F ⊗ F_p)^×| = ∏_d (p^f - 1)^g` for `p ∤ n`.
pub fn unit_group_order(n: u64, p: u64) -> Result<BigUint> {
    if n.is_multiple_of(p) {
        return Err(Error::RamifiedCase { n, p });
    }
    local_unit_group_order(n, p)
}

/// Unit-group order of `O_F ⊗ F_p` including the ramified case, where each
/// place contributes a `p`-group `1 + εF_v[ε]`.
pub fn local_unit_group_order(n: u64, p: u64) -> Result<BigUint> {
    endo_ring(n)?
        .into_iter()
        .map(|d| splitting_data(d, p).map(|s| s.local_unit_order(p)))
        .try_fold(BigUint::one(), |acc, order| Ok(acc * order?))
}

pub fn endo_structure(n: u64, p: u64) -> Result<EndoStructure> {
    let factors = endo_ring(n)?
        .into_iter()
        .map(|d| splitting_data(d, p))
        .collect::<Result<Vec<_>>>()?;
    let unit_group_order = factors
        .iter()
        .fold(BigUint::one(), |acc, s| acc * s.local_unit_order(p));
    let p_unramified = factors.iter().all(|s| s.e == 1);
    Ok(EndoStructure { n, genus: genus_for(n), factors, unit_group_order, p_unramified })
}

/// Tameness of `Q_p(J_n[p])/Q_p` for `y^2 = x^n - 1`: passes exactly when
/// `p ∤ n`, so `p` is unramified in every `Q(ζ_d)` and the unit group of
/// `O_F ⊗ F_p` has order prime to `p`. Ramified inputs still report the
/// (p-divisible) unit-group order.
pub fn tame_at_p_criterion(n: u64, p: u64) -> CertificateEntry {
    let structure = endo_structure(n, p).ok();
    let order = structure.as_ref().map(|s| s.unit_group_order.clone());
    let gcd_with_p = order.as_ref().map(|o| o.gcd(&BigUint::from(p)));
    let pass = structure.as_ref().is_some_and(|s| s.p_unramified)
        && gcd_with_p.as_ref().is_some_and(One::is_one);
    CertificateEntry {
        scope: Scope::Prime { ell: p },
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        justification: Justification::CmAtP,
        witness: Witness::UnitGroup {
            n,
            unit_group_order: order,
            gcd_with_p,
            kisin_depth: None,
            constraint_replayed: None,
        },
        kisin_conditional: true,
    }
}

/// Checks that `P_n` is the product of `Φ_m` over the distinct orders
/// `m = n / gcd(n, i + 1)` of the eigenvalues `ζ_n^(i+1)`, `0 <= i < g`.
pub fn verify_pn_via_eigenvalues(n: u64) -> Result<bool> {
    let pn = pn_poly(n)?;
    let table = cyclotomic_table(n)?;
    let mut orders: Vec<u64> = (1..=genus_for(n)).map(|k| n / n.gcd(&k)).collect();
    orders.sort_unstable();
    orders.dedup();
    let product = orders.iter().fold(IntPoly::one(), |acc, m| &acc * &table[m]);
    Ok(product == pn)
}
