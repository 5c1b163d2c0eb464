//! Construction of `y^2 = f(x)`, `deg f = 2g + 2`, with prescribed local
//! behaviour: separable reduction at every odd `ℓ <= 2g + 1`, a smooth model
//! at 2, and `f ≡ x^n - 1` (in even-degree form) modulo `p^N`. The local
//! classes are glued coefficientwise by CRT.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{crt_combine, decimal, is_prime, primes_up_to, ResidueClass};
use crate::error::{Error, Result};
use crate::poly::{discriminant, find_irreducible, FpPoly, IntPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintPurpose {
    SeparabilityAtOddEll,
    GoodReductionAtTwo,
    CMShapeAtP,
}

/// `f = h^2 + 4k` with `y^2 + h y = k` smooth over `F_2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoAdicWitness {
    pub h: IntPoly,
    pub k: IntPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceConstraint {
    pub prime: u64,
    #[serde(with = "decimal::bigint")]
    pub modulus: BigInt,
    /// coefficients in `[0, modulus)`
    pub residue_poly: IntPoly,
    pub purpose: ConstraintPurpose,
    pub witness: Option<TwoAdicWitness>,
}

impl CongruenceConstraint {
    fn new(prime: u64, modulus: BigInt, poly: &IntPoly, purpose: ConstraintPurpose) -> Self {
        let residue_poly = poly.mod_coeffs(&modulus);
        CongruenceConstraint { prime, modulus, residue_poly, purpose, witness: None }
    }

    /// `f ≡ residue_poly (mod modulus)` coefficientwise.
    pub fn replays(&self, f: &IntPoly) -> bool {
        f.congruent(&self.residue_poly, &self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub genus: u64,
    pub p: u64,
    pub n: u64,
    pub kisin_depth: u32,
    pub f: IntPoly,
    pub constraints: Vec<CongruenceConstraint>,
    #[serde(with = "decimal::bigint")]
    pub assembled_modulus: BigInt,
}

impl CurveSpec {
    pub fn constraint_for(&self, prime: u64) -> Option<&CongruenceConstraint> {
        self.constraints.iter().find(|c| c.prime == prime)
    }

    /// Primes whose constraint `f` no longer satisfies.
    pub fn failed_replays(&self) -> Vec<u64> {
        self.constraints.iter().filter(|c| !c.replays(&self.f)).map(|c| c.prime).collect()
    }

    pub fn check(&self) -> Result<()> {
        let expected = 2 * self.genus as usize + 2;
        if self.f.degree() != Some(expected) {
            return Err(Error::IncompleteSpec(format!("deg f must be {expected}")));
        }
        if discriminant(&self.f)?.is_zero() {
            return Err(Error::IncompleteSpec("f is not squarefree".into()));
        }
        let failed = self.failed_replays();
        if !failed.is_empty() {
            return Err(Error::IncompleteSpec(format!("constraints at {failed:?} do not replay")));
        }
        Ok(())
    }
}

pub fn default_kisin_depth(g: u64) -> u32 {
    (2 * g + 2) as u32
}

/// `n ∈ {2g+1, 2g+2}` with `p ∤ n`, preferring `2g+1`.
pub fn choose_n(g: u64, p: u64) -> u64 {
    let odd = 2 * g + 1;
    if !odd.is_multiple_of(p) {
        odd
    } else {
        odd + 1
    }
}

/// Even-degree model of `y^2 = x^n - 1`. For odd `n`, `x = 1/u`,
/// `y = v/u^((n+1)/2)` gives `v^2 = u - u^(n+1)`.
pub fn even_degree_model(n: u64) -> Result<IntPoly> {
    if n < 3 {
        return Err(Error::GenusZero(n));
    }
    let n = n as usize;
    Ok(if n.is_multiple_of(2) {
        IntPoly::x_pow_minus_one(n)
    } else {
        &IntPoly::x() - &IntPoly::monomial(1, n + 1)
    })
}

/// Residue class mod `ℓ` giving good reduction at an odd `ℓ`: the first
/// monic irreducible of degree `2g + 2` over `F_ℓ`, which is in particular
/// separable of full degree.
pub fn local_condition_odd_ell(g: u64, ell: u64) -> Result<CongruenceConstraint> {
    if ell == 2 {
        return Err(Error::WrongPrime(2));
    }
    let residue = find_irreducible(ell, 2 * g as usize + 2)?;
    Ok(CongruenceConstraint::new(
        ell,
        BigInt::from(ell),
        &IntPoly::lift(&residue),
        ConstraintPurpose::SeparabilityAtOddEll,
    ))
}

/// Smoothness over `F_2` of the genus-`g` model `y^2 + h y = k`
/// (`deg h <= g + 1`, `deg k <= 2g + 2`), both affine and at infinity.
pub fn is_smooth_over_f2(h: &IntPoly, k: &IntPoly, g: u64) -> bool {
    let g = g as usize;
    if h.degree().is_some_and(|d| d > g + 1) || k.degree().is_some_and(|d| d > 2 * g + 2) {
        return false;
    }
    let hb = h.reduce_mod(2);
    let kb = k.reduce_mod(2);
    // affine singular points: common roots of h and h'^2 k - k'^2
    let dh = hb.derivative();
    let dk = kb.derivative();
    let jac = dh.mul(&dh).mul(&kb).sub(&dk.mul(&dk));
    if !hb.gcd(&jac).is_one() {
        return false;
    }
    // at infinity, with u = 1/x: H(u) = u^(g+1) h(1/u), K(u) = u^(2g+2) k(1/u)
    if hb.coeff(g + 1) == 1 {
        return true;
    }
    let dh0 = hb.coeff(g);
    let k0 = kb.coeff(2 * g + 2);
    let dk0 = kb.coeff(2 * g + 1);
    (dh0 * k0) % 2 != dk0
}

/// Looks for `h` with 0/1 coefficients, `f ≡ h^2 (mod 4)`, such that
/// `y^2 + h y = (f - h^2)/4` is smooth over `F_2`. Since
/// `(2y + h)^2 = h^2 + 4k = f`, such a model is the same curve and has good
/// reduction at 2.
pub fn good_reduction_two_check(f: &IntPoly, g: u64) -> Option<TwoAdicWitness> {
    if f.degree().is_none_or(|d| d > 2 * g as usize + 2) {
        return None;
    }
    // h^2 ≡ h(x^2) (mod 2) forces h_i ≡ f_{2i}
    let h = IntPoly::lift(&FpPoly::new(
        2,
        (0..=g as usize + 1).map(|i| crate::arith::reduce(&f.coeff(2 * i), 2)).collect(),
    ));
    let k = (f - &(&h * &h)).div_scalar_exact(&BigInt::from(4))?;
    is_smooth_over_f2(&h, &k, g).then_some(TwoAdicWitness { h, k })
}

fn binary_poly(bits: u64, len: usize) -> IntPoly {
    IntPoly::from_i64(&(0..len).map(|i| ((bits >> i) & 1) as i64).collect::<Vec<_>>())
}

/// First class `f_2 = h^2 + 4k (mod 2^(2g+2))`, scanning `h` of exact degree
/// `g + 1` then `k` of exact degree `2g + 2` (both 0/1 coefficients, lower
/// coefficients read as binary digits), whose model is smooth over `F_2`.
pub fn mod2_class_for_genus(g: u64) -> Result<CongruenceConstraint> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be >= 1".into()));
    }
    let g_us = g as usize;
    let modulus = BigInt::one() << (2 * g_us + 2);
    for h_bits in 0..(1u64 << (g_us + 1)) {
        let h = binary_poly(h_bits | 1 << (g_us + 1), g_us + 2);
        for k_bits in 0..(1u64 << (2 * g_us + 2)) {
            let k = binary_poly(k_bits | 1 << (2 * g_us + 2), 2 * g_us + 3);
            if !is_smooth_over_f2(&h, &k, g) {
                continue;
            }
            let f2 = &(&h * &h) + &k.scale(&BigInt::from(4));
            if f2.degree() != Some(2 * g_us + 2) || good_reduction_two_check(&f2, g).is_none() {
                continue;
            }
            let mut constraint =
                CongruenceConstraint::new(2, modulus.clone(), &f2, ConstraintPurpose::GoodReductionAtTwo);
            constraint.witness = Some(TwoAdicWitness { h, k });
            return Ok(constraint);
        }
    }
    Err(Error::ConstructionFailed(format!("no smooth model over F_2 found for genus {g}")))
}

const MAX_REPAIR_STEPS: usize = 10_000;

pub fn assemble(g: u64, p: u64, kisin_depth: u32) -> Result<CurveSpec> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be >= 1".into()));
    }
    if kisin_depth == 0 {
        return Err(Error::InvalidParameter("Kisin depth must be >= 1".into()));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let degree = 2 * g as usize + 2;
    let n = choose_n(g, p);
    let target = even_degree_model(n)?;

    let odd_primes: Vec<u64> =
        primes_up_to(2 * g + 1).into_iter().filter(|&l| l != 2 && l != p).collect();
    let mut constraints = odd_primes
        .par_iter()
        .map(|&ell| local_condition_odd_ell(g, ell))
        .collect::<Result<Vec<_>>>()?;
    constraints.push(mod2_class_for_genus(g)?);
    constraints.push(CongruenceConstraint::new(
        p,
        num_traits::pow(BigInt::from(p), kisin_depth as usize),
        &target,
        ConstraintPurpose::CMShapeAtP,
    ));
    constraints.sort_by_key(|c| c.prime);

    let mut modulus = BigInt::one();
    let mut coeffs = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let classes = constraints
            .iter()
            .map(|c| ResidueClass::new(c.residue_poly.coeff(i), c.modulus.clone()))
            .collect::<Result<Vec<_>>>()?;
        let combined = crt_combine(&classes)?;
        modulus = combined.modulus().clone();
        coeffs.push(combined.balanced());
    }

    for step in 0..MAX_REPAIR_STEPS {
        let f = IntPoly::new(coeffs.clone());
        if f.degree() == Some(degree) && !discriminant(&f)?.is_zero() {
            let spec = CurveSpec {
                genus: g,
                p,
                n,
                kisin_depth,
                f,
                constraints,
                assembled_modulus: modulus,
            };
            debug_assert!(spec.check().is_ok());
            return Ok(spec);
        }
        coeffs[step % (degree + 1)] += &modulus;
    }
    Err(Error::ConstructionFailed("no squarefree representative found".into()))
}

/// `∏_{j=0}^{2g} (x - j)`: all 2-torsion of the Jacobian is rational. No
/// tameness certificate applies (the pipeline needs odd `p`).
pub fn two_torsion_rational_curve(g: u64) -> IntPoly {
    (0..=2 * g as i64).fold(IntPoly::one(), |acc, j| &acc * &IntPoly::from_i64(&[-j, 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::is_separable_mod;

    #[test]
    fn choose_n_examples() {
        assert_eq!(choose_n(1, 3), 4);
        assert_eq!(choose_n(2, 5), 6);
        assert_eq!(choose_n(1, 5), 3);
        for g in 1..50 {
            for p in primes_up_to(60) {
                let n = choose_n(g, p);
                assert!(n == 2 * g + 1 || n == 2 * g + 2);
                assert_ne!(n % p, 0);
            }
        }
    }

    #[test]
    fn even_degree_model_examples() {
        assert_eq!(even_degree_model(4).unwrap(), IntPoly::from_i64(&[-1, 0, 0, 0, 1]));
        assert_eq!(even_degree_model(3).unwrap(), IntPoly::from_i64(&[0, 1, 0, 0, -1]));
        assert_eq!(even_degree_model(5).unwrap(), IntPoly::from_i64(&[0, 1, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn even_degree_model_is_separable_away_from_2n() {
        for n in 3..=102u64 {
            let model = even_degree_model(n).unwrap();
            let disc = discriminant(&model).unwrap();
            for p in primes_up_to(50).into_iter().filter(|&p| (2 * n) % p != 0) {
                assert!(is_separable_mod(&model, p), "n={n} p={p}");
                assert_ne!(crate::arith::reduce(&disc, p), 0);
            }
        }
    }

    #[test]
    fn odd_ell_conditions() {
        let c = local_condition_odd_ell(1, 3).unwrap();
        assert_eq!(c.residue_poly, IntPoly::from_i64(&[2, 1, 0, 0, 1]));
        assert!(is_separable_mod(&c.residue_poly, 3));
        let c = local_condition_odd_ell(2, 3).unwrap();
        assert_eq!(c.residue_poly.degree(), Some(6));
        assert!(is_separable_mod(&c.residue_poly, 3));
        let c = local_condition_odd_ell(1, 5).unwrap();
        assert!(is_separable_mod(&c.residue_poly, 5));
        assert_eq!(local_condition_odd_ell(1, 2), Err(Error::WrongPrime(2)));
    }

    #[test]
    fn two_adic_examples() {
        let w = good_reduction_two_check(&IntPoly::from_i64(&[0, 4, 0, 0, 5]), 1).unwrap();
        assert_eq!(w.h, IntPoly::from_i64(&[0, 0, 1]));
        assert_eq!(w.k, IntPoly::from_i64(&[0, 1, 0, 0, 1]));
        assert!(good_reduction_two_check(&IntPoly::from_i64(&[-1, 0, 0, 0, 1]), 1).is_none());
        let w = good_reduction_two_check(&IntPoly::from_i64(&[1, -4, 0, 4]), 1).unwrap();
        assert_eq!(w.h, IntPoly::one());
        assert_eq!(w.k, IntPoly::from_i64(&[0, -1, 0, 1]));
    }

    #[test]
    fn mod2_classes() {
        let c = mod2_class_for_genus(1).unwrap();
        assert_eq!(c.modulus, BigInt::from(16));
        assert_eq!(c.residue_poly, IntPoly::from_i64(&[0, 4, 0, 0, 5]));
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w.h, IntPoly::from_i64(&[0, 0, 1]));
        assert_eq!(w.k, IntPoly::from_i64(&[0, 1, 0, 0, 1]));

        for g in 1..=5 {
            let c = mod2_class_for_genus(g).unwrap();
            let w = c.witness.as_ref().unwrap();
            assert_eq!(w.h.degree(), Some(g as usize + 1));
            assert_eq!(&(&w.h * &w.h) + &w.k.scale(&BigInt::from(4)), c.residue_poly);
            assert_eq!(good_reduction_two_check(&c.residue_poly, g).as_ref(), Some(w));
        }
    }

    #[test]
    fn assemble_genus_one_prime_five() {
        let spec = assemble(1, 5, 2).unwrap();
        assert_eq!(spec.n, 3);
        assert_eq!(spec.assembled_modulus, BigInt::from(1200));
        assert_eq!(spec.f.leading_coeff(), BigInt::from(-251));
        assert_eq!(spec.constraints.iter().map(|c| c.prime).collect::<Vec<_>>(), vec![2, 3, 5]);
        spec.check().unwrap();
    }

    #[test]
    fn assemble_prime_inside_small_range() {
        let spec = assemble(1, 3, 1).unwrap();
        assert_eq!(spec.n, 4);
        assert_eq!(spec.constraints.len(), 2);
        let at_p = spec.constraint_for(3).unwrap();
        assert_eq!(at_p.modulus, BigInt::from(3));
        assert_eq!(at_p.residue_poly, IntPoly::from_i64(&[2, 0, 0, 0, 1]));
        assert_eq!(spec.constraint_for(2).unwrap().modulus, BigInt::from(16));
        spec.check().unwrap();
    }

    #[test]
    fn assemble_rejects_bad_parameters() {
        assert_eq!(assemble(1, 2, 1), Err(Error::UnsupportedPrime(2)));
        assert_eq!(assemble(1, 9, 1), Err(Error::NotPrime(9)));
        assert!(assemble(0, 5, 1).is_err());
        assert!(assemble(1, 5, 0).is_err());
    }

    #[test]
    fn two_torsion_curve() {
        let f = two_torsion_rational_curve(1);
        assert_eq!(f, IntPoly::from_i64(&[0, 2, -3, 1]));
        assert!(!discriminant(&f).unwrap().is_zero());
    }

    fn odd_prime() -> impl proptest::strategy::Strategy<Value = u64> {
        proptest::sample::select(primes_up_to(47).into_iter().filter(|&p| p != 2).collect::<Vec<_>>())
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn assembled_curves_satisfy_every_constraint(g in 1u64..=4, p in odd_prime(), depth in 1u32..=4) {
            let spec = assemble(g, p, depth).unwrap();
            proptest::prop_assert_eq!(spec.f.degree(), Some(2 * g as usize + 2));
            proptest::prop_assert!(!discriminant(&spec.f).unwrap().is_zero());
            proptest::prop_assert!(spec.failed_replays().is_empty());
            for ell in primes_up_to(2 * g + 1).into_iter().filter(|&l| l != 2 && l != p) {
                proptest::prop_assert!(is_separable_mod(&spec.f, ell));
            }
            let model = even_degree_model(spec.n).unwrap();
            let modulus = BigInt::from(p).pow(depth);
            proptest::prop_assert!(spec.f.congruent(&model, &modulus));
            let again = assemble(g, p, depth).unwrap();
            proptest::prop_assert_eq!(serde_json::to_string(&spec).unwrap(), serde_json::to_string(&again).unwrap());
        }
    }
}
