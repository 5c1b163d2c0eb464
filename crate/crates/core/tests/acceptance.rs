//! Acceptance suite. Every criterion runs, prints one PASS/FAIL line, and the
//! process exits non-zero if any criterion failed. Time bounds are pinned here.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use tame_torsion::arith::{divisors, primes_up_to};
use tame_torsion::certify::{certify, Verdict};
use tame_torsion::construct::{assemble, good_reduction_two_check, mod2_class_for_genus, TwoAdicWitness};
use tame_torsion::cyclo::{endo_ring, splitting_data, unit_group_order};
use tame_torsion::frobenius::{
    count_points, frobenius_charpoly, image_evidence_for, CensusConfig, ImageVerdict,
};
use tame_torsion::poly::{cyclotomic_table, discriminant, factor_mod, is_separable_mod, pn_poly, IntPoly};

const CYCLOTOMIC_N_MAX: u64 = 200;
const CYCLOTOMIC_BOUND: Duration = Duration::from_secs(5);
const SPLITTING_N_MAX: u64 = 60;
const SPLITTING_P_MAX: u64 = 30;
const SPLITTING_BOUND: Duration = Duration::from_secs(30);
const TAME_N_MAX: u64 = 100;
const TAME_P_MAX: u64 = 50;
const TAME_BOUND: Duration = Duration::from_secs(10);
const CONSTRUCT_G_MAX: u64 = 5;
const CONSTRUCT_P_MAX: u64 = 13;
const CONSTRUCT_N_MAX: u32 = 3;
const CONSTRUCT_BOUND: Duration = Duration::from_secs(120);
const ORACLE_ELLS: [u64; 4] = [3, 7, 11, 13];
const ORACLE_BOUND: Duration = Duration::from_secs(60);
const CM_ELL_MAX: u64 = 200;
const CENSUS_ELL_MAX: u64 = 500;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, bound: Duration) -> Outcome {
    ensure(elapsed <= bound, || format!("took {elapsed:?}, bound {bound:?}"))
}

fn criterion_cyclotomic() -> Outcome {
    let start = Instant::now();
    for n in 3..=CYCLOTOMIC_N_MAX {
        let table = cyclotomic_table(n).map_err(|e| e.to_string())?;
        let all = divisors(n).iter().fold(IntPoly::one(), |acc, d| &acc * &table[d]);
        ensure(all == IntPoly::x_pow_minus_one(n as usize), || format!("prod Φ_d != x^{n} - 1"))?;
        let big = divisors(n).iter().filter(|&&d| d > 2).fold(IntPoly::one(), |acc, d| &acc * &table[d]);
        ensure(pn_poly(n).map_err(|e| e.to_string())? == big, || format!("P_{n} mismatch"))?;
    }
    within(start.elapsed(), CYCLOTOMIC_BOUND)
}

fn criterion_splitting() -> Outcome {
    let start = Instant::now();
    for n in 3..=SPLITTING_N_MAX {
        let table = cyclotomic_table(n).map_err(|e| e.to_string())?;
        for d in endo_ring(n).map_err(|e| e.to_string())? {
            for p in primes_up_to(SPLITTING_P_MAX) {
                let s = splitting_data(d, p).map_err(|e| e.to_string())?;
                let mut shape: BTreeMap<(usize, u32), u64> = BTreeMap::new();
                for (g, m) in factor_mod(&table[&d], p).map_err(|e| e.to_string())? {
                    *shape.entry((g.degree().unwrap(), m)).or_default() += 1;
                }
                let expected = BTreeMap::from([((s.f as usize, s.e as u32), s.g_count)]);
                ensure(shape == expected, || format!("d={d} p={p}: {shape:?} vs {s:?}"))?;
            }
        }
    }
    within(start.elapsed(), SPLITTING_BOUND)
}

fn criterion_tameness() -> Outcome {
    let start = Instant::now();
    for n in 3..=TAME_N_MAX {
        for p in primes_up_to(TAME_P_MAX).into_iter().filter(|p| n % p != 0) {
            let order = unit_group_order(n, p).map_err(|e| e.to_string())?;
            ensure(order.gcd(&p.into()).is_one(), || format!("p={p} divides unit group order for n={n}"))?;
        }
    }
    within(start.elapsed(), TAME_BOUND)
}

fn criterion_construction() -> Outcome {
    let start = Instant::now();
    for g in 1..=CONSTRUCT_G_MAX {
        for p in primes_up_to(CONSTRUCT_P_MAX).into_iter().filter(|&p| p != 2) {
            for depth in 1..=CONSTRUCT_N_MAX {
                let curve = assemble(g, p, depth).map_err(|e| format!("g={g} p={p} N={depth}: {e}"))?;
                let cert = certify(&curve).map_err(|e| e.to_string())?;
                ensure(cert.overall == Verdict::Pass, || format!("g={g} p={p} N={depth} not PASS"))?;
                ensure(curve.failed_replays().is_empty(), || format!("g={g} p={p} N={depth} replay"))?;
                ensure(!discriminant(&curve.f).map_err(|e| e.to_string())?.is_zero(), || "disc f = 0".into())?;
            }
        }
    }
    within(start.elapsed(), CONSTRUCT_BOUND)
}

/// `gcd(h, h'^2 k - k'^2) = 1` over `F_2`, computed independently here.
fn affine_gcd_test(w: &TwoAdicWitness) -> bool {
    let h = w.h.reduce_mod(2);
    let k = w.k.reduce_mod(2);
    let dh = h.derivative();
    let dk = k.derivative();
    let rhs = dh.mul(&dh).mul(&k).sub(&dk.mul(&dk));
    h.gcd(&rhs).is_one()
}

fn exact_witness(f: &IntPoly, w: &TwoAdicWitness) -> bool {
    &(&w.h * &w.h) + &w.k.scale(&BigInt::from(4)) == *f && affine_gcd_test(w)
}

fn criterion_two_adic() -> Outcome {
    for g in 1..=CONSTRUCT_G_MAX {
        let class = mod2_class_for_genus(g).map_err(|e| e.to_string())?;
        let w = class.witness.as_ref().ok_or("missing class witness")?;
        ensure(exact_witness(&class.residue_poly, w), || format!("class witness g={g}"))?;
        for p in primes_up_to(CONSTRUCT_P_MAX).into_iter().filter(|&p| p != 2) {
            let curve = assemble(g, p, 2).map_err(|e| e.to_string())?;
            let w = good_reduction_two_check(&curve.f, g).ok_or_else(|| format!("no witness g={g} p={p}"))?;
            ensure(exact_witness(&curve.f, &w), || format!("curve witness g={g} p={p}"))?;
        }
    }
    let control = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
    ensure(good_reduction_two_check(&control, 1).is_none(), || "x^4 - 1 accepted".into())
}

fn criterion_frobenius_oracle() -> Outcome {
    let start = Instant::now();
    let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 1]);
    for ell in ORACLE_ELLS {
        let rec = frobenius_charpoly(&f, ell, 2, 5).map_err(|e| e.to_string())?;
        ensure(rec.functional_equation_holds(), || format!("functional equation ℓ={ell}"))?;
        ensure(rec.weil_bounds_hold(), || format!("Weil bounds ℓ={ell}"))?;
        let predicted = rec.predicted_counts(4);
        for r in 3..=4u32 {
            let counted = count_points(&f, ell, r).map_err(|e| e.to_string())?;
            ensure(predicted[r as usize - 1] == BigInt::from(counted), || {
                format!("ℓ={ell} r={r}: predicted {} counted {counted}", predicted[r as usize - 1])
            })?;
        }
    }
    within(start.elapsed(), ORACLE_BOUND)
}

fn criterion_cm_signatures() -> Outcome {
    let cases = [(IntPoly::from_i64(&[-1, 0, 0, 1]), 3u64, 2u64), (IntPoly::from_i64(&[-1, 0, 0, 0, 1]), 4, 3)];
    for (f, modulus, class) in cases {
        for ell in primes_up_to(CM_ELL_MAX) {
            if ell % modulus != class || ell == 2 || !is_separable_mod(&f, ell) {
                continue;
            }
            let rec = frobenius_charpoly(&f, ell, 1, 5).map_err(|e| e.to_string())?;
            ensure(rec.trace().is_zero(), || format!("a_{ell} = {} on {f}", rec.trace()))?;
        }
    }
    Ok(())
}

fn criterion_image_evidence() -> Outcome {
    let curve = assemble(1, 5, 2).map_err(|e| e.to_string())?;
    let (records, ev) =
        image_evidence_for(&curve.f, 5, CENSUS_ELL_MAX, &CensusConfig::default()).map_err(|e| e.to_string())?;
    ensure(ev.multiplier_classes_hit == vec![1, 2, 3, 4], || format!("classes {:?}", ev.multiplier_classes_hit))?;
    for rec in &records {
        ensure(rec.charpoly_mod_p.coeff(0) == rec.ell % 5, || format!("det mismatch at ℓ={}", rec.ell))?;
    }
    ensure(ev.verdict == ImageVerdict::ConsistentWithFullImage, || format!("verdict {:?}", ev.verdict))?;
    let json = serde_json::to_string(&ev).map_err(|e| e.to_string())?;
    ensure(!json.to_lowercase().contains("proved"), || "verdict claims a proof".into())
}

fn binary(args: &[&str], workers: &str) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tame-torsion"))
        .args(args)
        .env("TAME_TORSION_WORKERS", workers)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_determinism() -> Outcome {
    let spec_path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), "acceptance-curve.json"].iter().collect();
    let (_, cert) = binary(&["construct", "--genus", "1", "--prime", "5", "--kisin-depth", "2"], "2")?;
    fs::write(&spec_path, &cert).map_err(|e| e.to_string())?;
    let spec = spec_path.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["construct", "--genus", "2", "--prime", "7"],
        vec!["construct", "--genus", "1", "--prime", "5", "--kisin-depth", "2", "--format", "pretty"],
        vec!["endo", "--n", "12", "--prime", "7"],
        vec!["certify", "--input", spec],
        vec!["frobenius", "--input", spec, "--ell-bound", "300", "--seed", "17"],
        vec!["frobenius", "--coeffs", "-1,0,0,0,0,1", "--prime", "7", "--ell-bound", "60"],
        vec!["pn-check", "--from", "3", "--to", "60"],
    ];
    for args in &commands {
        let first = binary(args, "1")?;
        let second = binary(args, "1")?;
        let parallel = binary(args, "4")?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
        ensure(first == parallel, || format!("{args:?} depends on worker count"))?;
        ensure(!first.1.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("cyclotomic identities", criterion_cyclotomic),
        ("splitting law against factorization", criterion_splitting),
        ("unit group order prime to p", criterion_tameness),
        ("end-to-end construction certifies", criterion_construction),
        ("prime-2 witness soundness", criterion_two_adic),
        ("Frobenius charpoly predicts N_3, N_4", criterion_frobenius_oracle),
        ("CM trace vanishing", criterion_cm_signatures),
        ("image evidence for g=1, p=5", criterion_image_evidence),
        ("CLI determinism", criterion_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match &outcome {
            Ok(()) => println!("criterion {} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                println!("criterion {} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
