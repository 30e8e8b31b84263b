//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p torsion-forge --test acceptance`. The binary exits
//! non-zero when any criterion fails.

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsion_forge::run_args;
use torsion_forge_core::arith::{
    is_prime, Field, PrimeField, Rational, RationalFunction, RationalFunctionField, Rationals,
};
use torsion_forge_core::forge::{
    construct, example2_modulus, family_example1, family_example2, norm_psi, seed_example3,
    verify_certificate, SuperellipticCurve,
};
use torsion_forge_core::hensel::{lift, verify_lift, LiftProblem};
use torsion_forge_core::jacobian::{monicize, verify_order, MonicModel};
use torsion_forge_core::poly::{parse_poly, Poly};
use torsion_forge_core::zeta::{
    check_torsion_divisibility, reduce_mod_p, zeta_report, DEFAULT_ENUMERATION_BOUND,
};

const HENSEL_LIMIT: Duration = Duration::from_secs(1);
const SCAN_LIMIT: Duration = Duration::from_secs(600);
const ORDER_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_CASES: u32 = 500;
const RANDOM_DIVISORS: usize = 20;
const DIVISOR_SEED: u64 = 0x7f4a_7c15;
const SCAN_RANGE: (u64, u64) = (51, 509);
const DETERMINISM_RANGE: (u64, u64) = (51, 211);
const STAMP: &str = "2026-01-01T00:00:00Z";

/// `9*R_3` as printed, highest degree first.
const PRINTED_9R3: [i64; 18] = [
    1, -2, 9, -18, 36, -73, 90, -172, 162, -255, 212, -248, 185, -161, 93, -53, 22, 1,
];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {:.2?}, limit {:.0?}", elapsed, limit),
    )
}

fn q(s: &str) -> Poly<Rationals> {
    parse_poly(&Rationals, s, "x").expect("fixture parses")
}

fn hensel_fixture() -> Verdict {
    let start = Instant::now();
    let problem = LiftProblem::new(3, example2_modulus(), q("x"), q("x^2+1"), 3).map_err(|e| e.to_string())?;
    let result = lift(&problem).map_err(|e| e.to_string())?;
    let scaled = result.root.scale(&Rationals.from_i64(9));
    let elapsed = start.elapsed();
    let printed = Poly::from_i64s(Rationals, &PRINTED_9R3.iter().rev().copied().collect::<Vec<_>>());
    ensure(scaled.degree() == Some(17), format!("deg 9*R_3 = {:?}", scaled.degree()))?;
    let mismatched: Vec<usize> = (0..18).filter(|&i| scaled.coeff(i) != printed.coeff(i)).collect();
    ensure(mismatched.is_empty(), format!("coefficients differ at degrees {mismatched:?}"))?;
    let b3 = example2_modulus().pow(3);
    ensure(
        result.root.mod_pow(3, &b3).map_err(|e| e.to_string())? == q("x"),
        "R_3^3 != x mod b^3",
    )?;
    within(elapsed, HENSEL_LIMIT)?;
    Ok(format!("9*R_3 equals the printed polynomial in all 18 coefficients ({elapsed:.2?})"))
}

fn scan_replication() -> Verdict {
    let start = Instant::now();
    let primes: Vec<u64> = (SCAN_RANGE.0..=SCAN_RANGE.1).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let cert = family_example2(p).map_err(|e| format!("p = {p}: {e}"))?;
        let report = verify_certificate(&cert);
        ensure(report.checks.separable, format!("p = {p}: F_p not separable"))?;
        ensure(cert.genus == Some(p - 19), format!("p = {p}: genus {:?}", cert.genus))?;
        ensure(report.valid(), format!("p = {p}: failed {:?}", report.checks.failed()))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, SCAN_LIMIT)?;
    Ok(format!(
        "{} primes in [{}, {}]: separable, genus p-19, valid ({elapsed:.2?})",
        primes.len(),
        SCAN_RANGE.0,
        SCAN_RANGE.1
    ))
}

fn order_thirteen() -> Verdict {
    let start = Instant::now();
    let k = RationalFunctionField;
    let curve = SuperellipticCurve::new(2, seed_example3().f).map_err(|e| e.to_string())?;
    let model = monicize(&curve).map_err(|e| e.to_string())?;
    let t = RationalFunction::t();
    let t2 = k.mul(&t, &t);
    let (x, y) = model.map_point(&k.zero(), &t2);
    let d = model.point(&x, &y).map_err(|e| e.to_string())?;
    let mut acc = model.identity();
    for m in 1..=12 {
        acc = model.add(&acc, &d);
        ensure(!acc.is_identity(), format!("{m}*D = O"))?;
    }
    acc = model.add(&acc, &d);
    ensure(acc.is_identity(), "13*D != O")?;
    ensure(model.multiply(13, &d).is_identity(), "double-and-add: 13*D != O")?;
    let elapsed = start.elapsed();
    within(elapsed, ORDER_LIMIT)?;
    Ok(format!("D = [(0, t^2) - P_inf] has order exactly 13 ({elapsed:.2?})"))
}

fn example1_instances() -> Verdict {
    let mut seen = Vec::new();
    for (k, a, p) in [(2u32, "x+1", 5u64), (2, "x+1", 7), (3, "x+2", 7)] {
        let tag = format!("(k={k}, a={a}, p={p})");
        let a = q(a);
        let cert = family_example1(k, &a, p).map_err(|e| format!("{tag}: {e}"))?;
        let xp = Poly::x(Rationals).pow(p);
        ensure(&a.pow(k as u64) - &cert.f == xp, format!("{tag}: a^k - F != x^p"))?;
        ensure(norm_psi(&cert.a, &cert.b, k, &cert.f) == xp, format!("{tag}: norm != x^p"))?;
        ensure(cert.f.is_separable(), format!("{tag}: F not separable"))?;
        let genus = (k as u64 - 1) * (p - 1) / 2;
        ensure(cert.genus == Some(genus), format!("{tag}: genus {:?}, want {genus}", cert.genus))?;
        if k == 2 {
            let order = verify_order(&cert).order_exact;
            ensure(order == Some(p), format!("{tag}: Cantor order {order:?}"))?;
            seen.push(format!("{tag} order {p}"));
        } else {
            seen.push(format!("{tag} genus {genus}"));
        }
    }
    Ok(seen.join("; "))
}

fn zeta_divisibility() -> Verdict {
    let mut orders = Vec::new();
    let ex1 = family_example1(2, &q("x+1"), 5).map_err(|e| e.to_string())?;
    let ex3 = seed_example3().construct().map_err(|e| e.to_string())?;
    let checks = [
        check_torsion_divisibility(&ex1, &[7, 11, 13], None, DEFAULT_ENUMERATION_BOUND),
        check_torsion_divisibility(&ex3, &[11, 11, 23], Some(&[2, 3, 5]), DEFAULT_ENUMERATION_BOUND),
    ];
    for (n, check) in [5u64, 13].into_iter().zip(checks) {
        let check = check.map_err(|e| e.to_string())?;
        ensure(check.skipped.is_empty(), format!("skipped {:?}", check.skipped))?;
        ensure(check.reports.len() == 3, format!("{} reports", check.reports.len()))?;
        for r in &check.reports {
            let at = r.t0.map(|t| format!(",t={t}")).unwrap_or_default();
            let order = u64::try_from(&r.jacobian_order).map_err(|e| e.to_string())?;
            ensure(
                r.divisible_by_n && order % n == 0,
                format!("{n} does not divide L(1) = {} at q={}{at}", r.jacobian_order, r.q),
            )?;
            ensure(r.within_weil_bounds, format!("Weil bound fails at q={}{at}", r.q))?;
            orders.push(format!("{}@{}{at}", r.jacobian_order, r.q));
        }
    }
    Ok(format!("L(1) = {}", orders.join(" ")))
}

fn genus2_model(p: u64) -> MonicModel<PrimeField> {
    let f = match p {
        7 => "x^5+x^2+5*x+1",
        _ => "x^5+3*x^3+x+7",
    };
    MonicModel::new(parse_poly(&PrimeField::new(p).expect("prime"), f, "x").expect("fixture"))
        .expect("genus-2 fixture")
}

fn cross_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DIVISOR_SEED);
    let mut parts = Vec::new();
    for p in [7u64, 11] {
        let model = genus2_model(p);
        let curve = SuperellipticCurve::new(2, model.polynomial().clone()).map_err(|e| e.to_string())?;
        let reduced = reduce_mod_p(&curve, None, p, None).map_err(|e| e.to_string())?;
        let order = zeta_report(&reduced, None, DEFAULT_ENUMERATION_BOUND)
            .map_err(|e| e.to_string())?
            .jacobian_order;
        let order: u64 = order.try_into().map_err(|_| "L(1) out of range".to_string())?;
        let mut divisors = Vec::new();
        while divisors.len() < RANDOM_DIVISORS {
            let points: Vec<(u64, bool)> = (0..rng.gen_range(1..=4))
                .map(|_| (rng.gen_range(0..p), rng.gen()))
                .collect();
            let d = model.sum_of_points(&points);
            if !d.is_identity() {
                divisors.push(d);
            }
        }
        for (i, d) in divisors.iter().enumerate() {
            ensure(model.is_reduced(d), format!("F_{p} divisor {i} not reduced"))?;
            ensure(
                model.multiply(order, d).is_identity(),
                format!("F_{p} divisor {i}: L(1)*D != O"),
            )?;
        }
        parts.push(format!("F_{p}: L(1) = {order} kills {RANDOM_DIVISORS} non-trivial divisors"));
    }
    Ok(parts.join("; "))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn small_prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 101, 1_000_000_007])
        .prop_map(|p| PrimeField::new(p).expect("prime"))
}

fn fp_poly(k: PrimeField, len: usize) -> impl Strategy<Value = Poly<PrimeField>> {
    prop::collection::vec(0..k.modulus(), 0..=len).prop_map(move |c| Poly::new(k, c))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn q_poly(len: usize) -> impl Strategy<Value = Poly<Rationals>> {
    prop::collection::vec(rational(), 0..=len).prop_map(|c| Poly::new(Rationals, c))
}

fn axioms<K: Field>(k: &K, a: &K::Elem, b: &K::Elem, c: &K::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(k.add(a, b), k.add(b, a));
    prop_assert_eq!(k.mul(a, b), k.mul(b, a));
    prop_assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
    prop_assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
    prop_assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
    prop_assert!(k.is_zero(&k.add(a, &k.neg(a))));
    if !k.is_zero(a) {
        prop_assert_eq!(k.mul(a, &k.inv(a).expect("non-zero")), k.one());
    }
    Ok(())
}

fn divmod_xgcd<K: Field>(f: Poly<K>, g: Poly<K>) -> Result<(), TestCaseError> {
    if g.is_zero() {
        return Ok(());
    }
    let (quo, rem) = f.divmod(&g).expect("non-zero divisor");
    prop_assert_eq!(&(&quo * &g) + &rem, f.clone());
    prop_assert!(rem.degree().is_none_or(|d| d < g.degree().expect("non-zero")));
    let (d, s, t) = f.xgcd(&g).expect("xgcd");
    prop_assert_eq!(&(&s * &f) + &(&t * &g), d.clone());
    prop_assert!(d.divides(&f).expect("d != 0") && d.divides(&g).expect("d != 0"));
    Ok(())
}

fn lift_instance() -> impl Strategy<Value = (u32, Poly<PrimeField>, Poly<PrimeField>)> {
    (prop::sample::select(vec![3u64, 5, 7, 11, 13, 101]), 2u32..=5)
        .prop_filter("p | k", |(p, k)| !(*k as u64).is_multiple_of(*p))
        .prop_flat_map(|(p, k)| {
            let field = PrimeField::new(p).expect("prime");
            (Just(k), fp_poly(field, 4), fp_poly(field, 3))
        })
        .prop_filter_map("degenerate", |(k, b, r1)| {
            let b = b.monic();
            (b.degree().unwrap_or(0) >= 1 && r1.gcd(&b).ok()?.is_one()).then_some((k, b, r1))
        })
}

fn property_suites() -> Verdict {
    run_property(
        "F_p field axioms",
        small_prime().prop_flat_map(|k| (Just(k), 0..k.modulus(), 0..k.modulus(), 0..k.modulus())),
        |(k, a, b, c)| axioms(&k, &a, &b, &c),
    )?;
    run_property("Q field axioms", (rational(), rational(), rational()), |(a, b, c)| {
        axioms(&Rationals, &a, &b, &c)
    })?;
    run_property(
        "F_p divmod/xgcd",
        small_prime().prop_flat_map(|k| (fp_poly(k, 8), fp_poly(k, 5))),
        |(f, g)| divmod_xgcd(f, g),
    )?;
    run_property("Q divmod/xgcd", (q_poly(7), q_poly(5)), |(f, g)| divmod_xgcd(f, g))?;
    run_property("lift to level 4", lift_instance(), |(k, b, r1)| {
        let u = r1.mod_pow(k as u64, &b).expect("b != 0");
        let problem = LiftProblem::new(k, b.clone(), u.clone(), r1.clone(), 4).expect("valid lift");
        let result = lift(&problem).expect("lift");
        let b4 = b.pow(4);
        prop_assert_eq!(result.root.mod_pow(k as u64, &b4).expect("b != 0"), u.rem(&b4).expect("b != 0"));
        prop_assert_eq!(result.root.rem(&b).expect("b != 0"), r1.rem(&b).expect("b != 0"));
        prop_assert!(verify_lift(&result, &problem));
        Ok(())
    })?;
    run_property(
        "certificate identity",
        (lift_instance(), 2u64..=9, 1u64..1000),
        |((k, b, r1), n, eps)| {
            let field = *b.field();
            let eps = eps % field.modulus();
            if eps == 0 {
                return Ok(());
            }
            let u = r1.mod_pow(k as u64, &b).expect("b != 0");
            let cert = construct(k, n, &b, &u, &r1, &eps).expect("construct");
            let rhs = u.pow(n).scale(&field.pow(&eps, k as u64));
            prop_assert_eq!(norm_psi(&cert.a, &cert.b, k, &cert.f), rhs);
            let report = verify_certificate(&cert);
            prop_assert!(report.checks.identity);
            prop_assert!(report.stored_checks_match && report.stored_genus_matches);
            Ok(())
        },
    )?;
    Ok(format!(
        "6 suites x {PROPERTY_CASES} cases: field axioms, divmod/xgcd, lift, certificate identity"
    ))
}

fn scan_once(jobs: usize, dir: &tempfile::TempDir, name: &str) -> Result<(String, Vec<u8>), String> {
    let store = dir.path().join(name);
    let out = run_args([
        "torsion-forge".to_string(),
        "scan".into(),
        "--pmin".into(),
        DETERMINISM_RANGE.0.to_string(),
        "--pmax".into(),
        DETERMINISM_RANGE.1.to_string(),
        "--jobs".into(),
        jobs.to_string(),
        "--created-at".into(),
        STAMP.into(),
        "--store".into(),
        store.display().to_string(),
    ]);
    ensure(out.code == 0, format!("scan --jobs {jobs} exited {}: {}", out.code, out.stderr))?;
    let bytes = fs::read(&store).map_err(|e| e.to_string())?;
    Ok((out.stdout, bytes))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = scan_once(1, &dir, "a.jsonl")?;
    let again = scan_once(1, &dir, "b.jsonl")?;
    let wide = scan_once(4, &dir, "c.jsonl")?;
    ensure(first == again, "repeated --jobs 1 runs differ")?;
    ensure(first == wide, "--jobs 1 and --jobs 4 differ")?;
    let lines = first.1.iter().filter(|&&b| b == b'\n').count();
    Ok(format!(
        "scan [{}, {}]: stdout and {lines}-line store byte-identical across runs and --jobs 1/4",
        DETERMINISM_RANGE.0, DETERMINISM_RANGE.1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Hensel fixture", hensel_fixture),
        ("scan replication", scan_replication),
        ("exact order 13 over Q(t)", order_thirteen),
        ("Example 1 instances", example1_instances),
        ("zeta divisibility", zeta_divisibility),
        ("cross-oracle annihilation", cross_oracle),
        ("property suites", property_suites),
        ("scan determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
