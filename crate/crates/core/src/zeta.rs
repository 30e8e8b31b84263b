//! Point counts over `F_{q^i}` by enumeration, the L-polynomial they
//! determine, and the check `N | #Jac(F_q)` for a certificate's curve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    reduce_rational, specialize, ExtensionField, Field, PrimeField, RationalFunctionField,
    Rationals,
};
use crate::forge::{SuperellipticCurve, TorsionCertificate};
use crate::poly::Poly;

/// Default cap on `q^i`, the number of field elements enumerated.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 2_000_000;

/// Below this many elements the `k`-th power counts come from a table.
pub const TABLE_THRESHOLD: u64 = 10_000;

/// Relative slack on the floating-point Weil interval.
pub const WEIL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("bad reduction at p = {p}{}: {reason}", t0.map(|t| format!(", t0 = {t}")).unwrap_or_default())]
    BadReduction {
        p: u64,
        t0: Option<u64>,
        reason: String,
    },
    #[error("extension too large: {q}^{i} exceeds the enumeration bound {bound}")]
    ExtensionTooLarge { q: u64, i: u32, bound: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("no usable primes")]
    NoUsablePrimes,
}

/// Coefficient fields whose elements can be sent to `F_p`.
pub trait ReduceModP: Field {
    /// Whether a value for `t` is needed.
    fn needs_specialization(&self) -> bool {
        false
    }

    fn reduce_elem(
        &self,
        a: &Self::Elem,
        target: &PrimeField,
        t0: Option<u64>,
    ) -> Result<u64, String>;
}

impl ReduceModP for Rationals {
    fn reduce_elem(&self, a: &Self::Elem, target: &PrimeField, _: Option<u64>) -> Result<u64, String> {
        reduce_rational(a, target)
            .ok_or_else(|| format!("p divides the denominator of {}", self.format_elem(a)))
    }
}

impl ReduceModP for RationalFunctionField {
    fn needs_specialization(&self) -> bool {
        true
    }

    fn reduce_elem(
        &self,
        a: &Self::Elem,
        target: &PrimeField,
        t0: Option<u64>,
    ) -> Result<u64, String> {
        let t0 = t0.ok_or("a value t0 is required for coefficients in Q(t)")?;
        specialize(a, target, t0).map_err(|e| e.to_string())
    }
}

impl ReduceModP for PrimeField {
    fn reduce_elem(&self, a: &u64, target: &PrimeField, _: Option<u64>) -> Result<u64, String> {
        if self != target {
            return Err(format!("coefficients live in {}, not {}", self.tag(), target.tag()));
        }
        Ok(*a)
    }
}

/// Good-reduction checklist. Every entry must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionChecks {
    pub p_not_dividing_k: bool,
    pub p_not_dividing_n: bool,
    pub coefficients_reduce: bool,
    pub degree_preserved: bool,
    pub separable: bool,
}

impl ReductionChecks {
    pub fn all(&self) -> bool {
        self.p_not_dividing_k
            && self.p_not_dividing_n
            && self.coefficients_reduce
            && self.degree_preserved
            && self.separable
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCurve {
    pub curve: SuperellipticCurve<PrimeField>,
    pub p: u64,
    pub t0: Option<u64>,
    pub checks: ReductionChecks,
}

/// Reduces `y^k = F` modulo `p`, specializing `t = t0` for `Q(t)` input.
/// `n`, when given, must be prime to `p`.
pub fn reduce_mod_p<K: ReduceModP>(
    curve: &SuperellipticCurve<K>,
    n: Option<u64>,
    p: u64,
    t0: Option<u64>,
) -> Result<ReducedCurve, ZetaError> {
    let bad = |reason: String| ZetaError::BadReduction { p, t0, reason };
    let field = PrimeField::new(p).map_err(|e| bad(e.to_string()))?;
    let k = curve.k() as u64;
    if k.is_multiple_of(p) {
        return Err(bad(format!("p divides k = {k}")));
    }
    if let Some(n) = n {
        if n % p == 0 {
            return Err(bad(format!("p divides N = {n}")));
        }
    }
    let source = curve.field();
    if source.needs_specialization() && t0.is_none() {
        return Err(bad("a value t0 is required for coefficients in Q(t)".into()));
    }
    let f = curve
        .polynomial()
        .try_map(field, |c| source.reduce_elem(c, &field, t0))
        .map_err(bad)?;
    if f.degree() != Some(curve.degree()) {
        return Err(bad(format!(
            "degree drops from {} to {:?}",
            curve.degree(),
            f.degree()
        )));
    }
    if !f.is_separable() {
        return Err(bad(format!("F mod p = {f} is not separable")));
    }
    let reduced = SuperellipticCurve::new(curve.k(), f).map_err(|e| bad(e.to_string()))?;
    Ok(ReducedCurve {
        curve: reduced,
        p,
        t0,
        checks: ReductionChecks {
            p_not_dividing_k: true,
            p_not_dividing_n: true,
            coefficients_reduce: true,
            degree_preserved: true,
            separable: true,
        },
    })
}

fn check_counting_support(curve: &SuperellipticCurve<PrimeField>) -> Result<(), ZetaError> {
    let k = curve.k() as u64;
    let n = curve.degree() as u64;
    if n.gcd(&k) != 1 {
        return Err(ZetaError::Unsupported(format!(
            "k = {k} and deg F = {n} are not coprime (more than one point at infinity)"
        )));
    }
    Ok(())
}

/// `#C(F_{q^i})` for `y^k = F(x)` with `gcd(k, deg F) = 1`: affine solutions
/// plus the single point at infinity.
pub fn count_points(
    curve: &SuperellipticCurve<PrimeField>,
    i: u32,
    bound: u64,
) -> Result<u64, ZetaError> {
    count_points_with(curve, i, bound, TABLE_THRESHOLD)
}

fn count_points_with(
    curve: &SuperellipticCurve<PrimeField>,
    i: u32,
    bound: u64,
    table_threshold: u64,
) -> Result<u64, ZetaError> {
    check_counting_support(curve)?;
    let base = *curve.field();
    let q = base.modulus();
    let size = q
        .checked_pow(i)
        .filter(|&s| s <= bound)
        .ok_or(ZetaError::ExtensionTooLarge { q, i, bound })?;
    if i == 0 {
        return Err(ZetaError::Unsupported("extension degree 0".into()));
    }
    let ext = ExtensionField::with_degree(base, i as usize);
    let f: Vec<Vec<u64>> = curve
        .polynomial()
        .coeffs()
        .iter()
        .map(|c| ext.embed(*c))
        .collect();
    let eval = |x: &Vec<u64>| {
        f.iter()
            .rev()
            .fold(ext.zero(), |acc, c| ext.add(&ext.mul(&acc, x), c))
    };
    let k = curve.k() as u64;
    let affine: u64 = if size < table_threshold {
        let mut roots = vec![0u64; size as usize];
        for w in 0..size {
            roots[ext.index_of(&ext.pow(&ext.element(w), k)) as usize] += 1;
        }
        (0..size)
            .map(|x| roots[ext.index_of(&eval(&ext.element(x))) as usize])
            .sum()
    } else {
        let d = k.gcd(&(size - 1));
        let exponent = (size - 1) / d;
        let one = ext.one();
        (0..size)
            .map(|x| {
                let v = eval(&ext.element(x));
                if ext.is_zero(&v) {
                    1
                } else if ext.pow(&v, exponent) == one {
                    d
                } else {
                    0
                }
            })
            .sum()
    };
    Ok(affine + 1)
}

/// Coefficients `a_0..a_2g` of `L(T)` from `N_1..N_g` over `F_q`.
pub fn l_polynomial(counts: &[u64], q: u64, genus: usize) -> Result<Vec<BigInt>, ZetaError> {
    if counts.len() < genus {
        return Err(ZetaError::InconsistentCounts(format!(
            "{} counts given, genus {genus} needs {genus}",
            counts.len()
        )));
    }
    let q_big = BigInt::from(q);
    let sums: Vec<BigInt> = (1..=genus)
        .map(|i| q_big.pow(i as u32) + 1 - BigInt::from(counts[i - 1]))
        .collect();
    let mut a = vec![BigInt::one()];
    for m in 1..=genus {
        let mut acc = sums[m - 1].clone();
        for j in 1..m {
            acc += &a[j] * &sums[m - j - 1];
        }
        let (quotient, remainder) = (-acc).div_rem(&BigInt::from(m));
        if !remainder.is_zero() {
            return Err(ZetaError::InconsistentCounts(format!(
                "Newton identity for a_{m} is not integral"
            )));
        }
        a.push(quotient);
    }
    for i in (0..genus).rev() {
        a.push(q_big.pow((genus - i) as u32) * &a[i]);
    }
    Ok(a)
}

/// `N_1..N_m` recovered from `L(T)` by running the Newton recursion forward.
pub fn counts_from_l(l: &[BigInt], q: u64, m: usize) -> Vec<BigInt> {
    let degree = l.len() - 1;
    let coeff = |i: usize| l.get(i).cloned().unwrap_or_default();
    let mut sums: Vec<BigInt> = Vec::with_capacity(m);
    for n in 1..=m {
        let mut s = -BigInt::from(n) * coeff(n);
        for j in 1..n.min(degree + 1) {
            s -= coeff(j) * &sums[n - j - 1];
        }
        sums.push(s);
    }
    sums.iter()
        .enumerate()
        .map(|(i, s)| BigInt::from(q).pow(i as u32 + 1) + 1 - s)
        .collect()
}

/// `(sqrt(q) - 1)^(2g) <= L(1) <= (sqrt(q) + 1)^(2g)`.
pub fn within_weil_bounds(order: &BigInt, q: u64, genus: usize) -> bool {
    let Some(value) = order.to_f64() else {
        return false;
    };
    let root = (q as f64).sqrt();
    let lower = (root - 1.0).powi(2 * genus as i32);
    let upper = (root + 1.0).powi(2 * genus as i32);
    value >= lower * (1.0 - WEIL_TOLERANCE) && value <= upper * (1.0 + WEIL_TOLERANCE)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    #[serde(with = "crate::decimal::string")]
    pub q: u64,
    #[serde(with = "crate::decimal::option")]
    pub t0: Option<u64>,
    #[serde(with = "crate::decimal::string")]
    pub genus: usize,
    #[serde(with = "crate::decimal::vec")]
    pub counts: Vec<u64>,
    #[serde(rename = "L_coeffs", with = "crate::decimal::vec")]
    pub l_coeffs: Vec<BigInt>,
    #[serde(with = "crate::decimal::string")]
    pub jacobian_order: BigInt,
    #[serde(rename = "N", with = "crate::decimal::option")]
    pub n: Option<u64>,
    #[serde(rename = "divisible_by_N")]
    pub divisible_by_n: bool,
    pub within_weil_bounds: bool,
}

/// Counts `N_1..N_g`, assembles `L(T)` and checks `n | L(1)` if `n` is given.
pub fn zeta_report(
    reduced: &ReducedCurve,
    n: Option<u64>,
    bound: u64,
) -> Result<ZetaReport, ZetaError> {
    let curve = &reduced.curve;
    let genus = curve
        .genus()
        .map_err(|e| ZetaError::Unsupported(e.to_string()))? as usize;
    let q = reduced.p;
    let mut largest = 1u64;
    for _ in 0..genus {
        largest = largest
            .checked_mul(q)
            .filter(|&s| s <= bound)
            .ok_or(ZetaError::ExtensionTooLarge {
                q,
                i: genus as u32,
                bound,
            })?;
    }
    let counts = (1..=genus as u32)
        .map(|i| count_points(curve, i, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let l_coeffs = l_polynomial(&counts, q, genus)?;
    let order: BigInt = l_coeffs.iter().sum();
    if !order.is_positive() {
        return Err(ZetaError::InconsistentCounts(format!("L(1) = {order}")));
    }
    let divisible_by_n = n.is_none_or(|n| (&order % BigInt::from(n)).is_zero());
    Ok(ZetaReport {
        q,
        t0: reduced.t0,
        genus,
        counts,
        within_weil_bounds: within_weil_bounds(&order, q, genus),
        l_coeffs,
        jacobian_order: order,
        n,
        divisible_by_n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPrime {
    #[serde(with = "crate::decimal::string")]
    pub p: u64,
    #[serde(with = "crate::decimal::option")]
    pub t0: Option<u64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCheck {
    pub reports: Vec<ZetaReport>,
    pub skipped: Vec<SkippedPrime>,
}

impl TorsionCheck {
    /// At least one report, and every report has `N | L(1)`.
    pub fn passed(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(|r| r.divisible_by_n)
    }
}

/// The `(p, t0)` pairs to try: zipped when the lists have equal length,
/// otherwise every combination.
pub fn sample_points(primes: &[u64], t0s: Option<&[u64]>) -> Vec<(u64, Option<u64>)> {
    match t0s {
        None | Some([]) => primes.iter().map(|&p| (p, None)).collect(),
        Some(ts) if ts.len() == primes.len() => {
            primes.iter().zip(ts).map(|(&p, &t)| (p, Some(t))).collect()
        }
        Some(ts) => primes
            .iter()
            .flat_map(|&p| ts.iter().map(move |&t| (p, Some(t))))
            .collect(),
    }
}

/// Reduces the certificate's curve at each sample point and checks
/// `N | #Jac(F_p)`. Bad reductions are skipped and recorded.
pub fn check_torsion_divisibility<K: ReduceModP>(
    cert: &TorsionCertificate<K>,
    primes: &[u64],
    t0s: Option<&[u64]>,
    bound: u64,
) -> Result<TorsionCheck, ZetaError> {
    let curve = cert
        .curve()
        .map_err(|e| ZetaError::Unsupported(e.to_string()))?;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (p, t0) in sample_points(primes, t0s) {
        let outcome = reduce_mod_p(&curve, Some(cert.n), p, t0)
            .and_then(|reduced| zeta_report(&reduced, Some(cert.n), bound));
        match outcome {
            Ok(report) => reports.push(report),
            Err(ZetaError::BadReduction { reason, .. }) => {
                skipped.push(SkippedPrime { p, t0, reason })
            }
            Err(e) => return Err(e),
        }
    }
    if reports.is_empty() {
        return Err(ZetaError::NoUsablePrimes);
    }
    Ok(TorsionCheck { reports, skipped })
}

/// `L(T)` as a polynomial over `Q`, for display.
pub fn l_as_poly(l: &[BigInt]) -> Poly<Rationals> {
    Poly::new(
        Rationals,
        l.iter().map(|c| Rationals.from_bigint(c)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::{family_example1, seed_example3};
    use crate::poly::parse_poly;

    fn curve_fp(p: u64, k: u32, s: &str) -> SuperellipticCurve<PrimeField> {
        SuperellipticCurve::new(k, parse_poly(&PrimeField::new(p).unwrap(), s, "x").unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Affine count by enumerating every `(x, y)` in `F_p^2`.
    fn naive_count(curve: &SuperellipticCurve<PrimeField>) -> u64 {
        let k = curve.field();
        let p = k.modulus();
        let mut n = 1;
        for x in 0..p {
            let v = curve.polynomial().eval(&x);
            n += (0..p).filter(|y| k.pow(y, curve.k() as u64) == v).count() as u64;
        }
        n
    }

    #[test]
    fn quintic_over_f3() {
        let curve = curve_fp(3, 2, "x^5+1");
        assert_eq!(count_points(&curve, 1, DEFAULT_ENUMERATION_BOUND).unwrap(), 4);
        assert_eq!(count_points(&curve, 2, DEFAULT_ENUMERATION_BOUND).unwrap(), 10);
        let l = l_polynomial(&[4, 10], 3, 2).unwrap();
        assert_eq!(l, ints(&[1, 0, 0, 0, 9]));
    }

    #[test]
    fn counts_agree_with_pair_enumeration() {
        for (p, k, f) in [(7, 2, "x^5+3*x+1"), (13, 3, "x^4+x+5"), (11, 2, "2*x^3+x+4")] {
            let curve = curve_fp(p, k, f);
            assert_eq!(count_points(&curve, 1, DEFAULT_ENUMERATION_BOUND).unwrap(), naive_count(&curve));
        }
    }

    #[test]
    fn table_and_exponent_paths_agree() {
        for (p, k, f, i) in [(7, 2, "x^5+3*x+1", 3), (13, 3, "x^4+x+5", 2), (5, 4, "x^3+2", 4)] {
            let curve = curve_fp(p, k, f);
            let table = count_points_with(&curve, i, DEFAULT_ENUMERATION_BOUND, u64::MAX).unwrap();
            let power = count_points_with(&curve, i, DEFAULT_ENUMERATION_BOUND, 0).unwrap();
            assert_eq!(table, power, "{f} over F_{p}^{i}");
        }
        let curve = curve_fp(101, 2, "x^5+7*x^2+3");
        let n1 = count_points(&curve, 1, DEFAULT_ENUMERATION_BOUND).unwrap();
        let n2 = count_points(&curve, 2, DEFAULT_ENUMERATION_BOUND).unwrap();
        let l = l_polynomial(&[n1, n2], 101, 2).unwrap();
        assert!(within_weil_bounds(&l.iter().sum(), 101, 2));
    }

    #[test]
    fn cube_residues_in_f7() {
        let f7 = PrimeField::new(7).unwrap();
        assert!(f7.is_kth_power(1, 3));
        assert!(!f7.is_kth_power(2, 3));
        let curve = curve_fp(7, 3, "x+1");
        // each nonzero cube has 3 roots, 0 has one: total affine 7
        assert_eq!(count_points(&curve, 1, 100).unwrap(), 8);
    }

    #[test]
    fn bound_and_support_guards() {
        let curve = curve_fp(7, 2, "x^5+1");
        assert!(matches!(count_points(&curve, 8, 2_000_000), Err(ZetaError::ExtensionTooLarge { .. })));
        let even = curve_fp(7, 2, "x^4+1");
        assert!(matches!(count_points(&even, 1, 100), Err(ZetaError::Unsupported(_))));
    }

    #[test]
    fn small_genus_shapes() {
        let q = 7;
        assert_eq!(l_polynomial(&[q + 1], q, 1).unwrap(), ints(&[1, 0, 7]));
        assert_eq!(
            l_polynomial(&[q + 1, q * q + 1], q, 2).unwrap(),
            ints(&[1, 0, 0, 0, 49])
        );
        assert!(matches!(l_polynomial(&[1, 2], 7, 2), Err(ZetaError::InconsistentCounts(_))));
    }

    #[test]
    fn example1_reductions() {
        let cert = family_example1(2, &parse_poly(&Rationals, "x+1", "x").unwrap(), 5).unwrap();
        let curve = cert.curve().unwrap();
        assert!(reduce_mod_p(&curve, Some(5), 7, None).is_ok());
        assert!(matches!(
            reduce_mod_p(&curve, Some(5), 2, None),
            Err(ZetaError::BadReduction { .. })
        ));
        assert!(reduce_mod_p(&curve, Some(5), 5, None).is_err());
        let expected = [
            (7, vec![9, 53], [1, 1, 2, 7, 49], 60),
            (11, vec![12, 118], [1, 0, -2, 0, 121], 120),
            (13, vec![12, 202], [1, -2, 18, -26, 169], 160),
        ];
        let check = check_torsion_divisibility(&cert, &[7, 11, 13], None, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert!(check.passed());
        for (report, (q, counts, l, order)) in check.reports.iter().zip(expected) {
            assert_eq!(report.q, q);
            assert_eq!(report.counts, counts);
            assert_eq!(report.l_coeffs, ints(&l));
            assert_eq!(report.jacobian_order, BigInt::from(order));
            assert!(report.within_weil_bounds);
        }
    }

    #[test]
    fn example3_specializations() {
        let cert = seed_example3().construct().unwrap();
        let check = check_torsion_divisibility(
            &cert,
            &[11, 11, 23],
            Some(&[2, 3, 5]),
            DEFAULT_ENUMERATION_BOUND,
        )
        .unwrap();
        let orders: Vec<_> = check.reports.iter().map(|r| r.jacobian_order.clone()).collect();
        assert_eq!(orders, ints(&[156, 104, 832]));
        assert_eq!(check.reports[0].counts, vec![14, 138]);
        assert!(check.passed());
        assert!(check.skipped.is_empty());
    }

    #[test]
    fn function_field_needs_t0() {
        let cert = seed_example3().construct().unwrap();
        let curve = cert.curve().unwrap();
        assert!(reduce_mod_p(&curve, Some(13), 11, None).is_err());
        // t = 0 makes the constant term t^4 vanish along with lower terms
        assert!(reduce_mod_p(&curve, Some(13), 11, Some(0)).is_err());
    }

    #[test]
    fn forward_recursion_reproduces_counts() {
        let curve = curve_fp(7, 2, "x^5+3*x+1");
        let counts: Vec<u64> = (1..=3).map(|i| count_points(&curve, i, DEFAULT_ENUMERATION_BOUND).unwrap()).collect();
        let l = l_polynomial(&counts[..2], 7, 2).unwrap();
        let predicted = counts_from_l(&l, 7, 3);
        assert_eq!(predicted, counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
    }

    #[test]
    fn report_json_uses_decimal_strings() {
        let reduced = reduce_mod_p(&curve_fp(3, 2, "x^5+1"), None, 3, None).unwrap();
        let report = zeta_report(&reduced, Some(5), DEFAULT_ENUMERATION_BOUND).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"L_coeffs\":[\"1\",\"0\",\"0\",\"0\",\"9\"]"), "{text}");
        assert!(text.contains("\"jacobian_order\":\"10\""));
        assert_eq!(serde_json::from_str::<ZetaReport>(&text).unwrap(), report);
    }
}
