//! Jacobian arithmetic on odd-degree hyperelliptic curves `y^2 = f(x)`,
//! `f` monic, through Mumford pairs `(U, V)` and Cantor's algorithm.
//!
//! A curve `y^2 = F(x)` with leading coefficient `c` and `deg F = 2g + 1` is
//! carried to the monic model by `(x, y) -> (c*x, c^g * y)`, under which
//! `f(c*x) = c^(2g) * F(x)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, Field, PrimeField};
use crate::forge::{verify_certificate, ForgeError, SuperellipticCurve, TorsionCertificate};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certificate does not induce a Mumford divisor")]
    NotMumford,
    #[error("not a Mumford pair: {0}")]
    InvalidDivisor(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Forge(#[from] ForgeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced divisor class: `U` monic, `deg V < deg U <= g`, `U | V^2 - f`.
#[derive(Debug, Clone, PartialEq)]
pub struct MumfordDivisor<K: Field> {
    u: Poly<K>,
    v: Poly<K>,
}

impl<K: Field> MumfordDivisor<K> {
    pub fn u(&self) -> &Poly<K> {
        &self.u
    }

    pub fn v(&self) -> &Poly<K> {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    pub fn format(&self) -> String {
        format!("({}, {})", self.u, self.v)
    }
}

/// `y^2 = f(x)` with `f` monic of degree `2g + 1`, plus the scale `c` tying it
/// to the original model.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicModel<K: Field> {
    original: Poly<K>,
    f: Poly<K>,
    c: K::Elem,
    genus: usize,
}

impl<K: Field> MonicModel<K> {
    /// A model that is already monic, with the identity coordinate map.
    pub fn new(f: Poly<K>) -> Result<Self, JacobianError> {
        if !f.is_monic() {
            return Err(JacobianError::Precondition("f must be monic".into()));
        }
        let curve = SuperellipticCurve::new(2, f)?;
        monicize(&curve)
    }

    pub fn field(&self) -> &K {
        self.f.field()
    }

    pub fn polynomial(&self) -> &Poly<K> {
        &self.f
    }

    pub fn original(&self) -> &Poly<K> {
        &self.original
    }

    pub fn scale(&self) -> &K::Elem {
        &self.c
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Image of an affine point of the original curve.
    pub fn map_point(&self, x: &K::Elem, y: &K::Elem) -> (K::Elem, K::Elem) {
        let k = self.field();
        (
            k.mul(&self.c, x),
            k.mul(&k.pow(&self.c, self.genus as u64), y),
        )
    }

    /// Preimage of an affine point of the monic model.
    pub fn unmap_point(&self, x: &K::Elem, y: &K::Elem) -> Result<(K::Elem, K::Elem), JacobianError> {
        let k = self.field();
        let c_inv = k.inv(&self.c).map_err(PolyError::from)?;
        Ok((
            k.mul(&c_inv, x),
            k.mul(&k.pow(&c_inv, self.genus as u64), y),
        ))
    }

    /// `f(c*x) = c^(2g) * F(x)`.
    pub fn check_map(&self) -> bool {
        let k = self.field();
        self.f.scale_variable(&self.c)
            == self
                .original
                .scale(&k.pow(&self.c, 2 * self.genus as u64))
    }

    pub fn identity(&self) -> MumfordDivisor<K> {
        MumfordDivisor {
            u: Poly::one(self.field().clone()),
            v: Poly::zero(self.field().clone()),
        }
    }

    /// Validates and reduces `(U, V)`.
    pub fn divisor(&self, u: Poly<K>, v: Poly<K>) -> Result<MumfordDivisor<K>, JacobianError> {
        if u.is_zero() {
            return Err(JacobianError::InvalidDivisor("U = 0".into()));
        }
        let u = u.monic();
        let v = v.rem(&u)?;
        if !u.divides(&(&(&v * &v) - &self.f))? {
            return Err(JacobianError::InvalidDivisor(format!(
                "U = {u} does not divide V^2 - f for V = {v}"
            )));
        }
        Ok(self.reduce(u, v)?)
    }

    /// `P - P_inf` for an affine point `P = (x, y)` of the monic model.
    pub fn point(&self, x: &K::Elem, y: &K::Elem) -> Result<MumfordDivisor<K>, JacobianError> {
        let k = self.field().clone();
        if self.f.eval(x) != k.mul(y, y) {
            return Err(JacobianError::InvalidDivisor(format!(
                "({}, {}) is not on the curve",
                k.format_elem(x),
                k.format_elem(y)
            )));
        }
        let u = Poly::new(k.clone(), vec![k.neg(x), k.one()]);
        Ok(MumfordDivisor {
            u,
            v: Poly::constant(k, y.clone()),
        })
    }

    /// Whether `(U, V)` satisfies every Mumford condition on this model.
    pub fn is_reduced(&self, d: &MumfordDivisor<K>) -> bool {
        let deg_u = d.u.degree().unwrap_or(0);
        let deg_v_ok = d.v.degree().is_none_or(|dv| dv < deg_u);
        d.u.is_monic()
            && deg_u <= self.genus
            && deg_v_ok
            && d.u
                .divides(&(&(&d.v * &d.v) - &self.f))
                .unwrap_or(false)
    }

    pub fn negate(&self, d: &MumfordDivisor<K>) -> MumfordDivisor<K> {
        let v = if d.is_identity() {
            d.v.clone()
        } else {
            (-&d.v).rem(&d.u).expect("U is monic")
        };
        MumfordDivisor { u: d.u.clone(), v }
    }

    fn reduce(&self, mut u: Poly<K>, mut v: Poly<K>) -> Result<MumfordDivisor<K>, PolyError> {
        while u.degree().unwrap_or(0) > self.genus {
            let u_next = (&self.f - &(&v * &v)).exact_div(&u)?.monic();
            v = (-&v).rem(&u_next)?;
            u = u_next;
        }
        let u = u.monic();
        let v = if u.is_one() {
            Poly::zero(u.field().clone())
        } else {
            v.rem(&u)?
        };
        Ok(MumfordDivisor { u, v })
    }

    /// Composition followed by reduction.
    pub fn add(&self, d1: &MumfordDivisor<K>, d2: &MumfordDivisor<K>) -> MumfordDivisor<K> {
        if d1.is_identity() {
            return d2.clone();
        }
        if d2.is_identity() {
            return d1.clone();
        }
        self.compose(d1, d2)
            .expect("Cantor composition on Mumford pairs of one model")
    }

    fn compose(
        &self,
        d1: &MumfordDivisor<K>,
        d2: &MumfordDivisor<K>,
    ) -> Result<MumfordDivisor<K>, PolyError> {
        let (u1, v1, u2, v2) = (&d1.u, &d1.v, &d2.u, &d2.v);
        let (g1, e1, e2) = u1.xgcd(u2)?;
        let (d, c1, c2) = g1.xgcd(&(v1 + v2))?;
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let u = (u1 * u2).exact_div(&(&d * &d))?;
        let numerator = &(&(&(&s1 * u1) * v2) + &(&(&s2 * u2) * v1))
            + &(&c2 * &(&(v1 * v2) + &self.f));
        let v = numerator.exact_div(&d)?.rem(&u)?;
        self.reduce(u, v)
    }

    pub fn double(&self, d: &MumfordDivisor<K>) -> MumfordDivisor<K> {
        self.add(d, d)
    }

    /// `m * D` by double-and-add; `0 * D` is the identity.
    pub fn multiply(&self, m: u64, d: &MumfordDivisor<K>) -> MumfordDivisor<K> {
        let mut result = self.identity();
        if m == 0 {
            return result;
        }
        for i in (0..64 - m.leading_zeros()).rev() {
            result = self.double(&result);
            if (m >> i) & 1 == 1 {
                result = self.add(&result, d);
            }
        }
        result
    }

    /// Carries a divisor given on the original model `y^2 = F`.
    pub fn transport(
        &self,
        u: &Poly<K>,
        v: &Poly<K>,
    ) -> Result<MumfordDivisor<K>, JacobianError> {
        let k = self.field();
        let c_inv = k.inv(&self.c).map_err(PolyError::from)?;
        let u = u.monic();
        let m = u.degree().unwrap_or(0) as u64;
        let u_new = u.scale_variable(&c_inv).scale(&k.pow(&self.c, m));
        let v_new = v
            .scale_variable(&c_inv)
            .scale(&k.pow(&self.c, self.genus as u64));
        self.divisor(u_new, v_new)
    }
}

impl MonicModel<PrimeField> {
    /// `sum (P_i - P_inf)` over the points `(x_i, y_i)` with `y_i` a square root
    /// of `f(x_i)`, negated when the flag is set. Abscissas where `f` is not a
    /// square are skipped.
    pub fn sum_of_points(&self, points: &[(u64, bool)]) -> MumfordDivisor<PrimeField> {
        let k = *self.field();
        points.iter().fold(self.identity(), |acc, &(x, negate)| {
            let x = x % k.modulus();
            match k.sqrt(self.f.eval(&x)) {
                Some(y) => {
                    let y = if negate { k.neg(&y) } else { y };
                    let p = self.point(&x, &y).expect("square root lies on the curve");
                    self.add(&acc, &p)
                }
                None => acc,
            }
        })
    }
}

/// Monic model of a `k = 2` curve of odd degree.
pub fn monicize<K: Field>(curve: &SuperellipticCurve<K>) -> Result<MonicModel<K>, JacobianError> {
    let field = curve.field().clone();
    if curve.k() != 2 {
        return Err(JacobianError::Unsupported(format!(
            "Cantor arithmetic needs k = 2, got k = {}",
            curve.k()
        )));
    }
    if field.characteristic() == 2 {
        return Err(JacobianError::Unsupported("characteristic 2".into()));
    }
    let deg = curve.degree();
    if deg.is_multiple_of(2) {
        return Err(JacobianError::Unsupported(format!(
            "even degree {deg} (two points at infinity)"
        )));
    }
    let original = curve.polynomial().clone();
    let c = original.leading().clone();
    let coeffs = original
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            if i == deg {
                field.one()
            } else {
                field.mul(fi, &field.pow(&c, (deg - 1 - i) as u64))
            }
        })
        .collect();
    let model = MonicModel {
        f: Poly::new(field, coeffs),
        original,
        c,
        genus: (deg - 1) / 2,
    };
    debug_assert!(model.check_map());
    Ok(model)
}

pub fn cantor_add<K: Field>(
    model: &MonicModel<K>,
    d1: &MumfordDivisor<K>,
    d2: &MumfordDivisor<K>,
) -> MumfordDivisor<K> {
    model.add(d1, d2)
}

pub fn cantor_scalar_mul<K: Field>(
    model: &MonicModel<K>,
    m: u64,
    d: &MumfordDivisor<K>,
) -> MumfordDivisor<K> {
    model.multiply(m, d)
}

/// The class `D0` supported on the zeros of `u`, where `y = -a/b`.
pub fn divisor_from_certificate<K: Field>(
    cert: &TorsionCertificate<K>,
) -> Result<(MonicModel<K>, MumfordDivisor<K>), JacobianError> {
    if cert.k != 2 {
        return Err(JacobianError::Unsupported(format!(
            "Cantor arithmetic needs k = 2, got k = {}",
            cert.k
        )));
    }
    if !cert.b.gcd(&cert.u)?.is_one() {
        return Err(JacobianError::Precondition("gcd(b, u) != 1".into()));
    }
    let model = monicize(&cert.curve()?)?;
    let deg_u = cert.u.degree().unwrap_or(0);
    if deg_u > model.genus() {
        return Err(JacobianError::Precondition(format!(
            "deg u = {deg_u} exceeds the genus {}",
            model.genus()
        )));
    }
    if deg_u == 0 {
        return Ok((model.clone(), model.identity()));
    }
    let u = cert.u.monic();
    let v = (-&(&cert.a * &cert.b.mod_inv(&u)?)).rem(&u)?;
    if !u.divides(&(&(&v * &v) - &cert.f))? {
        return Err(JacobianError::NotMumford);
    }
    let divisor = model
        .transport(&u, &v)
        .map_err(|_| JacobianError::NotMumford)?;
    Ok((model, divisor))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime `N` at or below this bound has `m * D0 != O` checked for every `m < N`.
pub const DIRECT_ITERATION_BOUND: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order_divides: bool,
    #[serde(with = "crate::decimal::option")]
    pub order_exact: Option<u64>,
    pub steps_checked: Vec<String>,
    /// Monic model polynomial, absent off the Cantor path.
    pub model: Option<String>,
    pub note: Option<String>,
}

impl OrderReport {
    /// `N * D0 = O` and, when known, the exact order is above 1.
    pub fn passed(&self) -> bool {
        self.order_divides && self.order_exact.is_none_or(|o| o > 1)
    }
}

/// Certifies `1 < ord(D0) | N`. For `k != 2` only the certificate identity is
/// consulted.
pub fn verify_order<K: Field>(cert: &TorsionCertificate<K>) -> OrderReport {
    if cert.k != 2 {
        let report = verify_certificate(cert);
        return OrderReport {
            order_divides: report.checks.identity,
            order_exact: None,
            steps_checked: vec!["certificate identity".into()],
            model: None,
            note: Some("divisibility asserted by certificate identity only".into()),
        };
    }
    let (model, d0) = match divisor_from_certificate(cert) {
        Ok(pair) => pair,
        Err(e) => {
            return OrderReport {
                order_divides: false,
                order_exact: None,
                steps_checked: Vec::new(),
                model: None,
                note: Some(e.to_string()),
            }
        }
    };
    let (order, steps) = exact_order(&model, &d0, cert.n);
    OrderReport {
        order_divides: order.is_some(),
        order_exact: order,
        steps_checked: steps,
        model: Some(model.polynomial().to_string()),
        note: None,
    }
}

/// The exact order of `d` if it divides `n`, with a log of the checks made.
pub fn exact_order<K: Field>(
    model: &MonicModel<K>,
    d: &MumfordDivisor<K>,
    n: u64,
) -> (Option<u64>, Vec<String>) {
    let mut steps = Vec::new();
    let nd = model.multiply(n, d);
    steps.push(format!("{n}*D0 {} O", if nd.is_identity() { "=" } else { "!=" }));
    if !nd.is_identity() {
        return (None, steps);
    }
    if is_prime(n) && n <= DIRECT_ITERATION_BOUND {
        let mut acc = model.identity();
        for m in 1..n {
            acc = model.add(&acc, d);
            let zero = acc.is_identity();
            steps.push(format!("{m}*D0 {} O", if zero { "=" } else { "!=" }));
            if zero {
                return (Some(m), steps);
            }
        }
        return (Some(n), steps);
    }
    let mut order = n;
    for q in prime_factors(n) {
        while order.is_multiple_of(q) {
            let candidate = order / q;
            let zero = model.multiply(candidate, d).is_identity();
            steps.push(format!("{candidate}*D0 {} O", if zero { "=" } else { "!=" }));
            if !zero {
                break;
            }
            order = candidate;
        }
    }
    (Some(order), steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{RationalFunctionField, Rationals};
    use crate::forge::{construct, family_example1, seed_example3};
    use crate::poly::parse_poly;

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s, "x").unwrap()
    }

    fn fp(p: u64, s: &str) -> Poly<PrimeField> {
        parse_poly(&PrimeField::new(p).unwrap(), s, "x").unwrap()
    }

    #[test]
    fn monic_curve_keeps_identity_map() {
        let model = monicize(&SuperellipticCurve::new(2, q("x^5+3*x+1")).unwrap()).unwrap();
        assert_eq!(model.polynomial(), &q("x^5+3*x+1"));
        assert_eq!(model.scale(), &Rationals.one());
    }

    #[test]
    fn negative_leading_coefficient() {
        let model = monicize(&SuperellipticCurve::new(2, q("-x^5+x^2+2*x+1")).unwrap()).unwrap();
        // f(-x) = (-1)^4 F(x)
        assert_eq!(model.polynomial(), &q("x^5+x^2-2*x+1"));
        assert!(model.check_map());
    }

    #[test]
    fn example3_model_over_function_field() {
        let seed = seed_example3();
        let curve = SuperellipticCurve::new(2, seed.f.clone()).unwrap();
        let model = monicize(&curve).unwrap();
        assert!(model.polynomial().is_monic());
        assert_eq!(model.genus(), 2);
        assert!(model.check_map());
        let k = RationalFunctionField;
        assert_eq!(k.format_elem(model.scale()), "-4");
    }

    #[test]
    fn rejects_unsupported_curves() {
        let even = SuperellipticCurve::new(2, q("x^6+1")).unwrap();
        assert!(matches!(monicize(&even), Err(JacobianError::Unsupported(_))));
        let cubic = SuperellipticCurve::new(3, q("x^5+1")).unwrap();
        assert!(matches!(monicize(&cubic), Err(JacobianError::Unsupported(_))));
    }

    #[test]
    fn example1_divisor_is_point_over_zero() {
        let cert = family_example1(2, &q("x+1"), 5).unwrap();
        let (model, d0) = divisor_from_certificate(&cert).unwrap();
        // (0, -1) on y^2 = F, and c = -1 with g = 2 fixes both coordinates
        assert_eq!(d0.u(), &q("x"));
        assert_eq!(d0.v(), &q("-1"));
        assert!(model.is_reduced(&d0));
    }

    #[test]
    fn example1_order_five() {
        let cert = family_example1(2, &q("x+1"), 5).unwrap();
        let report = verify_order(&cert);
        assert_eq!(report.order_exact, Some(5));
        assert!(report.passed());
        assert_eq!(report.steps_checked.len(), 5);
    }

    #[test]
    fn example3_order_thirteen() {
        let cert = seed_example3().construct().unwrap();
        let (model, d0) = divisor_from_certificate(&cert).unwrap();
        let k = RationalFunctionField;
        assert_eq!(d0.u(), &Poly::x(k));
        // y = -a/b = -t^2 at x = 0, scaled by c^2 = 16
        assert_eq!(k.format_elem(&d0.v().coeff(0)), "-16*t^2");
        let report = verify_order(&cert);
        assert_eq!(report.order_exact, Some(13), "{:?}", report);
        assert!(model.multiply(13, &d0).is_identity());
    }

    #[test]
    fn cubic_certificate_uses_identity_only() {
        let cert = family_example1(3, &q("x+2"), 7).unwrap();
        let report = verify_order(&cert);
        assert!(report.order_divides);
        assert_eq!(report.order_exact, None);
        assert!(report.note.unwrap().contains("identity only"));
    }

    #[test]
    fn bad_certificate_is_reported() {
        let mut cert = family_example1(2, &q("x+1"), 5).unwrap();
        cert.f = &cert.f + &q("1");
        assert!(matches!(divisor_from_certificate(&cert), Err(JacobianError::NotMumford)));
        assert!(!verify_order(&cert).passed());
    }

    #[test]
    fn composite_order_search() {
        let cert = family_example1(2, &q("x+1"), 5).unwrap();
        let (model, d0) = divisor_from_certificate(&cert).unwrap();
        assert_eq!(exact_order(&model, &d0, 15).0, Some(5));
        assert_eq!(exact_order(&model, &d0, 100).0, Some(5));
        assert_eq!(exact_order(&model, &d0, 7).0, None);
    }

    #[test]
    fn group_laws_on_small_field() {
        let model = MonicModel::new(fp(7, "x^5+1")).unwrap();
        let k = *model.field();
        let points: Vec<_> = (0..7u64)
            .filter_map(|x| {
                let y = k.sqrt(model.polynomial().eval(&x))?;
                Some(model.point(&x, &y).unwrap())
            })
            .collect();
        assert!(points.len() >= 3);
        for a in &points {
            assert_eq!(model.add(a, &model.identity()), *a);
            assert!(model.add(a, &model.negate(a)).is_identity());
            for b in &points {
                let ab = model.add(a, b);
                assert!(model.is_reduced(&ab));
                assert_eq!(ab, model.add(b, a));
                for c in &points {
                    assert_eq!(model.add(&ab, c), model.add(a, &model.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn construction_over_prime_field_annihilated_by_n() {
        // b = x^2 + 1, u = x + 2 over F_11; N = 9 gives deg F = 9 - 4 = 5
        let k = PrimeField::new(11).unwrap();
        let b = fp(11, "x^2+1");
        let u = fp(11, "x+2");
        let r1 = crate::hensel::find_root_mod_b(2, &b, &u).unwrap();
        let cert = construct(2, 9, &b, &u, &r1, &k.one()).unwrap();
        assert_eq!(cert.f.degree(), Some(5));
        assert!(cert.is_valid(), "{:?}", cert.checks.failed());
        let (model, d0) = divisor_from_certificate(&cert).unwrap();
        assert!(model.multiply(9, &d0).is_identity());
        let report = verify_order(&cert);
        assert!(report.passed());
        assert_eq!(9 % report.order_exact.unwrap(), 0);
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let model = MonicModel::new(fp(7, "x^5+1")).unwrap();
        assert!(model.divisor(fp(7, "x"), fp(7, "2")).is_err());
        assert!(model.point(&0, &2).is_err());
        assert!(MonicModel::new(fp(7, "2*x^5+1")).is_err());
    }
}
