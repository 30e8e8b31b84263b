//! Curves `y^k = F(x)` with a rational `N`-division point on the jacobian.
//!
//! Given coprime `b, u` and a `k`-th root `R1` of `u` modulo `b`, lift the
//! root to `R_k` modulo `b^k`, take `a = eps * R_k^N mod b^k` and solve
//!
//! ```text
//! a^k + (-1)^(k+1) * b^k * F = eps^k * u^N
//! ```
//!
//! for `F`. The left side is the norm of `psi = a + b*y` from the function
//! field of the curve down to `K(x)`, so `div(psi)` is `N` times a divisor
//! supported over the roots of `u`, giving a point of order dividing `N`.

mod families;
mod json;

use thiserror::Error;

use crate::arith::{coprime_to_characteristic, Field};
use crate::hensel::{lift, LiftError, LiftProblem};
use crate::poly::{Poly, PolyError};

pub use families::{
    example2_modulus, example2_scaled_r3, family_example1, family_example2, seed_example3,
    Example3Seed,
};
pub use json::{AnyCertificate, CertificateJson, ChecksJson, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("k must be at least 2 (got {0})")]
    DegreeTooSmall(u32),
    #[error("N > 1 required (got {0})")]
    OrderTooSmall(u64),
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("k = {k} is divisible by the characteristic {characteristic}")]
    CharacteristicDividesK { k: u32, characteristic: u64 },
    #[error("b and u are not coprime: gcd = {gcd}")]
    NotCoprime { gcd: String },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("division by b^k is not exact, remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("certificate parse error: {0}")]
    Format(String),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `a^k + (-1)^(k+1) * b^k * F`, the norm of `a + b*y` on `y^k = F`.
pub fn norm_psi<K: Field>(a: &Poly<K>, b: &Poly<K>, k: u32, f: &Poly<K>) -> Poly<K> {
    let bkf = &b.pow(k as u64) * f;
    let ak = a.pow(k as u64);
    if k % 2 == 1 {
        &ak + &bkf
    } else {
        &ak - &bkf
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// The affine model `y^k = F(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperellipticCurve<K: Field> {
    k: u32,
    f: Poly<K>,
}

impl<K: Field> SuperellipticCurve<K> {
    /// Accepts any nonzero `F`; separability and `deg F >= 5` are reported by
    /// [`SuperellipticCurve::is_valid`] rather than enforced here.
    pub fn new(k: u32, f: Poly<K>) -> Result<Self, ForgeError> {
        if k < 2 {
            return Err(ForgeError::DegreeTooSmall(k));
        }
        if !coprime_to_characteristic(f.field(), k as u64) {
            return Err(ForgeError::CharacteristicDividesK {
                k,
                characteristic: f.field().characteristic(),
            });
        }
        if f.degree().unwrap_or(0) < 1 {
            return Err(ForgeError::Precondition("F must be non-constant".into()));
        }
        Ok(Self { k, f })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn polynomial(&self) -> &Poly<K> {
        &self.f
    }

    pub fn field(&self) -> &K {
        self.f.field()
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("non-constant")
    }

    pub fn is_separable(&self) -> bool {
        self.f.is_separable()
    }

    pub fn has_degree_at_least_5(&self) -> bool {
        self.degree() >= 5
    }

    pub fn is_valid(&self) -> bool {
        self.is_separable() && self.has_degree_at_least_5()
    }

    /// `(k-1)(n-1)/2` when `gcd(k, n) = 1`.
    pub fn genus(&self) -> Result<u64, ForgeError> {
        let (k, n) = (self.k as u64, self.degree() as u64);
        if gcd_u64(k, n) == 1 {
            Ok((k - 1) * (n - 1) / 2)
        } else {
            Err(ForgeError::Unsupported(format!(
                "genus formula needs gcd(k, deg F) = 1 (k = {k}, deg F = {n})"
            )))
        }
    }

    /// One point when `gcd(k, n) = 1`, `k` points when `k | n`.
    pub fn points_at_infinity(&self) -> Result<u32, ForgeError> {
        let (k, n) = (self.k as u64, self.degree() as u64);
        if gcd_u64(k, n) == 1 {
            Ok(1)
        } else if n % k == 0 {
            Ok(self.k)
        } else {
            Err(ForgeError::Unsupported(format!(
                "1 < gcd(k, deg F) < k (k = {k}, deg F = {n})"
            )))
        }
    }
}

/// Named validity checks of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckFlags {
    /// `a^k + (-1)^(k+1) b^k F = eps^k u^N`
    pub identity: bool,
    pub separable: bool,
    pub coprime_ab: bool,
    pub coprime_bu: bool,
    /// `1 <= deg u <= genus`
    pub deg_u_bound: bool,
    pub gcd_k_deg_f: bool,
    pub deg_f_ge_5: bool,
}

impl CheckFlags {
    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, ok)| *ok)
    }

    pub fn named(&self) -> [(&'static str, bool); 7] {
        [
            ("identity", self.identity),
            ("separable", self.separable),
            ("coprime_ab", self.coprime_ab),
            ("coprime_bu", self.coprime_bu),
            ("deg_u_bound", self.deg_u_bound),
            ("gcd_k_degF", self.gcd_k_deg_f),
            ("degF_ge_5", self.deg_f_ge_5),
        ]
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.named()
            .into_iter()
            .filter_map(|(name, ok)| (!ok).then_some(name))
            .collect()
    }
}

/// Witness data for a rational `N`-division point on `y^k = F(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionCertificate<K: Field> {
    pub k: u32,
    pub n: u64,
    pub b: Poly<K>,
    pub u: Poly<K>,
    pub r1: Poly<K>,
    pub rk: Poly<K>,
    pub a: Poly<K>,
    pub f: Poly<K>,
    pub epsilon: K::Elem,
    /// `None` when `gcd(k, deg F) != 1`.
    pub genus: Option<u64>,
    pub checks: CheckFlags,
}

impl<K: Field> TorsionCertificate<K> {
    pub fn field(&self) -> &K {
        self.f.field()
    }

    pub fn is_valid(&self) -> bool {
        self.checks.all()
    }

    pub fn curve(&self) -> Result<SuperellipticCurve<K>, ForgeError> {
        SuperellipticCurve::new(self.k, self.f.clone())
    }

    /// The function `psi = a + b*y` whose norm is `eps^k u^N`.
    pub fn psi(&self) -> String {
        format!("({}) + ({})*y", self.a, self.b)
    }
}

fn genus_of(k: u32, f: &Poly<impl Field>) -> Option<u64> {
    let n = f.degree()? as u64;
    let k = k as u64;
    (n >= 1 && gcd_u64(k, n) == 1).then(|| (k - 1) * (n - 1) / 2)
}

fn coprime<K: Field>(f: &Poly<K>, g: &Poly<K>) -> bool {
    f.gcd(g).map(|d| d.is_one()).unwrap_or(false)
}

/// Outcome of re-deriving every check of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: CheckFlags,
    pub genus: Option<u64>,
    pub stored_checks_match: bool,
    pub stored_genus_matches: bool,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.checks.all() && self.stored_checks_match && self.stored_genus_matches
    }
}

/// Recomputes every flag from the certificate's polynomials.
pub fn evaluate_checks<K: Field>(
    k: u32,
    n: u64,
    b: &Poly<K>,
    u: &Poly<K>,
    a: &Poly<K>,
    f: &Poly<K>,
    epsilon: &K::Elem,
) -> (CheckFlags, Option<u64>) {
    let field = f.field();
    let rhs = u.pow(n).scale(&field.pow(epsilon, k as u64));
    let genus = genus_of(k, f);
    let deg_u = u.degree().unwrap_or(0) as u64;
    let flags = CheckFlags {
        identity: norm_psi(a, b, k, f) == rhs,
        separable: f.degree().unwrap_or(0) >= 1 && f.is_separable(),
        coprime_ab: coprime(a, b),
        coprime_bu: coprime(b, u),
        deg_u_bound: genus.is_some_and(|g| deg_u >= 1 && deg_u <= g),
        gcd_k_deg_f: genus.is_some(),
        deg_f_ge_5: f.degree().unwrap_or(0) >= 5,
    };
    (flags, genus)
}

/// Independent re-verification of a stored certificate.
pub fn verify_certificate<K: Field>(cert: &TorsionCertificate<K>) -> VerificationReport {
    let fields_agree = [&cert.b, &cert.u, &cert.a]
        .iter()
        .all(|p| p.field() == cert.f.field());
    if !fields_agree {
        return VerificationReport {
            checks: CheckFlags::default(),
            genus: None,
            stored_checks_match: false,
            stored_genus_matches: false,
        };
    }
    let (checks, genus) = evaluate_checks(
        cert.k,
        cert.n,
        &cert.b,
        &cert.u,
        &cert.a,
        &cert.f,
        &cert.epsilon,
    );
    VerificationReport {
        checks,
        genus,
        stored_checks_match: checks == cert.checks,
        stored_genus_matches: genus == cert.genus,
    }
}

/// Builds `a`, `F` and the certificate from `(k, N, b, u, R1, eps)`.
///
/// Inseparable `F` or `gcd(a, b) != 1` do not abort: the certificate is
/// returned with the corresponding flags cleared.
pub fn construct<K: Field>(
    k: u32,
    n: u64,
    b: &Poly<K>,
    u: &Poly<K>,
    r1: &Poly<K>,
    epsilon: &K::Elem,
) -> Result<TorsionCertificate<K>, ForgeError> {
    let field = b.field().clone();
    if k < 2 {
        return Err(ForgeError::DegreeTooSmall(k));
    }
    if n < 2 {
        return Err(ForgeError::OrderTooSmall(n));
    }
    if field.is_zero(epsilon) {
        return Err(ForgeError::ZeroEpsilon);
    }
    if !coprime_to_characteristic(&field, k as u64) {
        return Err(ForgeError::CharacteristicDividesK {
            k,
            characteristic: field.characteristic(),
        });
    }
    let g = b.gcd(u)?;
    if !g.is_one() {
        return Err(ForgeError::NotCoprime { gcd: g.to_string() });
    }

    let problem = LiftProblem::new(k, b.clone(), u.clone(), r1.clone(), k)?;
    let rk = lift(&problem)?.root;

    let bk = b.pow(k as u64);
    let a = rk.mod_pow(n, &bk)?.scale(epsilon);
    let target = u.pow(n).scale(&field.pow(epsilon, k as u64));
    let (quotient, remainder) = (&target - &a.pow(k as u64)).divmod(&bk)?;
    if !remainder.is_zero() {
        return Err(ForgeError::InexactDivision {
            remainder: remainder.to_string(),
        });
    }
    let f = if k % 2 == 1 { quotient } else { -quotient };

    let (checks, genus) = evaluate_checks(k, n, b, u, &a, &f, epsilon);
    Ok(TorsionCertificate {
        k,
        n,
        b: b.clone(),
        u: u.clone(),
        r1: r1.clone(),
        rk,
        a,
        f,
        epsilon: epsilon.clone(),
        genus,
        checks,
    })
}
