//! The three worked families: `y^k = a^k - x^p`, the cubic family over the
//! sextic modulus, and the genus-2 curve over `Q(t)` with 13-torsion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{is_prime, Field, RationalFunctionField, Rationals};
use crate::poly::{parse_poly, Poly};

use super::{construct, evaluate_checks, ForgeError, TorsionCertificate};

/// Printed `9 * R_3` for the cubic family, highest degree first.
const EXAMPLE2_SCALED_R3: [i64; 18] = [
    1, -2, 9, -18, 36, -73, 90, -172, 162, -255, 212, -248, 185, -161, 93, -53, 22, 1,
];

/// `b = x^6 + 3x^4 + 3x^2 - x + 1`, chosen so that `(x^2 + 1)^3 = x (mod b)`.
pub fn example2_modulus() -> Poly<Rationals> {
    Poly::from_i64s(Rationals, &[1, -1, 3, 0, 3, 0, 1])
}

/// The published value of `9 * R_3`.
pub fn example2_scaled_r3() -> Poly<Rationals> {
    let low_first: Vec<i64> = EXAMPLE2_SCALED_R3.iter().rev().copied().collect();
    Poly::from_i64s(Rationals, &low_first)
}

/// `y^k = a^k - x^p` over `Q`, where `psi = a + b*y` has norm `x^p`.
///
/// `b = 1` for even `k`; for odd `k` the norm of `a + y` is `a^k + F`, so
/// `b = -1` is used to keep the norm equal to `x^p`.
pub fn family_example1(
    k: u32,
    a: &Poly<Rationals>,
    p: u64,
) -> Result<TorsionCertificate<Rationals>, ForgeError> {
    if k < 2 {
        return Err(ForgeError::DegreeTooSmall(k));
    }
    if !a.coeffs().iter().all(|c| c.is_integer()) {
        return Err(ForgeError::Precondition("a must have integer coefficients".into()));
    }
    let a0 = a.coeff(0).to_integer();
    if !a0.gcd(&BigInt::from(k)).is_one() {
        return Err(ForgeError::Precondition(format!(
            "gcd(a(0), k) = gcd({a0}, {k}) must be 1"
        )));
    }
    if p == 2 || !is_prime(p) {
        return Err(ForgeError::Precondition(format!("p = {p} must be an odd prime")));
    }
    let deg_a = a.degree().unwrap_or(0) as u64;
    if p <= k as u64 * deg_a {
        return Err(ForgeError::Precondition(format!(
            "p = {p} must exceed k * deg(a) = {}",
            k as u64 * deg_a
        )));
    }

    let field = Rationals;
    let b = if k.is_multiple_of(2) {
        Poly::one(field)
    } else {
        Poly::constant(field, field.from_i64(-1))
    };
    let u = Poly::x(field);
    let f = &a.pow(k as u64) - &Poly::monomial(field.one(), p as usize, field);
    let epsilon = field.one();
    let (checks, genus) = evaluate_checks(k, p, &b, &u, a, &f, &epsilon);
    Ok(TorsionCertificate {
        k,
        n: p,
        b,
        u,
        // b is a unit, so every polynomial is a k-th root of u modulo b^k
        r1: Poly::one(field),
        rk: Poly::one(field),
        a: a.clone(),
        f,
        epsilon,
        genus,
        checks,
    })
}

/// `y^3 = F_p(x)` from the sextic modulus, `u = x`, `R1 = x^2 + 1`, `N = p`.
pub fn family_example2(p: u64) -> Result<TorsionCertificate<Rationals>, ForgeError> {
    if !is_prime(p) {
        return Err(ForgeError::Precondition(format!("{p} is not prime")));
    }
    if p < 51 {
        return Err(ForgeError::Precondition(format!("p = {p} must be at least 51")));
    }
    let field = Rationals;
    let cert = construct(
        3,
        p,
        &example2_modulus(),
        &Poly::x(field),
        &Poly::from_i64s(field, &[1, 0, 1]),
        &field.one(),
    )?;
    if cert.genus != Some(p - 19) {
        return Err(ForgeError::Precondition(format!(
            "expected genus {} for p = {p}, got {:?}",
            p - 19,
            cert.genus
        )));
    }
    Ok(cert)
}

/// Published data for the genus-2 curve over `Q(t)` with a point of order 13.
#[derive(Debug, Clone, PartialEq)]
pub struct Example3Seed {
    pub k: u32,
    pub n: u64,
    pub b: Poly<RationalFunctionField>,
    pub u: Poly<RationalFunctionField>,
    pub r1: Poly<RationalFunctionField>,
    /// The printed `F`.
    pub f: Poly<RationalFunctionField>,
    /// Normalization under which the construction reproduces the printed `F`.
    pub epsilon: i64,
}

impl Example3Seed {
    pub fn epsilon_elem(&self) -> <RationalFunctionField as Field>::Elem {
        RationalFunctionField.from_i64(self.epsilon)
    }

    pub fn construct(&self) -> Result<TorsionCertificate<RationalFunctionField>, ForgeError> {
        construct(self.k, self.n, &self.b, &self.u, &self.r1, &self.epsilon_elem())
    }
}

pub fn seed_example3() -> Example3Seed {
    let k = RationalFunctionField;
    let p = |s: &str| parse_poly(&k, s, "x").expect("fixture parses");
    Example3Seed {
        k: 2,
        n: 13,
        b: p("x^4-3*x^3+(1+2*t)*x^2-2*t*x+t^2"),
        u: p("x"),
        r1: p("(-1/t)*x^3+(3/t)*x^2+(-(1+t)/t)*x+1"),
        f: p("-4*x^5+(t^2+10*t+1)*x^4-4*t*(2*t+1)*x^3+2*t^2*(t+3)*x^2-4*t^3*x+t^4"),
        epsilon: 2,
    }
}
