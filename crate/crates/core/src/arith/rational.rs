use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{ArithError, Field, PrimeField};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// The field `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn inv(&self, a: &Rational) -> Result<Rational, ArithError> {
        if a.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn tag(&self) -> String {
        "Q".to_string()
    }

    fn format_elem(&self, a: &Rational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn poly_gcd_hook(&self, f: &[Rational], g: &[Rational]) -> Option<Vec<Rational>> {
        Some(crate::poly::rational_gcd(f, g))
    }
}

/// Image of `q` in `F_p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(q: &Rational, field: &PrimeField) -> Option<u64> {
    let p = BigInt::from(field.modulus());
    let den = q.denom().mod_floor(&p).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&p).to_u64()?;
    let den_inv = field.inv(&den).ok()?;
    Some(field.mul(&num, &den_inv))
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(coeffs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}
