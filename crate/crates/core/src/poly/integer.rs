//! Integer-coefficient helpers used by the gcd over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{PrimeField, Rational};

use super::Poly;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.0.last().is_some_and(Signed::is_negative) {
            -g
        } else {
            g
        }
    }

    /// Divides out the content, leaving a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self(self.0.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder of `self` by `g`, up to a power of `lc(g)`.
    pub fn pseudo_rem(&self, g: &Self) -> Self {
        let dg = g.degree().expect("nonzero divisor");
        let lg = g.leading();
        let mut r = self.0.clone();
        while r.len() > dg && !r.is_empty() {
            let top = r.pop().expect("non-empty");
            let shift = r.len() - dg;
            for c in r.iter_mut() {
                *c *= lg;
            }
            if !top.is_zero() {
                for (i, gc) in g.0[..dg].iter().enumerate() {
                    r[shift + i] -= &top * gc;
                }
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Reduction mod `p`; `None` if the leading coefficient vanishes.
    pub fn reduce(&self, field: &PrimeField) -> Option<Poly<PrimeField>> {
        let p = BigInt::from(field.modulus());
        let coeffs: Vec<u64> = self
            .0
            .iter()
            .map(|c| c.mod_floor(&p).to_u64().expect("residue fits"))
            .collect();
        if coeffs.last().is_some_and(|&c| c == 0) {
            return None;
        }
        Some(Poly::new(*field, coeffs))
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }
}

/// Scales rational coefficients by the lcm of their denominators.
pub fn clear_denominators(coeffs: &[Rational]) -> IntPoly {
    let den = crate::arith::common_denominator(coeffs);
    IntPoly::new(
        coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn content_and_primitive() {
        let f = ip(&[6, -4, -2]);
        assert_eq!(f.content(), BigInt::from(-2));
        assert_eq!(f.primitive(), ip(&[-3, 2, 1]));
    }

    #[test]
    fn pseudo_remainder() {
        // prem(x^2 + 1, 2x + 1) = 4*(x^2+1) mod (2x+1) = 5
        assert_eq!(ip(&[1, 0, 1]).pseudo_rem(&ip(&[1, 2])), ip(&[5]));
    }

    #[test]
    fn clears_denominators() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(clear_denominators(&[r(1, 2), r(2, 3)]), ip(&[3, 4]));
    }
}
