//! Dense univariate polynomials over any [`Field`].
//!
//! The zero polynomial has an empty coefficient vector and degree `None`,
//! which plays the role of `-inf`: `Option<usize>` orders `None` below every
//! `Some(d)`, and [`degree_of_product`] adds degrees with that convention.

mod gcd;
mod integer;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{ArithError, Field};

pub(crate) use gcd::rational_gcd;
pub use integer::{clear_denominators, IntPoly};
pub use parse::{parse_poly, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("modulus must have degree at least 1")]
    ModulusDegree,
    #[error("not invertible: gcd with the modulus is {gcd}")]
    NotInvertible { gcd: String },
    #[error("division is not exact: remainder {remainder}")]
    InexactDivision { remainder: String },
}

/// Outcome of the separability test, distinguishing a vanishing derivative
/// (possible only in positive characteristic).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Separable,
    RepeatedFactor,
    ZeroDerivative,
}

/// `deg(f*g)` under the `-inf` convention for the zero polynomial.
pub fn degree_of_product(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: Field> {
    field: K,
    /// `coeffs[i]` multiplies `x^i`; the last entry is nonzero.
    coeffs: Vec<K::Elem>,
}

impl<K: Field + Eq> Eq for Poly<K> where K::Elem: Eq {}

impl<K: Field> Poly<K> {
    pub fn new(field: K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: K) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: K) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: K, c: K::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: K) -> Self {
        Self::monomial(field.one(), 1, field)
    }

    /// `c * x^e`
    pub fn monomial(c: K::Elem, e: usize, field: K) -> Self {
        let mut coeffs = vec![field.zero(); e];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn from_i64s(field: K, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    /// Coefficients, lowest degree first, without trailing zeros.
    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lead(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn leading(&self) -> &K::Elem {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), coeffs)
    }

    /// `f(c*x)`.
    pub fn scale_variable(&self, c: &K::Elem) -> Self {
        let k = &self.field;
        let mut power = k.one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let term = k.mul(a, &power);
                power = k.mul(&power, c);
                term
            })
            .collect();
        Self::new(k.clone(), coeffs)
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(c) if self.field.is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).expect("leading coefficient is nonzero")),
        }
    }

    pub fn map<L: Field>(&self, target: L, f: impl Fn(&K::Elem) -> L::Elem) -> Poly<L> {
        let coeffs = self.coeffs.iter().map(f).collect();
        Poly::new(target, coeffs)
    }

    pub fn try_map<L: Field, E>(
        &self,
        target: L,
        f: impl Fn(&K::Elem) -> Result<L::Elem, E>,
    ) -> Result<Poly<L>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Poly::new(target, coeffs))
    }

    fn check_field(&self, other: &Self) -> Result<(), PolyError> {
        Ok(self.field.ensure_same(&other.field)?)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let k = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = k.add(c, s);
        }
        Self::new(k.clone(), coeffs)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(k.clone());
        }
        let mut coeffs = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = k.mul(a, b);
                coeffs[i + j] = k.add(&coeffs[i + j], &t);
            }
        }
        Self::new(k.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Euclidean division: `self = q*g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.check_field(g)?;
        let k = &self.field;
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let df = match self.degree() {
            Some(df) if df >= dg => df,
            _ => return Ok((Self::zero(k.clone()), self.clone())),
        };
        let lead_inv = k.inv(g.leading())?;
        let monic_divisor = k.is_one(&lead_inv);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![k.zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            let top = &rem[i + dg];
            if k.is_zero(top) {
                continue;
            }
            let c = if monic_divisor {
                top.clone()
            } else {
                k.mul(top, &lead_inv)
            };
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = k.mul(&c, gc);
                rem[i + j] = k.sub(&rem[i + j], &t);
            }
            quot[i] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(k.clone(), quot), Self::new(k.clone(), rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(g)?.1)
    }

    /// Quotient of a division that must leave no remainder.
    pub fn exact_div(&self, g: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divmod(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }

    pub fn divides(&self, f: &Self) -> Result<bool, PolyError> {
        Ok(f.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &Self) -> Result<Self, PolyError> {
        self.check_field(g)?;
        gcd::gcd(self, g)
    }

    /// `(d, s, t)` with `s*self + t*g = d`, `d` monic.
    pub fn xgcd(&self, g: &Self) -> Result<(Self, Self, Self), PolyError> {
        self.check_field(g)?;
        gcd::xgcd(self, g)
    }

    /// `self^e mod b`, reducing after every multiplication.
    pub fn mod_pow(&self, e: u64, b: &Self) -> Result<Self, PolyError> {
        self.mod_pow_big(&BigUint::from(e), b)
    }

    pub fn mod_pow_big(&self, e: &BigUint, b: &Self) -> Result<Self, PolyError> {
        self.check_field(b)?;
        match b.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(PolyError::ModulusDegree),
        }
        let mut result = Self::one(self.field.clone());
        if e.is_zero() {
            return Ok(result);
        }
        let mut base = self.rem(b)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = (&result * &base).rem(b)?;
            }
            if i + 1 < bits {
                base = (&base * &base).rem(b)?;
            }
        }
        Ok(result)
    }

    /// Inverse modulo `b`, with degree below `deg b`.
    pub fn mod_inv(&self, b: &Self) -> Result<Self, PolyError> {
        self.check_field(b)?;
        if b.degree().unwrap_or(0) < 1 {
            return Err(PolyError::ModulusDegree);
        }
        let f = self.rem(b)?;
        let (d, s, _) = f.xgcd(b)?;
        if !d.is_one() {
            return Err(PolyError::NotInvertible { gcd: d.to_string() });
        }
        s.rem(b)
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Self::new(k.clone(), coeffs)
    }

    pub fn separability(&self) -> Separability {
        let d = self.derivative();
        if d.is_zero() {
            // only constants are separable among polynomials with f' = 0 in char 0
            return if self.degree() == Some(0) {
                Separability::Separable
            } else {
                Separability::ZeroDerivative
            };
        }
        match self.gcd(&d) {
            Ok(g) if g.is_one() => Separability::Separable,
            _ => Separability::RepeatedFactor,
        }
    }

    pub fn is_separable(&self) -> bool {
        self.separability() == Separability::Separable
    }

    pub fn format_in(&self, var: &str) -> String {
        parse::format_poly(self, var)
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

// The operator forms panic on mixed fields; use the `checked_*` methods
// where operands come from untrusted input.

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        self.checked_add(rhs).expect("polynomials over the same field")
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        self.checked_sub(rhs).expect("polynomials over the same field")
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        self.checked_mul(rhs).expect("polynomials over the same field")
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        &self - &rhs
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        &self * &rhs
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s, "x").unwrap()
    }

    fn fp(p: u64, s: &str) -> Poly<PrimeField> {
        parse_poly(&PrimeField::new(p).unwrap(), s, "x").unwrap()
    }

    fn example2_b() -> Poly<Rationals> {
        q("x^6+3*x^4+3*x^2-x+1")
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q("x+1") * &q("x-1"), q("x^2-1"));
    }

    #[test]
    fn cube_of_x2_plus_1() {
        let cube = q("x^2+1").pow(3);
        assert_eq!(cube, q("x^6+3*x^4+3*x^2+1"));
        assert_eq!(&cube - &example2_b(), q("x"));
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = q("3*x^4-x+7");
        let z = &f + &(-&f);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(degree_of_product(z.degree(), f.degree()), None);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = fp(5, "x+1");
        let b = fp(7, "x+1");
        assert!(matches!(a.checked_add(&b), Err(PolyError::Arith(ArithError::FieldMismatch(..)))));
        assert!(a.divmod(&b).is_err());
    }

    #[test]
    fn divmod_examples() {
        let (qt, r) = q("x^6+3*x^4+3*x^2+1").divmod(&example2_b()).unwrap();
        assert_eq!(qt, q("1"));
        assert_eq!(r, q("x"));

        let f = q("5*x^3-x/2+2");
        let (qt, r) = f.divmod(&q("1")).unwrap();
        assert_eq!((qt, r.is_zero()), (f.clone(), true));

        let (qt, r) = fp(7, "x^5").divmod(&fp(7, "x^2")).unwrap();
        assert_eq!(qt, fp(7, "x^3"));
        assert!(r.is_zero());

        assert_eq!(f.divmod(&Poly::zero(Rationals)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(q("x^2-1").gcd(&q("x-1")).unwrap(), q("x-1"));
        assert!(example2_b().gcd(&q("x")).unwrap().is_one());
        assert_eq!(
            Poly::zero(Rationals).gcd(&Poly::zero(Rationals)),
            Err(PolyError::ZeroGcd)
        );
        assert_eq!(q("0").gcd(&q("2*x+4")).unwrap(), q("x+2"));
    }

    #[test]
    fn xgcd_bezout_over_f5() {
        let f = fp(5, "x+1");
        let g = fp(5, "x^2+1");
        let (d, s, t) = f.xgcd(&g).unwrap();
        assert!(d.is_one());
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(q("x^2+1").mod_pow(3, &example2_b()).unwrap(), q("x"));
        assert!(q("x^3+x").mod_pow(0, &example2_b()).unwrap().is_one());
        assert_eq!(fp(3, "x").mod_pow(5, &fp(3, "x^2+1")).unwrap(), fp(3, "x"));
        assert_eq!(q("x").mod_pow(2, &q("3")), Err(PolyError::ModulusDegree));
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(fp(5, "2*x+2").mod_inv(&fp(5, "x^2+1")).unwrap(), fp(5, "x+4"));
        assert!(q("1").mod_inv(&example2_b()).unwrap().is_one());
        assert_eq!(
            q("x").mod_inv(&q("x^2")),
            Err(PolyError::NotInvertible { gcd: "x".into() })
        );
    }

    #[test]
    fn separability_examples() {
        assert!(q("x^2-1").is_separable());
        assert_eq!(q("x^2").separability(), Separability::RepeatedFactor);
        assert!(q("(x+1)^2-x^5").is_separable());
        assert_eq!(fp(5, "x^5+1").separability(), Separability::ZeroDerivative);
    }

    #[test]
    fn scale_variable() {
        let f = q("-x^5+x^2+2*x+1");
        let c = Rationals.from_i64(-1);
        assert_eq!(f.scale_variable(&c), q("x^5+x^2-2*x+1"));
    }
}
