use num_bigint::BigInt;
use num_traits::One;

use super::{reduce_rational, ArithError, Field, PrimeField, Rational, Rationals};
use crate::poly::Poly;

/// Element of `Q(t)`: `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly<Rationals>,
    den: Poly<Rationals>,
}

impl RationalFunction {
    /// Normalizes `num / den`.
    pub fn new(num: Poly<Rationals>, den: Poly<Rationals>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = num.gcd(&den).expect("den is nonzero");
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides num"),
                den.exact_div(&g).expect("gcd divides den"),
            )
        };
        let lead = den.leading().clone();
        if !lead.is_one() {
            let scale = lead.recip();
            num = num.scale(&scale);
            den = den.scale(&scale);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: Poly<Rationals>) -> Self {
        Self {
            num,
            den: Poly::one(Rationals),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(Rationals, c))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::x(Rationals))
    }

    pub fn numerator(&self) -> &Poly<Rationals> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Rationals> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(num: Poly<Rationals>, den: Poly<Rationals>) -> Self {
        Self::new(num, den).expect("denominator is a product of nonzero polynomials")
    }
}

/// The rational function field `Q(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalFunctionField;

impl Field for RationalFunctionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(Rationals))
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(Rationals))
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.den == b.den {
            return RationalFunction::normalized(&a.num + &b.num, a.den.clone());
        }
        RationalFunction::normalized(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.degree() == Some(0) && b.den.degree() == Some(0) {
            return RationalFunction::from_poly(&a.num * &b.num);
        }
        RationalFunction::normalized(&a.num * &b.num, &a.den * &b.den)
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction, ArithError> {
        RationalFunction::new(a.den.clone(), a.num.clone())
    }

    fn from_bigint(&self, n: &BigInt) -> RationalFunction {
        RationalFunction::constant(Rational::from_integer(n.clone()))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn tag(&self) -> String {
        "Q(t)".to_string()
    }

    fn format_elem(&self, a: &RationalFunction) -> String {
        let num = a.num.format_in("t");
        if a.den.is_one() {
            num
        } else {
            format!("({})/({})", num, a.den.format_in("t"))
        }
    }

    fn named_element(&self, name: &str) -> Option<RationalFunction> {
        (name == "t").then(RationalFunction::t)
    }
}

/// Evaluates `f` at `t = t0` in `F_p`.
pub fn specialize(f: &RationalFunction, field: &PrimeField, t0: u64) -> Result<u64, ArithError> {
    let p = field.modulus();
    let eval = |poly: &Poly<Rationals>| -> Result<u64, ArithError> {
        poly.coeffs().iter().rev().try_fold(0u64, |acc, c| {
            let c = reduce_rational(c, field).ok_or_else(|| {
                ArithError::BadSpecialization(format!("{p} divides the denominator of {c}"))
            })?;
            Ok(field.add(&field.mul(&acc, &(t0 % p)), &c))
        })
    };
    let den = eval(&f.den)?;
    if den == 0 {
        return Err(ArithError::BadSpecialization(format!(
            "denominator {} vanishes at t = {t0} mod {p}",
            f.den.format_in("t")
        )));
    }
    let num = eval(&f.num)?;
    field.div(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn qt(s: &str) -> RationalFunction {
        let poly = parse_poly(&RationalFunctionField, s, "x").unwrap();
        poly.coeffs().first().cloned().unwrap_or_else(|| RationalFunctionField.zero())
    }

    #[test]
    fn cancels_common_factor() {
        let f = qt("(t^2-1)/(t-1)");
        assert_eq!(f, qt("t+1"));
        assert!(f.denominator().is_one());
    }

    #[test]
    fn denominator_is_monic() {
        let f = qt("1/(2*t+4)");
        assert_eq!(RationalFunctionField.format_elem(&f), "(1/2)/(t+2)");
    }

    #[test]
    fn specialize_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(specialize(&qt("1/t"), &f5, 2), Ok(3));
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(
            specialize(&qt("(t+1)/(t-2)"), &f7, 2),
            Err(ArithError::BadSpecialization(_))
        ));
        let f11 = PrimeField::new(11).unwrap();
        assert_eq!(specialize(&qt("t^2"), &f11, 4), Ok(5));
    }

    #[test]
    fn specialize_rejects_p_in_coefficient_denominator() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(specialize(&qt("t/3"), &f3, 1).is_err());
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(
            RationalFunctionField.inv(&RationalFunctionField.zero()),
            Err(ArithError::DivisionByZero)
        );
    }
}
