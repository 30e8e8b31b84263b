use crate::arith::{Field, PrimeField, Rational};

use super::integer::{clear_denominators, IntPoly};
use super::{Poly, PolyError};

/// Word-size primes for the modular coprimality shortcut over `Q`.
const COPRIMALITY_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 1_000_000_007];

pub(super) fn gcd<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>, PolyError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(PolyError::ZeroGcd),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    let field = f.field();
    if let Some(coeffs) = field.poly_gcd_hook(f.coeffs(), g.coeffs()) {
        return Ok(Poly::new(field.clone(), coeffs).monic());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

pub(super) fn xgcd<K: Field>(
    f: &Poly<K>,
    g: &Poly<K>,
) -> Result<(Poly<K>, Poly<K>, Poly<K>), PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::ZeroGcd);
    }
    let field = f.field().clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(field.clone()), Poly::zero(field.clone()));
    let (mut t0, mut t1) = (Poly::zero(field.clone()), Poly::one(field.clone()));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let c = field.inv(r0.leading())?;
    Ok((r0.scale(&c), s0.scale(&c), t0.scale(&c)))
}

/// Monic gcd over `Q` of two nonzero coefficient vectors.
///
/// Coprime inputs are detected by reducing the primitive integer parts modulo
/// a word-size prime that keeps both degrees; a gcd of 1 there forces a gcd
/// of 1 over `Q`. Everything else goes through a primitive remainder
/// sequence over `Z`.
pub(crate) fn rational_gcd(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    let one = vec![Rational::from_integer(1.into())];
    let a = clear_denominators(f).primitive();
    let b = clear_denominators(g).primitive();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return one;
    }
    if coprime_modulo_some_prime(&a, &b) {
        return one;
    }
    primitive_prs(a, b).to_rational()
}

fn coprime_modulo_some_prime(a: &IntPoly, b: &IntPoly) -> bool {
    COPRIMALITY_PRIMES.iter().any(|&p| {
        let field = PrimeField::new(p).expect("table holds primes");
        match (a.reduce(&field), b.reduce(&field)) {
            (Some(ar), Some(br)) => gcd(&ar, &br).map(|d| d.is_one()).unwrap_or(false),
            _ => false,
        }
    })
}

fn primitive_prs(a: IntPoly, b: IntPoly) -> IntPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    loop {
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive();
        }
        if r.degree() == Some(0) {
            return IntPoly::new(vec![1.into()]);
        }
        a = b;
        b = r.primitive();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::poly::parse_poly;

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s, "x").unwrap()
    }

    fn euclid(f: &Poly<Rationals>, g: &Poly<Rationals>) -> Poly<Rationals> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    #[test]
    fn prs_agrees_with_field_euclid() {
        let cases = [
            ("(x^2-2)*(3*x+1/5)^2*(x-7)", "(x^2-2)*(x+1)*(3*x+1/5)"),
            ("x^8-1", "x^12-1"),
            ("(2*x^3-x+4)*(x^4+x^3-9)", "(2*x^3-x+4)*(5*x^2-x/3)"),
            ("x^5+x+1", "x^3-x"),
        ];
        for (f, g) in cases {
            let (f, g) = (q(f), q(g));
            assert_eq!(f.gcd(&g).unwrap(), euclid(&f, &g), "{f} / {g}");
        }
    }

    #[test]
    fn common_factor_invisible_mod_small_primes() {
        // gcd is x - 1/3, the modular shortcut must not claim coprimality
        let f = q("(3*x-1)*(x^2+1)");
        let g = q("(3*x-1)*(x+5)");
        assert_eq!(f.gcd(&g).unwrap(), q("x-1/3"));
    }
}
