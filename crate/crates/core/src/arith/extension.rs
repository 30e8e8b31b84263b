use num_bigint::BigInt;
use num_integer::Integer;

use super::{ArithError, Field, PrimeField};
use crate::poly::Poly;

/// `F_{p^d} = F_p[z]/(m(z))` for a monic irreducible `m` of degree `d`.
///
/// Elements are coefficient vectors of length exactly `d`, lowest degree
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    /// monic, `d + 1` coefficients
    modulus: Vec<u64>,
}

impl ExtensionField {
    /// Builds the field after checking that `modulus` is monic and irreducible.
    pub fn new(base: PrimeField, modulus: &Poly<PrimeField>) -> Result<Self, ArithError> {
        base.ensure_same(modulus.field())?;
        if !modulus.is_monic() || !is_irreducible(modulus) {
            return Err(ArithError::Reducible(modulus.to_string(), base.modulus()));
        }
        Ok(Self {
            base,
            modulus: modulus.coeffs().to_vec(),
        })
    }

    /// `F_{p^d}` with the first irreducible modulus in the fixed search order.
    pub fn with_degree(base: PrimeField, d: usize) -> Self {
        let modulus = find_irreducible(base, d);
        Self {
            base,
            modulus: modulus.coeffs().to_vec(),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_poly(&self) -> Poly<PrimeField> {
        Poly::new(self.base, self.modulus.clone())
    }

    /// Number of elements, `p^d`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.base.modulus().checked_pow(self.degree() as u32)
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a;
        v
    }

    /// Bijection `[0, p^d) -> F_{p^d}` through base-`p` digits.
    pub fn element(&self, mut index: u64) -> Vec<u64> {
        let p = self.base.modulus();
        (0..self.degree())
            .map(|_| {
                let digit = index % p;
                index /= p;
                digit
            })
            .collect()
    }

    /// Inverse of [`ExtensionField::element`].
    pub fn index_of(&self, a: &[u64]) -> u64 {
        let p = self.base.modulus();
        a.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn reduce(&self, mut product: Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let k = &self.base;
        while product.len() > d {
            let lead = product.pop().expect("non-empty");
            if lead == 0 {
                continue;
            }
            let shift = product.len() - d;
            for (i, m) in self.modulus[..d].iter().enumerate() {
                let t = k.mul(&lead, m);
                product[shift + i] = k.sub(&product[shift + i], &t);
            }
        }
        product.resize(d, 0);
        product
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut product = vec![0u64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                product[i + j] = self.base.add(&product[i + j], &t);
            }
        }
        self.reduce(product)
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        let elem = Poly::new(self.base, a.clone());
        let inverse = elem
            .mod_inv(&self.modulus_poly())
            .map_err(|_| ArithError::DivisionByZero)?;
        let mut coeffs = inverse.coeffs().to_vec();
        coeffs.resize(self.degree(), 0);
        Ok(coeffs)
    }

    fn from_bigint(&self, n: &BigInt) -> Vec<u64> {
        self.embed(self.base.from_bigint(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    fn tag(&self) -> String {
        format!(
            "Fq:{}^{}:{}",
            self.base.modulus(),
            self.degree(),
            self.modulus_poly().format_in("z")
        )
    }

    fn format_elem(&self, a: &Vec<u64>) -> String {
        Poly::new(self.base, a.clone()).format_in("z")
    }

    fn named_element(&self, name: &str) -> Option<Vec<u64>> {
        (name == "z").then(|| {
            if self.degree() == 1 {
                vec![self.base.neg(&self.modulus[0])]
            } else {
                let mut v = self.zero();
                v[1] = 1;
                v
            }
        })
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// `x^(p^times) mod m`, by repeated `p`-th powering.
fn frobenius_power(m: &Poly<PrimeField>, times: usize) -> Poly<PrimeField> {
    let p = m.field().modulus();
    let mut h = Poly::x(*m.field());
    for _ in 0..times {
        h = h.mod_pow(p, m).expect("modulus has positive degree");
    }
    h
}

/// Rabin's test: `x^(p^d) = x mod m` and `gcd(x^(p^(d/l)) - x, m) = 1` for
/// each prime `l | d`.
pub(crate) fn is_irreducible(m: &Poly<PrimeField>) -> bool {
    let d = match m.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let x = Poly::x(*m.field());
    let x_mod = x.rem(m).expect("nonzero modulus");
    if frobenius_power(m, d) != x_mod {
        return false;
    }
    prime_divisors(d).into_iter().all(|l| {
        let h = &frobenius_power(m, d / l) - &x;
        h.gcd(m).map(|g| g.degree() == Some(0)).unwrap_or(false)
    })
}

/// First monic irreducible of degree `d` over `F_p`, scanning the lower
/// coefficients as base-`p` digits of 0, 1, 2, ...
pub fn find_irreducible(base: PrimeField, d: usize) -> Poly<PrimeField> {
    assert!(d >= 1, "degree must be positive");
    let p = base.modulus();
    let mut counter: u128 = 0;
    loop {
        let mut n = counter;
        let mut coeffs: Vec<u64> = (0..d)
            .map(|_| {
                let (q, r) = n.div_rem(&(p as u128));
                n = q;
                r as u64
            })
            .collect();
        coeffs.push(1);
        let candidate = Poly::new(base, coeffs);
        if is_irreducible(&candidate) {
            return candidate;
        }
        counter += 1;
    }
}
