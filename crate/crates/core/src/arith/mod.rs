//! Exact coefficient domains.
//!
//! Every algorithm in the crate is generic over [`Field`]. A field value is a
//! *context* (the modulus of `F_p`, the defining polynomial of `F_{p^d}`, or
//! nothing at all for `Q` and `Q(t)`), and elements are plain data that only
//! make sense together with their context. Two contexts compare equal exactly
//! when they describe the same field, which is how polynomial code detects
//! mixed-field operands.

mod extension;
mod function_field;
mod prime;
mod rational;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

pub use extension::{find_irreducible, ExtensionField};
pub use function_field::{specialize, RationalFunction, RationalFunctionField};
pub use prime::{is_prime, PrimeField};
pub(crate) use rational::common_denominator;
pub use rational::{reduce_rational, Rational, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range")]
    ModulusOutOfRange(u64),
    #[error("polynomial {0} is not irreducible over F_{1}")]
    Reducible(String, u64),
    #[error("bad specialization: {0}")]
    BadSpecialization(String),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// A field together with the operations on its elements.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;

    /// Image of an integer under the canonical map `Z -> K`.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    /// Short identifier used in serialized data: `Q`, `Q(t)`, `Fp:<p>`, ...
    fn tag(&self) -> String;

    /// Text form of an element. The output parses back through
    /// [`crate::poly::parse_poly`] as a constant polynomial.
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Named constants recognized by the polynomial parser (e.g. `t` in `Q(t)`).
    fn named_element(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    /// Field-specific gcd of two nonzero coefficient vectors (low degree
    /// first). Returning `None` falls back to the generic Euclidean algorithm.
    fn poly_gcd_hook(
        &self,
        _f: &[Self::Elem],
        _g: &[Self::Elem],
    ) -> Option<Vec<Self::Elem>> {
        None
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow_big(a, &BigUint::from(e))
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut result = self.one();
        if e.is_zero() {
            return result;
        }
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Checks that two contexts agree, for binary operations on owned data.
    fn ensure_same(&self, other: &Self) -> Result<(), ArithError> {
        if self == other {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(self.tag(), other.tag()))
        }
    }
}

/// `gcd(k, char K) = 1`, with the usual reading that every `k` is coprime to 0.
pub fn coprime_to_characteristic<K: Field>(field: &K, k: u64) -> bool {
    let p = field.characteristic();
    p == 0 || !k.is_multiple_of(p)
}

/// An element bundled with its field, for callers that mix values from
/// several fields and want mismatches reported instead of silently
/// misinterpreted.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldElement<K: Field> {
    field: K,
    value: K::Elem,
}

impl<K: Field> FieldElement<K> {
    pub fn new(field: K, value: K::Elem) -> Self {
        Self { field, value }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn value(&self) -> &K::Elem {
        &self.value
    }

    pub fn into_value(self) -> K::Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn binary(
        &self,
        other: &Self,
        op: impl FnOnce(&K, &K::Elem, &K::Elem) -> Result<K::Elem, ArithError>,
    ) -> Result<Self, ArithError> {
        self.field.ensure_same(&other.field)?;
        let value = op(&self.field, &self.value, &other.value)?;
        Ok(Self::new(self.field.clone(), value))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.binary(other, |k, a, b| Ok(k.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.binary(other, |k, a, b| Ok(k.sub(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.binary(other, |k, a, b| Ok(k.mul(a, b)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        self.binary(other, |k, a, b| k.div(a, b))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.field.clone(), self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Ok(Self::new(self.field.clone(), self.field.inv(&self.value)?))
    }
}

impl<K: Field> fmt::Display for FieldElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}
