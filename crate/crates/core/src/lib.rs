//! Superelliptic curves `y^k = F(x)` whose jacobians carry a rational point of
//! prescribed order, built by Hensel lifting a polynomial `k`-th root and
//! checked by independent verifiers.
//!
//! * [`arith`]: exact coefficient fields `Q`, `F_p`, `F_{p^d}` and `Q(t)`.
//! * [`poly`]: dense univariate polynomials over any of them.
//! * [`hensel`]: lifting `R^k = u (mod b)` to `R^k = u (mod b^l)`.
//! * [`forge`]: the norm-equation construction and its certificates.
//! * [`jacobian`]: Mumford divisors and Cantor's algorithm for `k = 2`.
//! * [`zeta`]: point counts and L-polynomials over finite fields.

pub mod arith;
pub mod poly;
pub mod hensel;
pub mod forge;
pub mod jacobian;
pub mod zeta;

pub mod decimal;
