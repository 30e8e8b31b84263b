//! Lifting a polynomial `k`-th root of `u` modulo `b` to a root modulo `b^l`.
//!
//! Each step is a linear Newton correction: with `R` a root modulo
//! `b^(l-1)`, put `lambda1 = (R^k - u) / b^(l-1)` (exact), solve
//! `lambda2 * k * R^(k-1) = lambda1 (mod b)` with `deg lambda2 < deg b`, and
//! return `R - lambda2 * b^(l-1)`, a root modulo `b^l`.

use thiserror::Error;

use crate::arith::{coprime_to_characteristic, Field, PrimeField};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("root degree k must be at least 2 (got {0})")]
    DegreeTooSmall(u32),
    #[error("k = {k} is divisible by the characteristic {characteristic}")]
    CharacteristicDividesK { k: u32, characteristic: u64 },
    #[error("modulus b must have degree at least 1")]
    ModulusDegree,
    #[error("R1 and b are not coprime: gcd = {gcd}")]
    RootNotCoprime { gcd: String },
    #[error("R1^k is not congruent to u modulo b")]
    NotARoot,
    #[error("target level must be at least 1")]
    LevelZero,
    #[error("level {level}: R^k - u is not divisible by b^{below}", below = .level - 1)]
    InexactLambda { level: u32 },
    #[error("level {level}: k*R^(k-1) is not invertible modulo b")]
    DerivativeNotInvertible { level: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A lifting problem `(k, b, u, R1, l)` whose hypotheses have been checked.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftProblem<K: Field> {
    k: u32,
    b: Poly<K>,
    u: Poly<K>,
    r1: Poly<K>,
    level: u32,
}

impl<K: Field> LiftProblem<K> {
    pub fn new(k: u32, b: Poly<K>, u: Poly<K>, r1: Poly<K>, level: u32) -> Result<Self, LiftError> {
        b.field().ensure_same(u.field()).map_err(PolyError::from)?;
        b.field().ensure_same(r1.field()).map_err(PolyError::from)?;
        if k < 2 {
            return Err(LiftError::DegreeTooSmall(k));
        }
        if !coprime_to_characteristic(b.field(), k as u64) {
            return Err(LiftError::CharacteristicDividesK {
                k,
                characteristic: b.field().characteristic(),
            });
        }
        if b.degree().unwrap_or(0) < 1 {
            return Err(LiftError::ModulusDegree);
        }
        if level < 1 {
            return Err(LiftError::LevelZero);
        }
        let g = r1.gcd(&b)?;
        if !g.is_one() {
            return Err(LiftError::RootNotCoprime { gcd: g.to_string() });
        }
        if r1.mod_pow(k as u64, &b)? != u.rem(&b)? {
            return Err(LiftError::NotARoot);
        }
        Ok(Self { k, b, u, r1, level })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &Poly<K> {
        &self.b
    }

    pub fn target(&self) -> &Poly<K> {
        &self.u
    }

    pub fn initial_root(&self) -> &Poly<K> {
        &self.r1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn with_level(&self, level: u32) -> Result<Self, LiftError> {
        if level < 1 {
            return Err(LiftError::LevelZero);
        }
        Ok(Self {
            level,
            ..self.clone()
        })
    }
}

/// One correction step, kept for `--explain` output.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftStep<K: Field> {
    pub level: u32,
    pub lambda1: Poly<K>,
    pub lambda2: Poly<K>,
    pub root: Poly<K>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftResult<K: Field> {
    pub root: Poly<K>,
    pub level: u32,
    pub trace: Option<Vec<LiftStep<K>>>,
}

fn correction<K: Field>(
    r_prev: &Poly<K>,
    level: u32,
    problem: &LiftProblem<K>,
) -> Result<LiftStep<K>, LiftError> {
    let field = problem.b.field();
    let b = &problem.b;
    let b_prev = b.pow((level - 1) as u64);
    let (lambda1, rem) = (&r_prev.pow(problem.k as u64) - &problem.u).divmod(&b_prev)?;
    if !rem.is_zero() {
        return Err(LiftError::InexactLambda { level });
    }
    let derivative = r_prev
        .mod_pow((problem.k - 1) as u64, b)?
        .scale(&field.from_i64(problem.k as i64));
    let inverse = derivative
        .mod_inv(b)
        .map_err(|_| LiftError::DerivativeNotInvertible { level })?;
    let lambda2 = (&lambda1 * &inverse).rem(b)?;
    let root = r_prev - &(&lambda2 * &b_prev);
    Ok(LiftStep {
        level,
        lambda1,
        lambda2,
        root,
    })
}

/// Lifts a root modulo `b^(level-1)` to a root modulo `b^level` (`level >= 2`).
pub fn lift_step<K: Field>(
    r_prev: &Poly<K>,
    level: u32,
    problem: &LiftProblem<K>,
) -> Result<Poly<K>, LiftError> {
    if level < 2 {
        return Err(LiftError::LevelZero);
    }
    Ok(correction(r_prev, level, problem)?.root)
}

fn run<K: Field>(problem: &LiftProblem<K>, keep_trace: bool) -> Result<LiftResult<K>, LiftError> {
    let mut root = problem.r1.clone();
    let mut trace = keep_trace.then(Vec::new);
    for level in 2..=problem.level {
        let step = correction(&root, level, problem)?;
        root = step.root.clone();
        if let Some(trace) = trace.as_mut() {
            trace.push(step);
        }
    }
    Ok(LiftResult {
        root,
        level: problem.level,
        trace,
    })
}

pub fn lift<K: Field>(problem: &LiftProblem<K>) -> Result<LiftResult<K>, LiftError> {
    run(problem, false)
}

/// Like [`lift`], recording `lambda1`, `lambda2` and the root at every level.
pub fn lift_with_trace<K: Field>(problem: &LiftProblem<K>) -> Result<LiftResult<K>, LiftError> {
    run(problem, true)
}

/// Checks `R^k = u (mod b^l)` and `R = R1 (mod b)` directly.
pub fn verify_lift<K: Field>(result: &LiftResult<K>, problem: &LiftProblem<K>) -> bool {
    let check = || -> Result<bool, PolyError> {
        let b = &problem.b;
        let b_l = b.pow(result.level as u64);
        let lhs = result.root.mod_pow(problem.k as u64, &b_l)?;
        Ok(lhs == problem.u.rem(&b_l)? && result.root.rem(b)? == problem.r1.rem(b)?)
    };
    check().unwrap_or(false)
}

/// Exhaustive search for `R` with `deg R < deg b` and `R^k = u (mod b)` over
/// a small prime field. Intended for building test fixtures.
pub fn find_root_mod_b(
    k: u32,
    b: &Poly<PrimeField>,
    u: &Poly<PrimeField>,
) -> Option<Poly<PrimeField>> {
    let field = *b.field();
    let p = field.modulus();
    let d = b.degree()?;
    let target = u.rem(b).ok()?;
    let total = p.checked_pow(d as u32)?;
    (0..total).find_map(|mut n| {
        let coeffs = (0..d)
            .map(|_| {
                let c = n % p;
                n /= p;
                c
            })
            .collect();
        let candidate = Poly::new(field, coeffs);
        (candidate.mod_pow(k as u64, b).ok()? == target).then_some(candidate)
    })
}
