use std::fmt;
use std::str::FromStr;

use torsion_forge_core::arith::{Field, PrimeField};
use torsion_forge_core::poly::{parse_poly, Poly};

use crate::CliError;

/// Coefficient field named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Qt,
    Fp(PrimeField),
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Q" => Ok(Self::Q),
            "Qt" | "Q(t)" => Ok(Self::Qt),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .ok_or_else(|| format!("unknown field {s:?}; expected Q, Qt or Fp:<p>"))?;
                let p: u64 = p.parse().map_err(|_| format!("bad prime in {s:?}"))?;
                PrimeField::new(p).map(Self::Fp).map_err(|e| e.to_string())
            }
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Q => f.write_str("Q"),
            Self::Qt => f.write_str("Qt"),
            Self::Fp(k) => write!(f, "Fp:{}", k.modulus()),
        }
    }
}

/// Runs `$body` with `$k` bound to the concrete field.
macro_rules! with_field {
    ($choice:expr, $k:ident => $body:expr) => {
        match $choice {
            $crate::fields::FieldChoice::Q => {
                let $k = torsion_forge_core::arith::Rationals;
                $body
            }
            $crate::fields::FieldChoice::Qt => {
                let $k = torsion_forge_core::arith::RationalFunctionField;
                $body
            }
            $crate::fields::FieldChoice::Fp($k) => $body,
        }
    };
}
pub(crate) use with_field;

pub fn poly<K: Field>(field: &K, name: &str, text: &str) -> Result<Poly<K>, CliError> {
    parse_poly(field, text, "x").map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

pub fn constant<K: Field>(field: &K, name: &str, text: &str) -> Result<K::Elem, CliError> {
    let p = poly(field, name, text)?;
    if p.degree().unwrap_or(0) != 0 {
        return Err(CliError::Usage(format!("--{name} must be a constant")));
    }
    Ok(p.coeff(0))
}
