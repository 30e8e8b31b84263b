//! Serialized certificate form. Polynomials and field elements are strings in
//! the polynomial grammar, so coefficients of any size survive as decimal text.

use serde::{Deserialize, Serialize};

use crate::arith::{Field, PrimeField, RationalFunctionField, Rationals};
use crate::poly::{parse_poly, Poly};

use super::{verify_certificate, CheckFlags, ForgeError, TorsionCertificate, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub identity: bool,
    pub separable: bool,
    pub coprime_ab: bool,
    pub coprime_bu: bool,
    pub deg_u_bound: bool,
    #[serde(rename = "gcd_k_degF")]
    pub gcd_k_deg_f: bool,
    #[serde(rename = "degF_ge_5")]
    pub deg_f_ge_5: bool,
}

impl From<CheckFlags> for ChecksJson {
    fn from(c: CheckFlags) -> Self {
        Self {
            identity: c.identity,
            separable: c.separable,
            coprime_ab: c.coprime_ab,
            coprime_bu: c.coprime_bu,
            deg_u_bound: c.deg_u_bound,
            gcd_k_deg_f: c.gcd_k_deg_f,
            deg_f_ge_5: c.deg_f_ge_5,
        }
    }
}

impl From<ChecksJson> for CheckFlags {
    fn from(c: ChecksJson) -> Self {
        Self {
            identity: c.identity,
            separable: c.separable,
            coprime_ab: c.coprime_ab,
            coprime_bu: c.coprime_bu,
            deg_u_bound: c.deg_u_bound,
            gcd_k_deg_f: c.gcd_k_deg_f,
            deg_f_ge_5: c.deg_f_ge_5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub field: String,
    /// decimal string
    pub k: String,
    /// decimal string
    #[serde(rename = "N")]
    pub n: String,
    pub epsilon: String,
    pub b: String,
    pub u: String,
    #[serde(rename = "R1")]
    pub r1: String,
    #[serde(rename = "Rk")]
    pub rk: String,
    pub a: String,
    #[serde(rename = "F")]
    pub f: String,
    pub genus: Option<u64>,
    pub checks: ChecksJson,
}

impl<K: Field> TorsionCertificate<K> {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema_version: SCHEMA_VERSION,
            field: self.field().tag(),
            k: self.k.to_string(),
            n: self.n.to_string(),
            epsilon: self.field().format_elem(&self.epsilon),
            b: self.b.to_string(),
            u: self.u.to_string(),
            r1: self.r1.to_string(),
            rk: self.rk.to_string(),
            a: self.a.to_string(),
            f: self.f.to_string(),
            genus: self.genus,
            checks: self.checks.into(),
        }
    }

    pub fn from_json(field: &K, json: &CertificateJson) -> Result<Self, ForgeError> {
        if json.schema_version != SCHEMA_VERSION {
            return Err(ForgeError::Format(format!(
                "unsupported schema_version {}",
                json.schema_version
            )));
        }
        if json.field != field.tag() {
            return Err(ForgeError::Format(format!(
                "field tag {:?} does not match {:?}",
                json.field,
                field.tag()
            )));
        }
        let poly = |name: &str, text: &str| -> Result<Poly<K>, ForgeError> {
            parse_poly(field, text, "x").map_err(|e| ForgeError::Format(format!("{name}: {e}")))
        };
        let epsilon = poly("epsilon", &json.epsilon)?;
        if epsilon.degree().unwrap_or(0) != 0 {
            return Err(ForgeError::Format("epsilon must be a constant".into()));
        }
        let k = json
            .k
            .parse()
            .map_err(|_| ForgeError::Format(format!("k: {:?} is not a decimal integer", json.k)))?;
        let n = json
            .n
            .parse()
            .map_err(|_| ForgeError::Format(format!("N: {:?} is not a decimal integer", json.n)))?;
        Ok(Self {
            k,
            n,
            b: poly("b", &json.b)?,
            u: poly("u", &json.u)?,
            r1: poly("R1", &json.r1)?,
            rk: poly("Rk", &json.rk)?,
            a: poly("a", &json.a)?,
            f: poly("F", &json.f)?,
            epsilon: epsilon.coeff(0),
            genus: json.genus,
            checks: json.checks.into(),
        })
    }
}

/// A certificate over whichever field its tag names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyCertificate {
    Rational(TorsionCertificate<Rationals>),
    FunctionField(TorsionCertificate<RationalFunctionField>),
    PrimeField(TorsionCertificate<PrimeField>),
}

macro_rules! dispatch {
    ($self:expr, $cert:ident => $body:expr) => {
        match $self {
            AnyCertificate::Rational($cert) => $body,
            AnyCertificate::FunctionField($cert) => $body,
            AnyCertificate::PrimeField($cert) => $body,
        }
    };
}

impl AnyCertificate {
    pub fn from_json(json: &CertificateJson) -> Result<Self, ForgeError> {
        match json.field.as_str() {
            "Q" => Ok(Self::Rational(TorsionCertificate::from_json(&Rationals, json)?)),
            "Q(t)" => Ok(Self::FunctionField(TorsionCertificate::from_json(
                &RationalFunctionField,
                json,
            )?)),
            tag => {
                let p = tag
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| ForgeError::Format(format!("unknown field tag {tag:?}")))?;
                let field = PrimeField::new(p).map_err(|e| ForgeError::Format(e.to_string()))?;
                Ok(Self::PrimeField(TorsionCertificate::from_json(&field, json)?))
            }
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        dispatch!(self, c => c.to_json())
    }

    pub fn verify(&self) -> VerificationReport {
        dispatch!(self, c => verify_certificate(c))
    }

    pub fn k(&self) -> u32 {
        dispatch!(self, c => c.k)
    }

    pub fn n(&self) -> u64 {
        dispatch!(self, c => c.n)
    }

    pub fn genus(&self) -> Option<u64> {
        dispatch!(self, c => c.genus)
    }

    pub fn checks(&self) -> CheckFlags {
        dispatch!(self, c => c.checks)
    }

    pub fn field_tag(&self) -> String {
        dispatch!(self, c => c.field().tag())
    }
}

impl From<TorsionCertificate<Rationals>> for AnyCertificate {
    fn from(c: TorsionCertificate<Rationals>) -> Self {
        Self::Rational(c)
    }
}

impl From<TorsionCertificate<RationalFunctionField>> for AnyCertificate {
    fn from(c: TorsionCertificate<RationalFunctionField>) -> Self {
        Self::FunctionField(c)
    }
}

impl From<TorsionCertificate<PrimeField>> for AnyCertificate {
    fn from(c: TorsionCertificate<PrimeField>) -> Self {
        Self::PrimeField(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::{family_example1, seed_example3};

    #[test]
    fn json_round_trip_over_q() {
        let x = Poly::x(Rationals);
        let cert = family_example1(2, &(&x + &Poly::one(Rationals)), 5).unwrap();
        let json = cert.to_json();
        assert_eq!(json.field, "Q");
        assert_eq!(json.f, "-x^5+x^2+2*x+1");
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"gcd_k_degF\":true"));
        assert!(text.contains("\"N\":\"5\""));
        assert!(text.contains("\"genus\":2"));
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AnyCertificate::from_json(&back).unwrap(), AnyCertificate::Rational(cert));
    }

    #[test]
    fn json_round_trip_over_function_field() {
        let cert = seed_example3().construct().unwrap();
        let any = AnyCertificate::from(cert);
        let back = AnyCertificate::from_json(&any.to_json()).unwrap();
        assert_eq!(back, any);
        assert!(back.verify().valid());
    }

    #[test]
    fn rejects_unknown_tags_and_versions() {
        let x = Poly::x(Rationals);
        let mut json = family_example1(2, &(&x + &Poly::one(Rationals)), 5)
            .unwrap()
            .to_json();
        json.field = "Fp:9".into();
        assert!(AnyCertificate::from_json(&json).is_err());
        json.field = "R".into();
        assert!(AnyCertificate::from_json(&json).is_err());
        json.field = "Q".into();
        json.schema_version = 7;
        assert!(AnyCertificate::from_json(&json).is_err());
    }
}
