use std::fmt::Write as _;
use std::fs;

use serde::{Deserialize, Serialize};

use torsion_forge_core::forge::{
    verify_certificate, AnyCertificate, CertificateJson, ChecksJson, TorsionCertificate,
};
use torsion_forge_core::jacobian::{verify_order, OrderReport};
use torsion_forge_core::zeta::{check_torsion_divisibility, ReduceModP, TorsionCheck};

use crate::args::VerifyArgs;
use crate::commands::pass_fail;
use crate::store::{parse_lines, StoreEntry};
use crate::{CliError, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityJson {
    pub valid: bool,
    pub checks: ChecksJson,
    pub genus: Option<u64>,
    pub stored_checks_match: bool,
    pub stored_genus_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: String,
    pub k: String,
    #[serde(rename = "N")]
    pub n: String,
    pub identity: Option<IdentityJson>,
    pub cantor: Option<OrderReport>,
    pub zeta: Option<TorsionCheck>,
    pub stored_status_matches: Option<bool>,
    pub passed: bool,
}

/// Which verifiers to run and their parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub identity: bool,
    pub cantor: bool,
    pub zeta: bool,
    pub primes: Vec<u64>,
    pub t0: Vec<u64>,
    pub bound: u64,
}

impl Selection {
    pub fn from_args(args: &VerifyArgs) -> Result<Self, CliError> {
        let none = !(args.identity || args.cantor || args.zeta);
        if args.zeta && args.primes.is_empty() {
            return Err(CliError::Usage("--zeta needs --primes".into()));
        }
        Ok(Self {
            identity: args.identity || none,
            cantor: args.cantor,
            zeta: args.zeta,
            primes: args.primes.clone(),
            t0: args.t0.clone(),
            bound: args.bound,
        })
    }
}

fn verify_typed<K: ReduceModP>(
    cert: &TorsionCertificate<K>,
    label: String,
    sel: &Selection,
) -> Result<Verdict, CliError> {
    let identity = sel.identity.then(|| {
        let report = verify_certificate(cert);
        IdentityJson {
            valid: report.valid(),
            checks: report.checks.into(),
            genus: report.genus,
            stored_checks_match: report.stored_checks_match,
            stored_genus_matches: report.stored_genus_matches,
        }
    });
    let cantor = if sel.cantor {
        if cert.k != 2 {
            return Err(CliError::Precondition(format!(
                "--cantor requires k = 2, certificate has k = {}",
                cert.k
            )));
        }
        Some(verify_order(cert))
    } else {
        None
    };
    let zeta = if sel.zeta {
        let t0 = (!sel.t0.is_empty()).then_some(sel.t0.as_slice());
        Some(
            check_torsion_divisibility(cert, &sel.primes, t0, sel.bound)
                .map_err(CliError::precondition)?,
        )
    } else {
        None
    };
    let passed = identity.as_ref().is_none_or(|r| r.valid)
        && cantor.as_ref().is_none_or(|r| r.passed())
        && zeta.as_ref().is_none_or(|r| r.passed());
    Ok(Verdict {
        label,
        k: cert.k.to_string(),
        n: cert.n.to_string(),
        identity,
        cantor,
        zeta,
        stored_status_matches: None,
        passed,
    })
}

pub fn verify_any(cert: &AnyCertificate, label: String, sel: &Selection) -> Result<Verdict, CliError> {
    match cert {
        AnyCertificate::Rational(c) => verify_typed(c, label, sel),
        AnyCertificate::FunctionField(c) => verify_typed(c, label, sel),
        AnyCertificate::PrimeField(c) => verify_typed(c, label, sel),
    }
}

fn verify_json(json: &CertificateJson, label: String, sel: &Selection) -> Result<Verdict, CliError> {
    let cert = AnyCertificate::from_json(json).map_err(CliError::precondition)?;
    verify_any(&cert, label, sel)
}

fn verify_entry(entry: &StoreEntry, label: String, sel: &Selection) -> Result<Verdict, CliError> {
    let mut verdict = verify_json(&entry.certificate, label, sel)?;
    let matches = entry.status_matches()?;
    verdict.stored_status_matches = Some(matches);
    verdict.passed &= matches;
    Ok(verdict)
}

/// Reads a single certificate (possibly pretty-printed) or a store with one
/// entry per line.
pub fn verify_text(text: &str, name: &str, sel: &Selection) -> Result<Vec<Verdict>, CliError> {
    if let Ok(value) = serde_json::from_str::<serde_json::Value>(text) {
        if value.get("verification_status").is_some() {
            let entry: StoreEntry = serde_json::from_value(value)
                .map_err(|e| CliError::Precondition(format!("{name}: {e}")))?;
            return Ok(vec![verify_entry(&entry, name.to_string(), sel)?]);
        }
        let json: CertificateJson = serde_json::from_value(value)
            .map_err(|e| CliError::Precondition(format!("{name}: {e}")))?;
        return Ok(vec![verify_json(&json, name.to_string(), sel)?]);
    }
    let entries = parse_lines(text)?;
    if entries.is_empty() {
        return Err(CliError::Precondition(format!("{name}: no certificates")));
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| verify_entry(e, format!("{name}:{}", i + 1), sel))
        .collect()
}

pub fn render_text(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let _ = writeln!(out, "{} (k={}, N={})", v.label, v.k, v.n);
        if let Some(r) = &v.identity {
            let detail = if r.valid {
                format!("genus {}", r.genus.map_or("unsupported".into(), |g| g.to_string()))
            } else {
                let mut failed: Vec<&str> = torsion_forge_core::forge::CheckFlags::from(r.checks).failed();
                if !r.stored_checks_match {
                    failed.push("stored_checks");
                }
                if !r.stored_genus_matches {
                    failed.push("stored_genus");
                }
                format!("failed: {}", failed.join(", "))
            };
            let _ = writeln!(out, "  identity: {} ({detail})", pass_fail(r.valid));
        }
        if let Some(r) = &v.cantor {
            let detail = match (r.order_divides, r.order_exact) {
                (true, Some(o)) => format!("order exactly {o}"),
                (true, None) => format!("order divides {}", v.n),
                (false, _) => r.note.clone().unwrap_or_else(|| format!("{}*D0 != O", v.n)),
            };
            let _ = writeln!(out, "  cantor: {} {detail}", pass_fail(r.passed()));
        }
        if let Some(z) = &v.zeta {
            let _ = writeln!(out, "  zeta: {}", pass_fail(z.passed()));
            for r in &z.reports {
                let at = r.t0.map(|t| format!(", t0={t}")).unwrap_or_default();
                let rel = if r.divisible_by_n { "divides" } else { "does not divide" };
                let _ = writeln!(
                    out,
                    "    q={}{at}: #Jac={} ({} {rel} it), L = [{}]",
                    r.q,
                    r.jacobian_order,
                    v.n,
                    r.l_coeffs
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            for s in &z.skipped {
                let at = s.t0.map(|t| format!(", t0={t}")).unwrap_or_default();
                let _ = writeln!(out, "    q={}{at}: skipped ({})", s.p, s.reason);
            }
        }
        if let Some(m) = v.stored_status_matches {
            let _ = writeln!(out, "  stored status: {}", pass_fail(m));
        }
    }
    out
}

pub fn run(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let sel = Selection::from_args(args)?;
    let name = args.file.display().to_string();
    let text = fs::read_to_string(&args.file).map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    let verdicts = verify_text(&text, &name, &sel)?;
    let passed = verdicts.iter().all(|v| v.passed);
    let out = if args.json {
        serde_json::to_string_pretty(&verdicts).expect("verdicts serialize") + "\n"
    } else {
        render_text(&verdicts)
    };
    Ok(Outcome::new(out, passed))
}
