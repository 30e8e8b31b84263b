use std::fs;

use torsion_forge_core::arith::{Field, Rationals};
use torsion_forge_core::forge::{
    construct, family_example1, family_example2, seed_example3, AnyCertificate,
    TorsionCertificate,
};

use crate::args::{ConstructArgs, ConstructFamily};
use crate::fields::{constant, poly, with_field};
use crate::{CliError, Outcome};

fn required<T: Clone>(value: &Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required {context}")))
}

fn explicit<K: Field>(field: K, args: &ConstructArgs) -> Result<AnyCertificate, CliError>
where
    AnyCertificate: From<TorsionCertificate<K>>,
{
    let ctx = "without --family";
    let k = required(&args.k, "k", ctx)?;
    let n = required(&args.n, "N", ctx)?;
    let b = poly(&field, "b", &required(&args.b, "b", ctx)?)?;
    let u = poly(&field, "u", &required(&args.u, "u", ctx)?)?;
    let r1 = poly(&field, "R1", &required(&args.r1, "R1", ctx)?)?;
    let epsilon = constant(&field, "epsilon", &args.epsilon)?;
    let cert = construct(k, n, &b, &u, &r1, &epsilon).map_err(CliError::precondition)?;
    Ok(cert.into())
}

/// The certificate requested by `args`.
pub fn build(args: &ConstructArgs) -> Result<AnyCertificate, CliError> {
    match args.family {
        None => with_field!(args.field, k => explicit(k, args)),
        Some(ConstructFamily::Example1) => {
            let ctx = "for --family example1";
            let k = required(&args.k, "k", ctx)?;
            let a = poly(&Rationals, "a", &required(&args.a, "a", ctx)?)?;
            let p = required(&args.p, "p", ctx)?;
            family_example1(k, &a, p)
                .map(Into::into)
                .map_err(CliError::precondition)
        }
        Some(ConstructFamily::Example2) => {
            let p = required(&args.p, "p", "for --family example2")?;
            family_example2(p)
                .map(Into::into)
                .map_err(CliError::precondition)
        }
        Some(ConstructFamily::Example3) => seed_example3()
            .construct()
            .map(Into::into)
            .map_err(CliError::precondition),
    }
}

/// `genus=34 order|53 valid`, or the failed checks.
pub fn summary(cert: &AnyCertificate) -> (String, bool) {
    let report = cert.verify();
    let genus = cert
        .genus()
        .map_or_else(|| "unsupported".to_string(), |g| g.to_string());
    let verdict = if report.valid() {
        "valid".to_string()
    } else {
        let mut failed = report.checks.failed();
        if !report.stored_checks_match {
            failed.push("stored_checks");
        }
        if !report.stored_genus_matches {
            failed.push("stored_genus");
        }
        format!("invalid (failed: {})", failed.join(", "))
    };
    (
        format!("genus={genus} order|{} {verdict}", cert.n()),
        report.valid(),
    )
}

pub fn run(args: &ConstructArgs) -> Result<Outcome, CliError> {
    let cert = build(args)?;
    let json = serde_json::to_string_pretty(&cert.to_json()).expect("certificate serializes") + "\n";
    let (line, valid) = summary(&cert);
    match &args.out {
        Some(path) => {
            fs::write(path, json).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Outcome::new(line + "\n", valid))
        }
        None => Ok(Outcome::new(json, valid).with_stderr(line + "\n")),
    }
}
