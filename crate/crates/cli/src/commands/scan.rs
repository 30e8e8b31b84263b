use std::fmt::Write as _;

use rayon::prelude::*;

use torsion_forge_core::arith::is_prime;
use torsion_forge_core::forge::{family_example2, verify_certificate};

use crate::args::{ScanArgs, ScanFamily};
use crate::store::{created_at, CurveStore, StoreEntry};
use crate::{CliError, Outcome};

/// Result of one prime of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub p: u64,
    pub degree: Option<usize>,
    pub genus: Option<u64>,
    pub separable: bool,
    pub valid: bool,
    pub entry: Option<StoreEntry>,
    pub error: Option<String>,
}

fn scan_prime(family: ScanFamily, p: u64, stamp: &str) -> ScanRow {
    match family {
        ScanFamily::Example2 => match family_example2(p) {
            Ok(cert) => {
                let report = verify_certificate(&cert);
                ScanRow {
                    p,
                    degree: cert.f.degree(),
                    genus: cert.genus,
                    separable: report.checks.separable,
                    valid: report.valid(),
                    entry: Some(StoreEntry::new(cert.to_json(), "example2", report.valid(), stamp)),
                    error: None,
                }
            }
            Err(e) => ScanRow {
                p,
                degree: None,
                genus: None,
                separable: false,
                valid: false,
                entry: None,
                error: Some(e.to_string()),
            },
        },
    }
}

/// Rows for every prime in `[pmin, pmax]`, ordered by `p`.
pub fn scan(
    family: ScanFamily,
    pmin: u64,
    pmax: u64,
    jobs: usize,
    stamp: &str,
) -> Result<Vec<ScanRow>, CliError> {
    let primes: Vec<u64> = (pmin..=pmax).filter(|&p| is_prime(p)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(CliError::precondition)?;
    Ok(pool.install(|| {
        primes
            .par_iter()
            .map(|&p| scan_prime(family, p, stamp))
            .collect()
    }))
}

pub fn render(rows: &[ScanRow], pmin: u64, pmax: u64) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        let _ = writeln!(out, "no primes in [{pmin}, {pmax}]");
        return out;
    }
    let _ = writeln!(out, "{:>6} {:>6} {:>6} {:>10} {:>12}", "p", "deg F", "genus", "separable", "certificate");
    for r in rows {
        let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>10} {:>12}",
            r.p,
            show(r.degree.map(|d| d.to_string())),
            show(r.genus.map(|g| g.to_string())),
            if r.separable { "yes" } else { "no" },
            if r.valid { "valid" } else { "invalid" },
        );
        if let Some(e) = &r.error {
            let _ = writeln!(out, "{:>6} error: {e}", "");
        }
    }
    let separable = rows.iter().filter(|r| r.separable).count();
    let valid = rows.iter().filter(|r| r.valid).count();
    let _ = writeln!(
        out,
        "scanned {} primes in [{pmin}, {pmax}]: {separable} separable, {valid} valid",
        rows.len()
    );
    out
}

pub fn run(args: &ScanArgs) -> Result<Outcome, CliError> {
    if args.pmin > args.pmax {
        return Err(CliError::Usage(format!(
            "--pmin {} exceeds --pmax {}",
            args.pmin, args.pmax
        )));
    }
    let stamp = created_at(args.created_at.as_deref())?;
    let rows = scan(args.family, args.pmin, args.pmax, args.jobs, &stamp)?;
    if let Some(path) = &args.store {
        let entries: Vec<StoreEntry> = rows.iter().filter_map(|r| r.entry.clone()).collect();
        CurveStore::new(path).append(&entries)?;
    }
    let passed = rows.iter().all(|r| r.valid);
    Ok(Outcome::new(render(&rows, args.pmin, args.pmax), passed))
}
