use std::fmt::Write as _;

use torsion_forge_core::arith::{Field, Rationals};
use torsion_forge_core::forge::{
    example2_modulus, example2_scaled_r3, family_example1, family_example2, seed_example3,
    verify_certificate, TorsionCertificate,
};
use torsion_forge_core::hensel::{lift, LiftProblem};
use torsion_forge_core::jacobian::verify_order;
use torsion_forge_core::poly::{parse_poly, Poly};
use torsion_forge_core::zeta::{check_torsion_divisibility, ReduceModP, DEFAULT_ENUMERATION_BOUND};

use crate::args::{Example, ReproduceArgs};
use crate::{CliError, Outcome};

#[derive(Default)]
struct Report {
    text: String,
    ok: bool,
    started: bool,
}

impl Report {
    fn heading(&mut self, text: &str) {
        if !self.started {
            self.ok = true;
            self.started = true;
        } else {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "{text}");
    }

    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.text, "  {}", text.as_ref());
    }

    fn compare(&mut self, what: &str, published: impl AsRef<str>, computed: impl AsRef<str>, ok: bool) {
        self.ok &= ok;
        let _ = writeln!(
            self.text,
            "  {what}\n    published: {}\n    computed:  {}\n    [{}]",
            published.as_ref(),
            computed.as_ref(),
            if ok { "match" } else { "MISMATCH" }
        );
    }

    fn check(&mut self, what: &str, ok: bool) {
        self.ok &= ok;
        let _ = writeln!(self.text, "  {what}: {}", if ok { "yes" } else { "NO" });
    }
}

fn q(s: &str) -> Poly<Rationals> {
    parse_poly(&Rationals, s, "x").expect("fixture parses")
}

fn torsion_lines<K: ReduceModP>(
    report: &mut Report,
    cert: &TorsionCertificate<K>,
    primes: &[u64],
    t0s: Option<&[u64]>,
) {
    match check_torsion_divisibility(cert, primes, t0s, DEFAULT_ENUMERATION_BOUND) {
        Ok(check) => {
            for r in &check.reports {
                let at = r.t0.map(|t| format!(", t = {t}")).unwrap_or_default();
                let ok = r.divisible_by_n;
                report.check(
                    &format!("{} | #Jac = {} over F_{}{at}", cert.n, r.jacobian_order, r.q),
                    ok,
                );
            }
            for s in &check.skipped {
                report.line(format!("q = {} skipped: {}", s.p, s.reason));
            }
        }
        Err(e) => report.check(&format!("point counts: {e}"), false),
    }
}

fn example1(report: &mut Report) -> Result<(), CliError> {
    for (k, a, p) in [(2u32, "x+1", 5u64), (2, "x+1", 7), (3, "x+2", 7)] {
        report.heading(&format!("y^{k} = ({a})^{k} - x^{p}"));
        let cert = family_example1(k, &q(a), p).map_err(CliError::precondition)?;
        report.line(format!("F = {}", cert.f));
        let verdict = verify_certificate(&cert);
        report.check("norm of psi equals x^p", verdict.checks.identity);
        report.check("F separable", verdict.checks.separable);
        let expected = (k as u64 - 1) * (p - 1) / 2;
        report.compare(
            "genus",
            format!("(k-1)(p-1)/2 = {expected}"),
            cert.genus.map_or("unsupported".into(), |g| g.to_string()),
            cert.genus == Some(expected),
        );
        if k == 2 {
            let order = verify_order(&cert);
            report.compare(
                "order of D0",
                format!("rational {p}-torsion point"),
                order
                    .order_exact
                    .map_or_else(|| "unknown".into(), |o| format!("order exactly {o}")),
                order.order_exact == Some(p),
            );
        } else {
            report.line("order of D0: Cantor arithmetic needs k = 2; divisibility rests on the identity");
        }
        if (k, p) == (2, 5) {
            torsion_lines(report, &cert, &[7, 11, 13], None);
        }
    }
    Ok(())
}

fn example2(report: &mut Report) -> Result<(), CliError> {
    report.heading("k = 3, b = x^6+3*x^4+3*x^2-x+1, u = x, R1 = x^2+1");
    let problem = LiftProblem::new(3, example2_modulus(), q("x"), q("x^2+1"), 3)
        .map_err(CliError::precondition)?;
    let r3 = lift(&problem).map_err(CliError::precondition)?.root;
    let scaled = r3.scale(&Rationals.from_i64(9));
    let printed = example2_scaled_r3();
    report.compare("9*R_3", printed.to_string(), scaled.to_string(), scaled == printed);

    let p = 53;
    report.heading(&format!("F_p for p = {p}"));
    let cert = family_example2(p).map_err(CliError::precondition)?;
    report.line(format!("deg F = {}", cert.f.degree().unwrap_or(0)));
    report.compare(
        "genus",
        format!("p - 19 = {}", p - 19),
        cert.genus.map_or("unsupported".into(), |g| g.to_string()),
        cert.genus == Some(p - 19),
    );
    let verdict = verify_certificate(&cert);
    report.check("F separable", verdict.checks.separable);
    report.check("certificate valid", verdict.valid());
    report.line("every prime 51 <= p <= 509: run `torsion-forge scan`");
    Ok(())
}

fn example3(report: &mut Report) -> Result<(), CliError> {
    let seed = seed_example3();
    report.heading("genus-2 curve over Q(t), N = 13");
    let cert = seed.construct().map_err(CliError::precondition)?;
    report.compare(
        &format!("F (epsilon = {})", seed.epsilon),
        seed.f.to_string(),
        cert.f.to_string(),
        cert.f == seed.f,
    );
    report.check("certificate valid", verify_certificate(&cert).valid());
    let order = verify_order(&cert);
    report.compare(
        "order of D0",
        "order 13",
        order
            .order_exact
            .map_or_else(|| "unknown".into(), |o| format!("order exactly {o}")),
        order.order_exact == Some(13),
    );
    torsion_lines(report, &cert, &[11, 11, 23], Some(&[2, 3, 5]));
    Ok(())
}

pub fn run(args: &ReproduceArgs) -> Result<Outcome, CliError> {
    let mut report = Report::default();
    match args.name {
        Example::Example1 => example1(&mut report)?,
        Example::Example2 => example2(&mut report)?,
        Example::Example3 => example3(&mut report)?,
    }
    let verdict = if report.ok { "all values reproduced" } else { "MISMATCHES found" };
    let _ = writeln!(report.text, "\n{verdict}");
    Ok(Outcome::new(report.text, report.ok))
}
