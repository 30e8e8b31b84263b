use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use torsion_forge_core::zeta::DEFAULT_ENUMERATION_BOUND;

use crate::fields::FieldChoice;

/// Construct and verify superelliptic curves with rational torsion on their
/// jacobians.
///
/// Polynomials use the grammar `c*x^e + ...` with rational coefficients;
/// over `Qt` coefficients may also involve `t`.
#[derive(Debug, Parser)]
#[command(name = "torsion-forge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lift a k-th root of u modulo b to a root modulo b^level.
    Lift(LiftArgs),
    /// Build a certificate from (k, N, b, u, R1, epsilon) or a named family.
    Construct(ConstructArgs),
    /// Re-verify a certificate file or a curve store.
    Verify(VerifyArgs),
    /// Construct and check a family over a range of primes.
    Scan(ScanArgs),
    /// Rerun a worked example and compare with its published values.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    #[arg(long = "R1", alias = "r1", allow_hyphen_values = true)]
    pub r1: String,
    #[arg(long)]
    pub level: u32,
    /// Q, Qt or Fp:<p>
    #[arg(long, default_value = "Q")]
    pub field: FieldChoice,
    /// Include lambda1, lambda2 and the root at every level.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructFamily {
    /// y^k = a^k - x^p over Q (needs --k, --a, --p)
    Example1,
    /// the cubic family over the sextic modulus (needs --p)
    Example2,
    /// the genus-2 curve over Q(t) with 13-torsion
    Example3,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Option<ConstructFamily>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long = "N", alias = "n")]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long = "R1", alias = "r1", allow_hyphen_values = true)]
    pub r1: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub epsilon: String,
    /// Polynomial `a` for the first family.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Prime `p` for the named families.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value = "Q")]
    pub field: FieldChoice,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate JSON, or a line-delimited store.
    pub file: PathBuf,
    /// Recompute the certificate identity and side conditions (default).
    #[arg(long)]
    pub identity: bool,
    /// Exact order of D0 by Cantor arithmetic (k = 2 only).
    #[arg(long)]
    pub cantor: bool,
    /// Check N | #Jac(F_p) from point counts.
    #[arg(long)]
    pub zeta: bool,
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Values of t for Q(t) certificates, paired with --primes when the lists
    /// have equal length and combined with each prime otherwise.
    #[arg(long, value_delimiter = ',')]
    pub t0: Vec<u64>,
    /// Largest field size enumerated when counting points.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    pub bound: u64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFamily {
    Example2,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value = "example2")]
    pub family: ScanFamily,
    #[arg(long, default_value_t = 51)]
    pub pmin: u64,
    #[arg(long, default_value_t = 509)]
    pub pmax: u64,
    /// Append one line per prime to this store.
    #[arg(long)]
    pub store: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Timestamp recorded in store entries. Defaults to SOURCE_DATE_EPOCH
    /// when set, otherwise the current time.
    #[arg(long)]
    pub created_at: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Example1,
    Example2,
    Example3,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub name: Example,
}
