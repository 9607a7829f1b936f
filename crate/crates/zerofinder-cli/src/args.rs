use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zerofinder::{Error, FamilyParams, Method, Options, Result};

#[derive(Parser, Debug)]
#[command(name = "zerofinder", version, about = "Zeros of special functions and orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute all zeros in an interval.
    Zeros(RunArgs),
    /// Compare computed zeros with the oracle (or a reference table) and fail on mismatch.
    Verify(VerifyArgs),
    /// Compare iteration counts and run times of the four methods.
    Bench(BenchArgs),
    /// Estimate the convergence order at one zero.
    Order(OrderArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Legendre,
    Hermite,
    Bessel,
    Cylinder,
    Kummer,
    Coulomb,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Polynomial degree.
    #[arg(long)]
    pub n: Option<usize>,
    /// Bessel or cylinder order.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Cylinder phase in [0, pi).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Kummer parameter a.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Kummer parameter b.
    #[arg(long)]
    pub b: Option<f64>,
    /// Coulomb angular momentum.
    #[arg(long = "L", id = "L")]
    pub l: Option<f64>,
    /// Coulomb charge parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Admit the unvalidated Kummer path for b < 1/6.
    #[arg(long)]
    pub experimental: bool,
}

impl FamilyArgs {
    pub fn params(&self) -> Result<FamilyParams> {
        fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
            v.ok_or_else(|| Error::UnsupportedParameter(format!("{family} needs --{flag}")))
        }
        let p = match self.family {
            FamilyName::Legendre => FamilyParams::Legendre { n: need(self.n, "n", "legendre")? },
            FamilyName::Hermite => FamilyParams::Hermite { n: need(self.n, "n", "hermite")? },
            FamilyName::Bessel => FamilyParams::Bessel { mu: need(self.mu, "mu", "bessel")? },
            FamilyName::Cylinder => {
                FamilyParams::Cylinder { mu: need(self.mu, "mu", "cylinder")?, alpha: self.alpha.unwrap_or(0.0) }
            }
            FamilyName::Kummer => FamilyParams::Kummer { a: need(self.a, "a", "kummer")?, b: need(self.b, "b", "kummer")? },
            FamilyName::Coulomb => FamilyParams::Coulomb { l: need(self.l, "L", "coulomb")?, eta: self.eta.unwrap_or(0.0) },
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Interval in x; defaults to the family's zero-holding domain.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value = "tom", value_parser = parse_method)]
    pub method: Method,
    /// Stopping tolerance; replaces the family default of the same kind (relative or absolute).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Disable gap-based guess acceleration.
    #[arg(long)]
    pub no_accel: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl SolveArgs {
    pub fn interval(&self) -> Option<(f64, f64)> {
        self.interval.as_ref().map(|v| (v[0], v[1]))
    }

    pub fn options(&self, base: Options) -> Options {
        let mut o = base.with_method(self.method);
        if let Some(t) = self.tol {
            if o.rel_tol > 0.0 {
                o.rel_tol = t;
            } else {
                o.abs_tol = t;
            }
        }
        if let Some(m) = self.max_iter {
            o.max_iter = m;
        }
        o
    }
}

pub fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Attach an oracle audit to the summary.
    #[arg(long)]
    pub audit: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = 1e-12)]
    pub threshold: f64,
    /// Reference table (`family<TAB>params<TAB>zero<TAB>tag` lines) replacing the oracle.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Configurations such as `legendre:n=10000` or `bessel:mu=100@100,1100` (optional
    /// `@lo,hi` interval); may repeat.
    #[arg(long = "config", value_name = "FAMILY:K=V,...")]
    pub configs: Vec<String>,
    /// Family flags, used when no `--config` is given.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long = "L", id = "L")]
    pub l: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Methods to compare; all four by default.
    #[arg(long = "method", value_parser = parse_method)]
    pub methods: Vec<Method>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub no_accel: bool,
    /// Timed repetitions per row; the mean is reported.
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl BenchArgs {
    pub fn family_args(&self) -> Option<FamilyArgs> {
        Some(FamilyArgs {
            family: self.family?,
            n: self.n,
            mu: self.mu,
            alpha: self.alpha,
            a: self.a,
            b: self.b,
            l: self.l,
            eta: self.eta,
            experimental: false,
        })
    }

    pub fn solve_args(&self, method: Method) -> SolveArgs {
        SolveArgs {
            interval: self.interval.clone(),
            method,
            tol: self.tol,
            max_iter: self.max_iter,
            no_accel: self.no_accel,
            format: self.format,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct OrderArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// 1-based position of the zero among those found in the interval.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
}
