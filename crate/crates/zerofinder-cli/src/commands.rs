use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use zerofinder::families::{bessel_problem, coulomb_problem, hermite_problem, kummer_problem, legendre_problem};
use zerofinder::riccati::{IterationOptions, RiccatiProblem};
use zerofinder::{
    estimate_order, oracle, solve_zero, DoubleDouble, Error, Family, FamilyParams, Method, ReferenceZeroSet, Report,
    Result, Scalar,
};

use crate::args::{BenchArgs, FamilyArgs, OrderArgs, RunArgs, SolveArgs, VerifyArgs};
use crate::output::Sink;

/// Exit status of a finished command.
pub type Status = i32;

pub fn family(args: &FamilyArgs) -> Result<Family> {
    let p = args.params()?;
    if args.experimental {
        Family::new_experimental(p)
    } else {
        Family::new(p)
    }
}

fn run_sweep(f: &Family, solve: &SolveArgs) -> Result<Report> {
    f.sweep(solve.interval(), &solve.options(f.default_options()), !solve.no_accel)
}

#[derive(Serialize)]
pub struct ZeroRecord {
    pub index: usize,
    pub x: f64,
    pub z: f64,
    pub iterations: usize,
    pub residual: f64,
    pub guess: f64,
    pub termination: String,
}

#[derive(Serialize)]
pub struct ZerosSummary {
    pub family: &'static str,
    pub params: String,
    pub method: &'static str,
    pub zeros: usize,
    pub total_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSummary>,
}

#[derive(Serialize)]
pub struct AuditSummary {
    pub matched: usize,
    pub missed: usize,
    pub spurious: usize,
    pub max_re: f64,
}

impl From<&oracle::AuditRecord> for AuditSummary {
    fn from(a: &oracle::AuditRecord) -> Self {
        Self { matched: a.matched, missed: a.missed, spurious: a.spurious, max_re: a.max_re }
    }
}

pub fn zeros(args: &RunArgs, out: &mut dyn Write) -> Result<Status> {
    let f = family(&args.family)?;
    let report = run_sweep(&f, &args.solve)?;
    let audit = if args.audit { Some(f.audit(&report, args.solve.interval())?) } else { None };
    let mut sink = Sink::new(out, args.solve.format);
    for (i, z) in report.zeros.iter().enumerate() {
        sink.record(&ZeroRecord {
            index: i + 1,
            x: z.x_star,
            z: z.z_star,
            iterations: z.iterations,
            residual: z.final_residual,
            guess: z.guess(),
            termination: z.termination.to_string(),
        })?;
    }
    let p = f.params();
    sink.summary(&ZerosSummary {
        family: p.name(),
        params: p.label(),
        method: args.solve.method.name(),
        zeros: report.zeros.len(),
        total_iterations: report.total_iterations(),
        audit: audit.as_ref().map(AuditSummary::from),
    })?;
    Ok(0)
}

#[derive(Serialize)]
pub struct VerifyRecord {
    pub index: usize,
    pub x: f64,
    pub reference: f64,
    pub re: f64,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct VerifySummary {
    pub family: &'static str,
    pub params: String,
    pub source: &'static str,
    pub computed: usize,
    pub reference: usize,
    pub matched: usize,
    pub missed: usize,
    pub spurious: usize,
    pub max_re: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Relative error, falling back to the absolute error at a zero reference.
fn re(x: f64, reference: f64) -> f64 {
    oracle::relative_error(x, reference).unwrap_or((x - reference).abs())
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Status> {
    let f = family(&args.family)?;
    let report = run_sweep(&f, &args.solve)?;
    let computed = report.x_values();
    let (reference, source) = match &args.fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            (text.parse::<ReferenceZeroSet>()?.zeros, "fixture")
        }
        None => (f.reference_zeros(args.solve.interval())?, "oracle"),
    };
    let audit = oracle::audit_zeros(&computed, &reference, 1e-8);
    let mut sink = Sink::new(out, args.solve.format);
    let mut worst = 0.0f64;
    for (i, (&x, &r)) in computed.iter().zip(&reference).enumerate() {
        let e = re(x, r);
        worst = worst.max(e);
        sink.record(&VerifyRecord { index: i + 1, x, reference: r, re: e, ok: e <= args.threshold })?;
    }
    let pass = computed.len() == reference.len() && audit.clean() && worst <= args.threshold;
    let p = f.params();
    sink.summary(&VerifySummary {
        family: p.name(),
        params: p.label(),
        source,
        computed: computed.len(),
        reference: reference.len(),
        matched: audit.matched,
        missed: audit.missed,
        spurious: audit.spurious,
        max_re: worst,
        threshold: args.threshold,
        pass,
    })?;
    Ok(if pass { 0 } else { 1 })
}

#[derive(Serialize, Clone)]
pub struct BenchRow {
    pub family: &'static str,
    pub params: String,
    pub method: &'static str,
    pub t_iter: Option<usize>,
    pub a_time_s: Option<f64>,
    pub zeros: Option<usize>,
}

fn bench_one(f: &Family, solve: &SolveArgs, runs: usize) -> Result<(usize, f64, usize)> {
    let first = run_sweep(f, solve)?;
    let start = Instant::now();
    for _ in 0..runs {
        run_sweep(f, solve)?;
    }
    let mean = start.elapsed().as_secs_f64() / runs.max(1) as f64;
    Ok((first.total_iterations(), mean, first.zeros.len()))
}

fn worker_count() -> usize {
    std::env::var("ZEROFINDER_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Splits `family:k=v,...@lo,hi` into parameters and an optional interval.
fn parse_config(text: &str) -> Result<(FamilyParams, Option<(f64, f64)>)> {
    let (spec, interval) = match text.split_once('@') {
        Some((spec, iv)) => {
            let bad = || Error::UnsupportedParameter(format!("interval must read @lo,hi in {text}"));
            let (lo, hi) = iv.split_once(',').ok_or_else(bad)?;
            let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
            (spec, Some((lo, hi)))
        }
        None => (text, None),
    };
    Ok((spec.parse()?, interval))
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<Status> {
    let shared = args.interval.as_ref().map(|v| (v[0], v[1]));
    let mut configs: Vec<(FamilyParams, Option<(f64, f64)>)> = Vec::new();
    for text in &args.configs {
        let (p, iv) = parse_config(text)?;
        configs.push((p, iv.or(shared)));
    }
    if configs.is_empty() {
        let fa = args
            .family_args()
            .ok_or_else(|| Error::UnsupportedParameter("bench needs --config or --family".into()))?;
        configs.push((fa.params()?, shared));
    }
    let families: Vec<(Family, Option<(f64, f64)>)> =
        configs.into_iter().map(|(p, iv)| Family::new(p).map(|f| (f, iv))).collect::<Result<_>>()?;
    let methods = if args.methods.is_empty() { Method::ALL.to_vec() } else { args.methods.clone() };
    let jobs: Vec<(&Family, Option<(f64, f64)>, Method)> =
        families.iter().flat_map(|(f, iv)| methods.iter().map(move |&m| (f, *iv, m))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    // Each worker owns its sweep; collect keeps configuration order.
    let results: Vec<(BenchRow, Option<Error>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(f, iv, m)| {
                let p = f.params();
                let mut row = BenchRow {
                    family: p.name(),
                    params: p.label(),
                    method: m.name(),
                    t_iter: None,
                    a_time_s: None,
                    zeros: None,
                };
                let mut solve = args.solve_args(m);
                solve.interval = iv.map(|(a, b)| vec![a, b]);
                match bench_one(f, &solve, args.runs) {
                    Ok((it, t, n)) => {
                        row.t_iter = Some(it);
                        row.a_time_s = Some(t);
                        row.zeros = Some(n);
                        (row, None)
                    }
                    Err(e) => (row, Some(e)),
                }
            })
            .collect()
    });
    let mut sink = Sink::new(out, args.format);
    let mut first_error = None;
    let mut any_ok = false;
    for (row, err) in &results {
        if let Some(e) = err {
            eprintln!("{} {} {}: {e}", row.family, row.params, row.method);
            first_error.get_or_insert_with(|| e.clone());
        } else {
            any_ok = true;
        }
        sink.record(row)?;
    }
    sink.flush()?;
    match first_error {
        Some(e) if !any_ok => Err(e),
        _ => Ok(0),
    }
}

#[derive(Serialize)]
pub struct OrderRecord {
    pub m: usize,
    pub z: f64,
    pub error: f64,
}

#[derive(Serialize)]
pub struct OrderSummary {
    pub family: &'static str,
    pub params: String,
    pub method: &'static str,
    pub index: usize,
    pub z_star: f64,
    pub x_star: f64,
    pub guess: f64,
    pub precision: &'static str,
    pub order: f64,
}

/// The z-space problem in double-double, where the family's evaluators are generic.
fn wide_problem(p: FamilyParams) -> Result<Option<RiccatiProblem<DoubleDouble>>> {
    let d = DoubleDouble::from;
    Ok(match p {
        FamilyParams::Legendre { n } => Some(legendre_problem(n)),
        FamilyParams::Hermite { n } => Some(hermite_problem(n)),
        FamilyParams::Bessel { mu } => Some(bessel_problem(d(mu))?.0),
        FamilyParams::Kummer { a, b } => Some(kummer_problem(d(a), d(b))?.0),
        FamilyParams::Coulomb { l, eta } => Some(coulomb_problem(d(l), d(eta))?.0),
        FamilyParams::Cylinder { .. } => None,
    })
}

fn trace<T: Scalar>(
    p: &RiccatiProblem<T>,
    guess: f64,
    method: Method,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, f64, f64, f64)> {
    let opts = IterationOptions::<T>::absolute(tol).with_method(method).with_max_iter(max_iter);
    let r = solve_zero(p, T::from(guess).expect("finite guess"), &opts)?;
    let order = estimate_order(&r.history, r.z_star)?;
    let hist = r.history.iter().map(|z| z.as_f64()).collect();
    Ok((hist, r.z_star.as_f64(), r.x_star.as_f64(), order.as_f64()))
}

pub fn order(args: &OrderArgs, out: &mut dyn Write) -> Result<Status> {
    let f = family(&args.family)?;
    // Zeros are located with the certified TOM sweep; the method under test restarts from the
    // same guess, so every method is measured on the same target.
    let mut locate = args.solve.clone();
    locate.method = Method::Tom;
    let report = run_sweep(&f, &locate)?;
    let n = report.zeros.len();
    let target = report.zeros.get(args.index.wrapping_sub(1)).ok_or_else(|| {
        Error::UnsupportedParameter(format!("index {} outside 1..={n} (zeros found in the interval)", args.index))
    })?;
    let guess = target.guess();
    let method = args.solve.method;
    let max_iter = args.solve.max_iter.unwrap_or(60);
    let p = f.params();
    let (history, z_star, x_star, order, precision) = match wide_problem(p)? {
        Some(wide) => {
            let (h, z, x, o) = trace(&wide, guess, method, 1e-28, max_iter)?;
            (h, z, x, o, "double-double")
        }
        None => {
            let (h, z, x, o) = trace(f.problem(), guess, method, 1e-15, max_iter)?;
            (h, z, x, o, "double")
        }
    };
    let mut sink = Sink::new(out, args.solve.format);
    for (m, &z) in history.iter().enumerate() {
        sink.record(&OrderRecord { m, z, error: (z - z_star).abs() })?;
    }
    sink.summary(&OrderSummary {
        family: p.name(),
        params: p.label(),
        method: method.name(),
        index: args.index,
        z_star,
        x_star,
        guess,
        precision,
        order,
    })?;
    Ok(0)
}

