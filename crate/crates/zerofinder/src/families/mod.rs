//! Family adapters: parameters, case analysis, and the interval orchestration that turns a
//! user interval into certified sweeps plus the bespoke near-origin searches.

mod bessel;
mod hyper;
mod poly;

use std::fmt;
use std::str::FromStr;

pub use bessel::{bessel_case, bessel_problem, cylinder_case, cylinder_problem, cylinder_theta1, MAX_ORDER};
pub use hyper::{
    coulomb_case, coulomb_max_x, coulomb_problem, kummer_case, kummer_problem, KummerConstants, KUMMER_MIN_B,
};
pub use poly::{
    hermite_problem, hermite_z_bound, legendre_problem, legendre_z_bound, HermiteXSpace, LegendreXSpace,
};

use crate::error::{Error, Result};
use crate::oracle::{self, AuditRecord, Evaluator, OracleConfig};
use crate::riccati::{IterationOptions, RiccatiProblem, ZeroResult};
use crate::sweep::{bespoke_first_zero, classify_regime, sweep_interval, OmegaTrend, SweepPlan, SweepReport};

/// Parameters of one target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams {
    /// `P_n`, `n >= 1`.
    Legendre { n: usize },
    /// `H_n`, `n >= 1`.
    Hermite { n: usize },
    /// `J_mu`, `mu > -1`.
    Bessel { mu: f64 },
    /// `J_mu cos(alpha) - Y_mu sin(alpha)`, `alpha` in `[0, pi)`.
    Cylinder { mu: f64, alpha: f64 },
    /// `M(a, b, x)`, `a < -1`, `b > 0`.
    Kummer { a: f64, b: f64 },
    /// `F_L(eta, x)`, `L > 0`.
    Coulomb { l: f64, eta: f64 },
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::Legendre { .. } => "legendre",
            FamilyParams::Hermite { .. } => "hermite",
            FamilyParams::Bessel { .. } => "bessel",
            FamilyParams::Cylinder { .. } => "cylinder",
            FamilyParams::Kummer { .. } => "kummer",
            FamilyParams::Coulomb { .. } => "coulomb",
        }
    }

    /// Parameters as `key=value` pairs separated by `;`.
    pub fn label(&self) -> String {
        match *self {
            FamilyParams::Legendre { n } | FamilyParams::Hermite { n } => format!("n={n}"),
            FamilyParams::Bessel { mu } => format!("mu={mu}"),
            FamilyParams::Cylinder { mu, alpha } => format!("mu={mu};alpha={alpha}"),
            FamilyParams::Kummer { a, b } => format!("a={a};b={b}"),
            FamilyParams::Coulomb { l, eta } => format!("L={l};eta={eta}"),
        }
    }

    /// Checks the documented parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::UnsupportedParameter(m));
        match *self {
            FamilyParams::Legendre { n } | FamilyParams::Hermite { n } if n == 0 => bad("degree must be >= 1".into()),
            FamilyParams::Bessel { mu } => bessel_case(mu).map(|_| ()),
            FamilyParams::Cylinder { mu, alpha } => cylinder_case(mu, alpha).map(|_| ()),
            FamilyParams::Kummer { a, b } => kummer_case(a, b).map(|_| ()),
            FamilyParams::Coulomb { l, eta } => coulomb_case(l, eta).map(|_| ()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.label())
    }
}

/// Which case of the family analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Legendre,
    Hermite,
    /// `mu >= 1/2`, ratio `J_mu / J_{mu-1}`.
    BesselCase1,
    /// `0 <= mu < 1/2`.
    BesselCase2a,
    /// `-1/2 < mu < 0`.
    BesselCase2b,
    /// `-1 < mu < -1/2`.
    BesselCase2c,
    /// `mu = -1/2`: `h = -cot x`.
    BesselCase2Neutral,
    CylinderCase1,
    /// `mu < -1/2`.
    CylinderCase2a,
    /// `-1/2 < mu < 1/2`.
    CylinderCase2b,
    CylinderCase2Neutral,
    /// `b >= 1/6`: every zero inside the `|r| < 1` interval.
    Kummer,
    /// `0 < b < 1/6`: one zero may sit left of it.
    KummerSmallB,
    /// `eta >= 0`: `r > 0` throughout.
    CoulombRepulsive,
    /// `eta < 0`: `r` changes sign at `z_r`.
    CoulombAttractive,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A region holding at most one zero and one pole, with `r > 0` non-increasing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bespoke {
    /// `(lo, hi]` in z.
    pub region: (f64, f64),
    /// A point known to satisfy `h < 0` left of the zero, if the analysis provides one.
    pub guess: Option<f64>,
}

/// Case metadata; all intervals are in z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyCase {
    pub case_id: CaseId,
    /// The case's bound constant (lower edge of the certified sweep region, in x).
    pub bound: f64,
    /// Every zero lies in this open interval.
    pub zeros_within: (f64, f64),
    /// Where a regime certificate applies.
    pub certified: (f64, f64),
    pub bespoke: Option<Bespoke>,
    /// `(k1, k2)` for slowly increasing drifts.
    pub slow: Option<(f64, f64)>,
    pub omega: OmegaTrend,
    pub r_zero: Option<f64>,
}

impl FamilyCase {
    pub fn new(case_id: CaseId, bound: f64, zeros_within: (f64, f64), certified: (f64, f64), omega: OmegaTrend) -> Self {
        Self { case_id, bound, zeros_within, certified, bespoke: None, slow: None, omega, r_zero: None }
    }

    pub fn with_slow(mut self, k1: f64, k2: f64) -> Self {
        self.slow = Some((k1, k2));
        self
    }

    pub fn with_bespoke(mut self, b: Bespoke) -> Self {
        self.bespoke = Some(b);
        self
    }

    /// The z-interval below `zeros_within` where no zero can lie.
    pub fn zero_free_region(&self) -> Option<(f64, f64)> {
        (self.zeros_within.0 > 0.0).then_some((0.0, self.zeros_within.0))
    }

    /// Part of `[lo, certified.0)` that neither the zero bound nor the bespoke search covers.
    fn uncovered_below(&self, lo: f64) -> Option<(f64, f64)> {
        let start = lo.max(self.zeros_within.0);
        let end = self.certified.0;
        if start >= end {
            return None;
        }
        match self.bespoke {
            Some(b) if b.region.0 <= start && b.region.1 >= end => None,
            _ => Some((start, end)),
        }
    }
}

/// Smallest positive argument sampled on identity-map families (x = 0 is singular there).
const X_FLOOR: f64 = 1e-8;

/// A configured family: its problem, case metadata, defaults and oracle hooks.
#[derive(Debug, Clone)]
pub struct Family {
    params: FamilyParams,
    case: FamilyCase,
    problem: RiccatiProblem<f64>,
}

impl Family {
    /// Builds the adapter; Kummer with `b < 1/6` is refused (see [`Family::new_experimental`]).
    pub fn new(params: FamilyParams) -> Result<Self> {
        if let FamilyParams::Kummer { b, .. } = params {
            if b < KUMMER_MIN_B {
                return Err(Error::UnsupportedParameter(format!(
                    "Kummer b = {b} < 1/6 is experimental; use the experimental constructor"
                )));
            }
        }
        Self::new_experimental(params)
    }

    /// Like [`Family::new`] but admits the unvalidated Kummer `b < 1/6` path.
    pub fn new_experimental(params: FamilyParams) -> Result<Self> {
        params.validate()?;
        let (problem, case) = match params {
            FamilyParams::Legendre { n } => {
                let zb = legendre_z_bound::<f64>(n);
                let case = FamilyCase::new(CaseId::Legendre, 0.0, (0.0, zb), (0.0, zb), OmegaTrend::Decreasing);
                (legendre_problem(n), case)
            }
            FamilyParams::Hermite { n } => {
                let zb = hermite_z_bound::<f64>(n);
                let case = FamilyCase::new(CaseId::Hermite, 0.0, (0.0, zb), (0.0, zb), OmegaTrend::Decreasing);
                (hermite_problem(n), case)
            }
            FamilyParams::Bessel { mu } => bessel_problem(mu)?,
            FamilyParams::Cylinder { mu, alpha } => cylinder_problem(mu, alpha)?,
            FamilyParams::Kummer { a, b } => kummer_problem(a, b)?,
            FamilyParams::Coulomb { l, eta } => coulomb_problem(l, eta)?,
        };
        Ok(Self { params, case, problem })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn case(&self) -> &FamilyCase {
        &self.case
    }

    pub fn problem(&self) -> &RiccatiProblem<f64> {
        &self.problem
    }

    fn symmetric(&self) -> bool {
        matches!(self.params, FamilyParams::Legendre { .. } | FamilyParams::Hermite { .. })
    }

    /// Stopping rule per family: relative in x for the polynomials, absolute otherwise.
    ///
    /// Legendre iterations get an iteration cap growing with the degree: near `x = 1` the drift
    /// approaches `-1`, `h` lingers near it, and each step advances z by about 2 while the
    /// outermost gaps in z grow like `0.8 (n + 1)`.
    pub fn default_options(&self) -> IterationOptions<f64> {
        match self.params {
            FamilyParams::Legendre { n } => IterationOptions::relative(1e-15).with_max_iter(60.max(n + 1)),
            FamilyParams::Hermite { .. } => IterationOptions::relative(1e-10),
            FamilyParams::Bessel { .. } | FamilyParams::Cylinder { .. } => IterationOptions::absolute(1e-10),
            FamilyParams::Kummer { .. } | FamilyParams::Coulomb { .. } => IterationOptions::absolute(1e-12),
        }
    }

    /// Interval in x searched when none is given: all zeros for the polynomials and Kummer,
    /// the first stretch of 50 beyond the case bound for Bessel and cylinder functions, and
    /// `(0, 30]` for Coulomb functions.
    pub fn default_interval(&self) -> (f64, f64) {
        match self.params {
            FamilyParams::Legendre { .. } => (-1.0, 1.0),
            FamilyParams::Hermite { n } => {
                let t = ((2 * n + 1) as f64).sqrt();
                (-t, t)
            }
            FamilyParams::Bessel { .. } | FamilyParams::Cylinder { .. } => {
                let start = if self.case.uncovered_below(0.0).is_some() { self.case.certified.0 } else { 0.0 };
                (start, self.case.bound + 50.0)
            }
            FamilyParams::Kummer { a, b } => {
                let (lo, hi) = KummerConstants::new(a, b).x_zeros;
                (lo.max(0.0), hi)
            }
            FamilyParams::Coulomb { l, .. } => (0.0, coulomb_max_x(l).min(30.0)),
        }
    }

    /// All zeros in the x-interval (default interval when `None`), ascending.
    pub fn sweep(
        &self,
        interval: Option<(f64, f64)>,
        opts: &IterationOptions<f64>,
        accelerate: bool,
    ) -> Result<SweepReport<f64>> {
        let (lo, hi) = interval.unwrap_or_else(|| self.default_interval());
        if !(lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        if self.symmetric() {
            self.sweep_symmetric(lo, hi, opts, accelerate)
        } else {
            self.sweep_positive(lo, hi, opts, accelerate)
        }
    }

    /// Sweep of `z >= 0` only: for the polynomials these are the non-negative zeros.
    pub fn sweep_nonnegative(&self, opts: &IterationOptions<f64>, accelerate: bool) -> Result<SweepReport<f64>> {
        let bounds = self.case.certified;
        let cert = classify_regime(&self.problem, bounds, self.case.slow)?;
        let plan = SweepPlan::new(cert, bounds, self.case.omega)?.with_acceleration(accelerate);
        match self.params {
            FamilyParams::Legendre { n } => sweep_interval(&mut LegendreXSpace::new(n), &plan, opts),
            FamilyParams::Hermite { n } => sweep_interval(&mut HermiteXSpace::new(n), &plan, opts),
            _ => Err(Error::Unsupported("non-negative sweep applies to the symmetric polynomials".into())),
        }
    }

    fn sweep_symmetric(
        &self,
        lo: f64,
        hi: f64,
        opts: &IterationOptions<f64>,
        accelerate: bool,
    ) -> Result<SweepReport<f64>> {
        let half = self.sweep_nonnegative(opts, accelerate)?;
        let mut zeros: Vec<ZeroResult<f64>> = half.zeros.iter().filter(|z| z.x_star > 0.0).map(reflect).collect();
        zeros.extend(half.zeros.iter().cloned());
        zeros.retain(|z| z.x_star >= lo && z.x_star <= hi);
        zeros.sort_by(|a, b| a.x_star.total_cmp(&b.x_star));
        Ok(SweepReport { zeros, ..half })
    }

    fn sweep_positive(
        &self,
        xlo: f64,
        xhi: f64,
        opts: &IterationOptions<f64>,
        accelerate: bool,
    ) -> Result<SweepReport<f64>> {
        let p = &self.problem;
        let floor = if matches!(self.params, FamilyParams::Kummer { .. }) { 0.0 } else { X_FLOOR };
        let zlo = p.z_of_x(xlo.max(floor)).max(self.case.zeros_within.0);
        let zhi = p.z_of_x(xhi).min(self.case.zeros_within.1);
        let mut report = SweepReport::default();
        if !(zlo < zhi) {
            return Ok(report);
        }
        if let Some((a, b)) = self.case.uncovered_below(zlo) {
            if a < zhi {
                return Err(Error::Unsupported(format!(
                    "{}: no convergence theorem covers z in ({a}, {b}); start the interval at {b}",
                    self.params
                )));
            }
        }
        if let Some(bs) = self.case.bespoke {
            let (a, b) = (zlo.max(bs.region.0), zhi.min(bs.region.1));
            if a < b {
                // z = x on the floored families; the search may start at the origin itself.
                let a = if floor > 0.0 && a <= floor { 0.0 } else { a };
                if let Some(z) = bespoke_first_zero(p, a, b, bs.guess, opts)? {
                    if z.z_star >= zlo && z.z_star <= zhi {
                        report.zeros.push(z);
                    }
                }
            }
        }
        let (a, b) = (zlo.max(self.case.certified.0), zhi.min(self.case.certified.1));
        if a < b {
            let cert = classify_regime(p, (a, b), self.case.slow)?;
            let plan = SweepPlan::new(cert, (a, b), self.case.omega)?.with_acceleration(accelerate);
            let mut space = p.clone();
            let part = sweep_interval(&mut space, &plan, opts)?;
            report.merge(part, 1e-10);
        }
        report.normalize(1e-10);
        Ok(report)
    }

    /// The target function y in x, from the oracle's independent evaluators.
    pub fn oracle_function(&self) -> Result<Evaluator> {
        Ok(match self.params {
            FamilyParams::Legendre { n } => std::sync::Arc::new(oracle::legendre_p(n)),
            FamilyParams::Hermite { n } => std::sync::Arc::new(oracle::hermite_psi(n)),
            FamilyParams::Bessel { mu } => std::sync::Arc::new(oracle::bessel_j(mu)),
            FamilyParams::Cylinder { mu, alpha } => std::sync::Arc::new(oracle::cylinder_c(mu, alpha)),
            FamilyParams::Kummer { a, b } => std::sync::Arc::new(oracle::kummer_m(a, b)),
            FamilyParams::Coulomb { l, eta } => std::sync::Arc::new(oracle::coulomb_neutral_checked(l, eta)?),
        })
    }

    /// The companion w in x, whose zeros are the poles of h.
    pub fn companion_function(&self) -> Result<Evaluator> {
        let lower = |mu: f64| if mu >= 0.5 { mu - 1.0 } else { mu + 1.0 };
        Ok(match self.params {
            FamilyParams::Legendre { n } => std::sync::Arc::new(oracle::legendre_p(n + 1)),
            FamilyParams::Hermite { n } => std::sync::Arc::new(oracle::hermite_psi(n + 1)),
            FamilyParams::Bessel { mu } => std::sync::Arc::new(oracle::bessel_j(lower(mu))),
            FamilyParams::Cylinder { mu, alpha } => std::sync::Arc::new(oracle::cylinder_c(lower(mu), alpha)),
            FamilyParams::Kummer { a, b } => std::sync::Arc::new(oracle::kummer_m(a - 1.0, b)),
            FamilyParams::Coulomb { l, eta } => std::sync::Arc::new(oracle::coulomb_neutral_checked(l - 1.0, eta)?),
        })
    }

    /// Grid step for sign scans in x, a fraction of the smallest zero spacing.
    pub fn oracle_grid_step(&self, interval: (f64, f64)) -> f64 {
        match self.params {
            FamilyParams::Legendre { n } => 0.25 / ((n * (n + 1)) as f64).sqrt().max(1.0) / 4.0,
            FamilyParams::Hermite { n } => std::f64::consts::PI / (16.0 * ((2 * n + 1) as f64).sqrt()),
            FamilyParams::Kummer { .. } => (interval.1 - interval.0) / 20_000.0,
            FamilyParams::Coulomb { l, eta } => {
                let s = (l * l + eta * eta).sqrt();
                0.02 * l / s
            }
            _ => std::f64::consts::PI / 40.0,
        }
    }

    /// Oracle zeros of y in the x-interval (default interval when `None`).
    pub fn reference_zeros(&self, interval: Option<(f64, f64)>) -> Result<Vec<f64>> {
        let (lo, hi) = interval.unwrap_or_else(|| self.default_interval());
        let positive = match self.params {
            FamilyParams::Legendre { n } => Some((oracle::legendre_zeros(n)?, n % 2 == 1)),
            FamilyParams::Hermite { n } => Some((oracle::hermite_zeros(n)?, n % 2 == 1)),
            _ => None,
        };
        if let Some((pos, odd)) = positive {
            let mut all: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
            if odd {
                all.push(0.0);
            }
            all.extend(pos);
            all.retain(|&x| x >= lo && x <= hi);
            return Ok(all);
        }
        let lo = lo.max(X_FLOOR);
        let cfg = OracleConfig::new(self.oracle_grid_step((lo, hi)), {
            let f = self.oracle_function()?;
            move |x| f(x)
        });
        oracle::scan_and_bisect(&cfg, lo, hi)
    }

    /// Zeros of the companion w in the x-interval.
    pub fn reference_poles(&self, interval: (f64, f64)) -> Result<Vec<f64>> {
        let (lo, hi) = (interval.0.max(X_FLOOR), interval.1);
        let f = self.companion_function()?;
        let cfg = OracleConfig::new(self.oracle_grid_step((lo, hi)), move |x| f(x));
        oracle::scan_and_bisect(&cfg, lo, hi)
    }

    /// Compares a sweep with the oracle zeros over the same interval.
    pub fn audit(&self, report: &SweepReport<f64>, interval: Option<(f64, f64)>) -> Result<AuditRecord> {
        let reference = self.reference_zeros(interval)?;
        let computed: Vec<f64> = report.zeros.iter().map(|z| z.x_star).collect();
        Ok(oracle::audit_zeros(&computed, &reference, 1e-8))
    }
}

fn reflect(z: &ZeroResult<f64>) -> ZeroResult<f64> {
    ZeroResult {
        z_star: -z.z_star,
        x_star: -z.x_star,
        history: z.history.iter().map(|v| -v).collect(),
        ..z.clone()
    }
}

impl FromStr for FamilyParams {
    type Err = Error;

    /// Parses `family:key=value,...`, e.g. `bessel:mu=2.5` or `kummer:a=-2,b=1`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = std::collections::HashMap::new();
        for part in rest.split([',', ';']).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::UnsupportedParameter(format!("expected key=value, got {part}")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::UnsupportedParameter(format!("bad number {v}")))?;
            kv.insert(k.trim().to_ascii_lowercase(), v);
        }
        let get = |k: &str| {
            kv.get(k).copied().ok_or_else(|| Error::UnsupportedParameter(format!("{name} needs parameter {k}")))
        };
        let degree = |v: f64| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(Error::UnsupportedParameter(format!("degree must be a positive integer, got {v}")))
            }
        };
        let params = match name.trim().to_ascii_lowercase().as_str() {
            "legendre" => FamilyParams::Legendre { n: degree(get("n")?)? },
            "hermite" => FamilyParams::Hermite { n: degree(get("n")?)? },
            "bessel" => FamilyParams::Bessel { mu: get("mu")? },
            "cylinder" => FamilyParams::Cylinder { mu: get("mu")?, alpha: get("alpha").unwrap_or(0.0) },
            "kummer" => FamilyParams::Kummer { a: get("a")?, b: get("b")? },
            "coulomb" => FamilyParams::Coulomb { l: get("l")?, eta: get("eta").unwrap_or(0.0) },
            other => return Err(Error::UnsupportedParameter(format!("unknown family {other}"))),
        };
        params.validate()?;
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::RegimeKind;
    use std::f64::consts::PI;

    fn xs(f: &Family, interval: Option<(f64, f64)>) -> Vec<f64> {
        let r = f.sweep(interval, &f.default_options(), true).unwrap();
        r.zeros.iter().map(|z| z.x_star).collect()
    }

    #[test]
    fn legendre_five() {
        let f = Family::new(FamilyParams::Legendre { n: 5 }).unwrap();
        let got = xs(&f, None);
        let want = [-0.906179845938664, -0.538469310105683, 0.0, 0.538469310105683, 0.906179845938664];
        assert_eq!(got.len(), 5);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{g} vs {w}");
        }
        let cert = classify_regime(f.problem(), (0.0, f.case().certified.1), None).unwrap();
        assert_eq!(cert.kind, RegimeKind::DecreasingAbsRLt1);
    }

    #[test]
    fn legendre_two_and_hermite_four() {
        let f = Family::new(FamilyParams::Legendre { n: 2 }).unwrap();
        assert_eq!(xs(&f, Some((0.0, 1.0))), vec![0.5773502691896258]);
        let f = Family::new(FamilyParams::Hermite { n: 4 }).unwrap();
        let got = xs(&f, Some((0.0, 10.0)));
        assert_eq!(got.len(), 2);
        assert!((got[0] - 0.524647623275290).abs() < 1e-14);
        assert!((got[1] - 1.650680123885785).abs() < 1e-14);
    }

    #[test]
    fn bessel_half_order() {
        let f = Family::new(FamilyParams::Bessel { mu: 0.5 }).unwrap();
        let got = xs(&f, Some((1.0, 10.0)));
        assert_eq!(got.len(), 3);
        for (k, g) in got.iter().enumerate() {
            assert!((g - (k + 1) as f64 * PI).abs() < 1e-12);
        }
        let f = Family::new(FamilyParams::Bessel { mu: -0.5 }).unwrap();
        let got = xs(&f, Some((0.5, 10.0)));
        assert_eq!(got.len(), 3);
        assert!((got[0] - 0.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn bessel_zero_order() {
        let f = Family::new(FamilyParams::Bessel { mu: 0.0 }).unwrap();
        let got = xs(&f, Some((2.0, 6.0)));
        assert_eq!(got.len(), 2);
        assert!((got[0] - 2.404825557695773).abs() < 1e-13);
        assert!((got[1] - 5.520078110286311).abs() < 1e-13);
    }

    #[test]
    fn kummer_quadratic() {
        let f = Family::new(FamilyParams::Kummer { a: -2.0, b: 1.0 }).unwrap();
        let got = xs(&f, None);
        assert_eq!(got.len(), 2);
        assert!((got[0] - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert!((got[1] - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn kummer_small_b_reaches_negative_z() {
        // M(-2, b, x) vanishes at (b+1) -+ sqrt(b+1); the first zero sits at z < 0.
        let b = 0.1;
        assert!(Family::new(FamilyParams::Kummer { a: -2.0, b }).is_err());
        let f = Family::new_experimental(FamilyParams::Kummer { a: -2.0, b }).unwrap();
        let got = xs(&f, None);
        assert_eq!(got.len(), 2);
        assert!((got[0] - (1.1 - 1.1f64.sqrt())).abs() < 1e-13);
        assert!((got[1] - (1.1 + 1.1f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn coulomb_neutral() {
        let f = Family::new(FamilyParams::Coulomb { l: 1.0, eta: 0.0 }).unwrap();
        let got = xs(&f, Some((1.0, 20.0)));
        assert_eq!(got.len(), 5);
        assert!((got[0] - 4.493409457909064).abs() < 1e-12);
    }

    #[test]
    fn parse_params() {
        let p: FamilyParams = "kummer:a=-2,b=1".parse().unwrap();
        assert_eq!(p, FamilyParams::Kummer { a: -2.0, b: 1.0 });
        assert!("legendre:n=0".parse::<FamilyParams>().is_err());
        assert!("bessel:mu=-1.5".parse::<FamilyParams>().is_err());
        assert!(Family::new(FamilyParams::Kummer { a: -2.0, b: 0.1 }).is_err());
    }
}
