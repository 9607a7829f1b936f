//! Bracketing and sweeping.
//!
//! A sweep certifies the drift regime on an interval, picks the first guess from the
//! endpoint (or from the zero of `r`), then walks from zero to zero with `pi/2` shifts in z.
//! Each converged zero seeds the next guess. When `Omega = 1 + r' - r^2` is monotone in the
//! right sense, the previous gap replaces `pi/2` from the fourth zero on.

use std::fmt;

use crate::error::{Error, Result};
use crate::riccati::{solve_in, IterationOptions, Method, RiccatiProblem, RiccatiSpace, Sample, Termination, ZeroResult};
use crate::scalar::{c, Scalar};

/// `+1` for `x >= 0`, `-1` otherwise.
pub fn xi1<T: Scalar>(x: T) -> T {
    if x >= T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

/// `+1` for `x > 0`, `-1` otherwise.
pub fn xi2<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

/// Which convergence theorem covers an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    /// `r' <= 0`, `0 < r < 1`.
    DecreasingRPos,
    /// `r' <= 0`, `-1 < r < 0`.
    DecreasingRNeg,
    /// `r' <= 0`, `|r| < 1`, `r` vanishing at most at an endpoint (or identically).
    DecreasingAbsRLt1,
    /// `r' <= 0`, `|r| < 1`, one interior zero `z_r`.
    RHasUniqueZero,
    /// `0 <= r' < k1`, `0 < |r| < k2` with `8 k2^2 + 6 k1 - 3 < 0`.
    SlowlyIncreasingR,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sign of the drift over a certified interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriftSign {
    Positive,
    Negative,
    /// `r` is identically zero.
    Vanishing,
    /// One sign change at `z_r`.
    SignChange,
}

/// A checked statement that one of the convergence theorems applies on `interval`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeCertificate<T> {
    pub kind: RegimeKind,
    pub interval: (T, T),
    pub drift: DriftSign,
    pub k1: Option<T>,
    pub k2: Option<T>,
    pub r_zero: Option<T>,
}

impl<T: Scalar> RegimeCertificate<T> {
    /// Checks `0 < k2 <= 1` and `8 k2^2 + 6 k1 - 3 < 0`.
    pub fn slow_constants_valid(k1: T, k2: T) -> bool {
        k2 > T::zero() && k2 <= T::one() && c::<T>(8.0) * k2 * k2 + c::<T>(6.0) * k1 - c::<T>(3.0) < T::zero()
    }
}

const CLASSIFY_SAMPLES: usize = 400;

/// Classifies the drift of `problem` on the closed z-interval `interval`.
///
/// `r` and `r'` are sampled on a uniform grid; `slow` carries the `(k1, k2)` constants a family
/// declares for increasing drifts. Sampling is a check of the declared monotonicity facts, not a
/// proof, so families only call this on intervals their case analysis already covers.
pub fn classify_regime<T: Scalar>(
    problem: &RiccatiProblem<T>,
    interval: (T, T),
    slow: Option<(T, T)>,
) -> Result<RegimeCertificate<T>> {
    let (lo, hi) = interval;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
    }
    let slack = c::<T>(1e-12);
    let zero_tol = c::<T>(1e-14);
    let mut r_min = T::infinity();
    let mut r_max = T::neg_infinity();
    let mut abs_max = T::zero();
    let mut rdot_max = T::neg_infinity();
    let mut interior_pos = false;
    let mut interior_neg = false;
    let n = CLASSIFY_SAMPLES;
    for i in 0..=n {
        let z = lo + (hi - lo) * T::from_count(i) / T::from_count(n);
        let r = problem.r(z);
        let rd = problem.r_dot(z);
        if !r.is_finite() || !rd.is_finite() {
            return Err(Error::Unsupported(format!("drift not finite at z = {}", z.as_f64())));
        }
        r_min = r_min.min(r);
        r_max = r_max.max(r);
        abs_max = abs_max.max(r.abs());
        rdot_max = rdot_max.max(rd);
        if i > 0 && i < n {
            interior_pos |= r > zero_tol;
            interior_neg |= r < -zero_tol;
        }
    }
    let decreasing = rdot_max <= slack;
    let cert = |kind, drift, k1: Option<T>, k2: Option<T>, r_zero| RegimeCertificate {
        kind,
        interval,
        drift,
        k1,
        k2,
        r_zero,
    };
    if abs_max <= zero_tol {
        return Ok(cert(RegimeKind::DecreasingAbsRLt1, DriftSign::Vanishing, None, None, None));
    }
    let drift = match (interior_pos, interior_neg) {
        (true, true) => DriftSign::SignChange,
        (true, false) => DriftSign::Positive,
        (false, true) => DriftSign::Negative,
        (false, false) => DriftSign::Vanishing,
    };
    if decreasing {
        if abs_max >= T::one() + slack {
            return Err(Error::Unsupported(format!(
                "decreasing drift reaches |r| = {} >= 1 on [{}, {}]",
                abs_max.as_f64(),
                lo.as_f64(),
                hi.as_f64()
            )));
        }
        return Ok(match drift {
            DriftSign::SignChange => {
                let zr = bisect_r_zero(problem, lo, hi);
                cert(RegimeKind::RHasUniqueZero, drift, None, None, Some(zr))
            }
            DriftSign::Positive if r_min <= zero_tol => cert(RegimeKind::DecreasingAbsRLt1, drift, None, None, None),
            DriftSign::Negative if r_max >= -zero_tol => cert(RegimeKind::DecreasingAbsRLt1, drift, None, None, None),
            DriftSign::Positive => cert(RegimeKind::DecreasingRPos, drift, None, None, None),
            DriftSign::Negative => cert(RegimeKind::DecreasingRNeg, drift, None, None, None),
            DriftSign::Vanishing => cert(RegimeKind::DecreasingAbsRLt1, drift, None, None, None),
        });
    }
    if let Some((k1, k2)) = slow {
        let nonzero = (r_min > T::zero()) || (r_max < T::zero());
        if RegimeCertificate::slow_constants_valid(k1, k2) && rdot_max < k1 && abs_max < k2 && nonzero {
            return Ok(cert(RegimeKind::SlowlyIncreasingR, drift, Some(k1), Some(k2), None));
        }
    }
    Err(Error::Unsupported(format!(
        "drift increases (max r' = {:e}) on [{}, {}] without admissible (k1, k2)",
        rdot_max.as_f64(),
        lo.as_f64(),
        hi.as_f64()
    )))
}

fn bisect_r_zero<T: Scalar>(problem: &RiccatiProblem<T>, lo: T, hi: T) -> T {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = (a + b) * c::<T>(0.5);
        if m <= a || m >= b {
            break;
        }
        if problem.r(m) > T::zero() {
            a = m;
        } else {
            b = m;
        }
    }
    (a + b) * c::<T>(0.5)
}

/// Direction in which a sweep walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Increasing z; used where `r < 0`.
    Forward,
    /// Decreasing z; used where `r > 0`.
    Backward,
}

impl Direction {
    fn sign<T: Scalar>(self) -> T {
        match self {
            Direction::Forward => T::one(),
            Direction::Backward => -T::one(),
        }
    }
}

/// Which guess table drives the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessRule {
    /// Between singularities, `r > 0`: `z_{j+1} - pi/2`.
    TableNonzeroRPos,
    /// Between singularities, `r < 0`: `z_{j-1} + pi/2`.
    TableNonzeroRNeg,
    /// `r` has a zero `z_r` inside the bounds; walks outward from it.
    TableRZero,
    /// Closed interval with regular endpoints: first guess from `h` at the endpoint.
    TableClosedInterval,
}

/// Declared monotonicity of `Omega = 1 + r' - r^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaTrend {
    Increasing,
    Decreasing,
    Undeclared,
}

/// Where a guess came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessSource {
    /// First guess from `h` at a regular endpoint.
    Endpoint,
    /// First guess `pi/2` away from an endpoint where `h` is singular.
    SingularEndpoint,
    /// Previous zero shifted by the plain step.
    Step,
    /// Previous zero shifted by the previous gap.
    Accelerated,
    /// Plain step after an accelerated guess failed.
    Retry,
    /// One of the pair straddling `z_r`.
    RZero,
    /// Family-specific bracket near the origin.
    Bespoke,
}

/// Guess bookkeeping for one solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuessRecord<T> {
    pub z: T,
    pub source: GuessSource,
    /// `h(guess)` has the sign the theory prescribes for the walking direction.
    pub placement_ok: bool,
}

/// Acceleration state: gaps between the most recent zeros of the current walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelState<T> {
    pub last_two_gaps: [Option<T>; 2],
}

impl<T> Default for AccelState<T> {
    fn default() -> Self {
        Self { last_two_gaps: [None, None] }
    }
}

/// Everything a sweep needs besides the evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan<T> {
    pub certificate: RegimeCertificate<T>,
    pub direction: Direction,
    pub guess_rule: GuessRule,
    /// `(a', b')` in z.
    pub bounds: (T, T),
    pub r_zero: Option<T>,
    pub omega: OmegaTrend,
    /// Use gap-based guesses where `omega` allows.
    pub accelerate: bool,
    /// Plain shift between zeros: `pi/2`, or `3 pi/4` when `r` vanishes identically and zeros
    /// sit exactly `pi` apart with poles halfway.
    pub step: T,
    pub accel: AccelState<T>,
}

impl<T: Scalar> SweepPlan<T> {
    /// Plan for `bounds` under `certificate`.
    pub fn new(certificate: RegimeCertificate<T>, bounds: (T, T), omega: OmegaTrend) -> Result<Self> {
        let (lo, hi) = bounds;
        if !(lo < hi) {
            return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
        }
        let half_pi = T::FRAC_PI_2();
        let (direction, guess_rule, r_zero) = match certificate.drift {
            DriftSign::Positive => (Direction::Backward, GuessRule::TableClosedInterval, None),
            DriftSign::Negative | DriftSign::Vanishing => (Direction::Forward, GuessRule::TableClosedInterval, None),
            DriftSign::SignChange => {
                let zr = certificate.r_zero.ok_or_else(|| Error::Unsupported("sign change without z_r".into()))?;
                if hi <= zr {
                    (Direction::Backward, GuessRule::TableClosedInterval, None)
                } else if zr <= lo {
                    (Direction::Forward, GuessRule::TableClosedInterval, None)
                } else {
                    (Direction::Forward, GuessRule::TableRZero, Some(zr))
                }
            }
        };
        let step = if certificate.drift == DriftSign::Vanishing { c::<T>(1.5) * half_pi } else { half_pi };
        Ok(Self {
            certificate,
            direction,
            guess_rule,
            bounds,
            r_zero,
            omega,
            accelerate: true,
            step,
            accel: AccelState::default(),
        })
    }

    pub fn with_acceleration(mut self, on: bool) -> Self {
        self.accelerate = on;
        self
    }

    /// Whether the declared `Omega` trend licenses gap-based guesses in `direction`.
    pub fn acceleration_licensed(&self, direction: Direction) -> bool {
        self.accelerate
            && self.certificate.drift != DriftSign::Vanishing
            && matches!(
                (direction, self.omega),
                (Direction::Forward, OmegaTrend::Decreasing) | (Direction::Backward, OmegaTrend::Increasing)
            )
    }
}

/// Plain next guess `previous_zero +- step`.
///
/// Returns `GuessOutOfBounds` when the guess leaves the plan's bounds, which ends a walk.
pub fn next_guess<T: Scalar>(plan: &SweepPlan<T>, direction: Direction, previous_zero: T) -> Result<T> {
    let g = previous_zero + direction.sign::<T>() * plan.step;
    let (lo, hi) = plan.bounds;
    if g < lo || g > hi {
        Err(Error::GuessOutOfBounds { guess: g.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() })
    } else {
        Ok(g)
    }
}

/// `|h| <= 1e-14 (1 + |r|)`: the endpoint is taken as a zero.
pub fn endpoint_is_zero<T: Scalar>(h: T, r: T) -> bool {
    h.is_finite() && h.abs() <= c::<T>(1e-14) * (T::one() + r.abs())
}

/// First guess from the closed-interval table.
///
/// `r > 0` walks back from `b'`: `b' - (pi/2)(1 - xi1(h(b')))/2`; `r < 0` walks forward from
/// `a'`: `a' + (pi/2)(1 + xi2(h(a')))/2`. An endpoint zero is its own guess, and a pole at the
/// endpoint gives the `pi/2` shift of the singular-endpoint table.
pub fn first_guess_closed_interval<T: Scalar>(
    plan: &SweepPlan<T>,
    direction: Direction,
    h_at_endpoint: T,
    r_at_endpoint: T,
) -> (T, GuessSource) {
    let half_pi = T::FRAC_PI_2();
    let two = c::<T>(2.0);
    let (lo, hi) = plan.bounds;
    match direction {
        Direction::Backward => {
            if !h_at_endpoint.is_finite() {
                (hi - half_pi, GuessSource::SingularEndpoint)
            } else if endpoint_is_zero(h_at_endpoint, r_at_endpoint) {
                (hi, GuessSource::Endpoint)
            } else {
                (hi - half_pi * (T::one() - xi1(h_at_endpoint)) / two, GuessSource::Endpoint)
            }
        }
        Direction::Forward => {
            if !h_at_endpoint.is_finite() {
                (lo + half_pi, GuessSource::SingularEndpoint)
            } else if endpoint_is_zero(h_at_endpoint, r_at_endpoint) {
                (lo, GuessSource::Endpoint)
            } else {
                (lo + half_pi * (T::one() + xi2(h_at_endpoint)) / two, GuessSource::Endpoint)
            }
        }
    }
}

/// Guesses for the two zeros straddling `z_r`, given `h(z_r)` (non-finite when singular).
pub fn guess_around_r_zero<T: Scalar>(z_r: T, h_at_zr: T) -> (T, T) {
    let half_pi = T::FRAC_PI_2();
    if !h_at_zr.is_finite() {
        (z_r - half_pi, z_r + half_pi)
    } else if h_at_zr < T::zero() {
        (z_r - half_pi, z_r)
    } else {
        (z_r, z_r + half_pi)
    }
}

/// Gap-based guess from the zeros found so far in walking order (most recent last).
///
/// Uses the previous gap when the plan licenses acceleration in `direction`, else the plain step.
pub fn accelerate_guess<T: Scalar>(plan: &SweepPlan<T>, direction: Direction, zeros: &[T]) -> (T, GuessSource) {
    let last = zeros[zeros.len() - 1];
    let plain = (last + direction.sign::<T>() * plan.step, GuessSource::Step);
    if zeros.len() < 2 || !plan.acceleration_licensed(direction) {
        return plain;
    }
    let gap = (last - zeros[zeros.len() - 2]).abs();
    if gap <= plan.step {
        return plain;
    }
    (last + direction.sign::<T>() * gap, GuessSource::Accelerated)
}

/// Result of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport<T> {
    /// Zeros in increasing z.
    pub zeros: Vec<ZeroResult<T>>,
    pub guesses_used: Vec<GuessRecord<T>>,
    pub certificates: Vec<RegimeCertificate<T>>,
    pub missed_zero_audit: Option<crate::oracle::AuditRecord>,
}

impl<T: Scalar> Default for SweepReport<T> {
    fn default() -> Self {
        Self { zeros: Vec::new(), guesses_used: Vec::new(), certificates: Vec::new(), missed_zero_audit: None }
    }
}

impl<T: Scalar> SweepReport<T> {
    pub fn total_iterations(&self) -> usize {
        self.zeros.iter().map(|z| z.iterations).sum()
    }

    pub fn x_values(&self) -> Vec<T> {
        self.zeros.iter().map(|z| z.x_star).collect()
    }

    pub fn z_values(&self) -> Vec<T> {
        self.zeros.iter().map(|z| z.z_star).collect()
    }

    /// Sorts by z and drops zeros closer than `tol` (relative to `max(1, |z|)`) to a predecessor.
    pub fn normalize(&mut self, tol: T) {
        self.zeros.sort_by(|a, b| a.z_star.partial_cmp(&b.z_star).expect("finite zeros"));
        self.zeros.dedup_by(|b, a| (b.z_star - a.z_star).abs() <= tol * T::one().max(a.z_star.abs()));
    }

    /// Appends another report, keeping z order.
    pub fn merge(&mut self, other: SweepReport<T>, tol: T) {
        self.zeros.extend(other.zeros);
        self.guesses_used.extend(other.guesses_used);
        self.certificates.extend(other.certificates);
        self.normalize(tol);
    }
}

/// Restricts a space to a z-window so that iterates leaving it stop with `LeftDomain`.
struct Windowed<'a, S: ?Sized, T> {
    inner: &'a mut S,
    lo: T,
    hi: T,
}

impl<T: Scalar, S: RiccatiSpace<T> + ?Sized> RiccatiSpace<T> for Windowed<'_, S, T> {
    fn sample(&mut self, p: T) -> Result<Sample<T>> {
        self.inner.sample(p)
    }
    fn to_z(&self, p: T) -> T {
        self.inner.to_z(p)
    }
    fn from_z(&self, z: T) -> T {
        self.inner.from_z(z)
    }
    fn to_x(&self, p: T) -> T {
        self.inner.to_x(p)
    }
    fn contains(&self, p: T) -> bool {
        let z = self.inner.to_z(p);
        self.inner.contains(p) && z > self.lo && z < self.hi
    }
    fn displace(&self, p: T, dz: T) -> T {
        self.inner.displace(p, dz)
    }
}

struct Walker<'a, T: Scalar, S: RiccatiSpace<T> + ?Sized> {
    space: &'a mut S,
    plan: &'a SweepPlan<T>,
    opts: &'a IterationOptions<T>,
    report: &'a mut SweepReport<T>,
}

impl<T: Scalar, S: RiccatiSpace<T> + ?Sized> Walker<'_, T, S> {
    /// Iterates leaving this z-window stop the solve. TOM iterates never pass their zero,
    /// so crossing the far bound already means no zero is left ahead; the baselines may
    /// overshoot and get a margin of pi there.
    fn window(&self, direction: Direction) -> (T, T) {
        let (lo, hi) = self.plan.bounds;
        let pi = T::PI();
        if self.opts.method != Method::Tom {
            return (lo - pi, hi + pi);
        }
        let tol = |z: T| c::<T>(1e-12) * T::one().max(z.abs());
        match direction {
            Direction::Forward => (lo - pi, hi + tol(hi)),
            Direction::Backward => (lo - tol(lo), hi + pi),
        }
    }

    fn in_bounds(&self, z: T) -> bool {
        let (lo, hi) = self.plan.bounds;
        let tol = c::<T>(1e-12) * T::one().max(z.abs());
        z >= lo - tol && z <= hi + tol
    }

    /// Sign check of `h(guess)`: forward walks approach zeros from below (`h < 0`), backward
    /// walks from above (`h > 0`).
    fn placement_ok(&mut self, z: T, direction: Direction) -> Result<bool> {
        let p = self.space.from_z(z);
        if !self.space.contains(p) {
            return Ok(false);
        }
        let h = self.space.sample(p)?.h;
        Ok(h.is_finite()
            && (h == T::zero()
                || match direction {
                    Direction::Forward => h < T::zero(),
                    Direction::Backward => h > T::zero(),
                }))
    }

    fn solve(&mut self, z0: T, direction: Direction, source: GuessSource, placement_ok: bool) -> Result<ZeroResult<T>> {
        let (lo, hi) = self.window(direction);
        let p0 = self.space.from_z(z0);
        let mut win = Windowed { inner: &mut *self.space, lo, hi };
        let res = solve_in(&mut win, p0, self.opts)
            .map_err(|e| Error::Solve { guess: z0.as_f64(), cause: Box::new(e) })?;
        self.report.guesses_used.push(GuessRecord { z: z0, source, placement_ok });
        Ok(res)
    }

    /// Walks from `first` in `direction`, collecting zeros inside the bounds.
    fn walk(&mut self, direction: Direction, first: T, source: GuessSource) -> Result<Vec<T>> {
        let mut found: Vec<T> = Vec::new();
        let mut guess = first;
        let mut src = source;
        loop {
            if !self.in_bounds(guess) && guess_beyond(self.plan.bounds, guess, direction) {
                break;
            }
            let ok = self.placement_ok(guess, direction)?;
            if src == GuessSource::Accelerated && !ok {
                // Off the prescribed side: take the plain step instead.
                guess = found[found.len() - 1] + direction.sign::<T>() * self.plan.step;
                src = GuessSource::Retry;
                continue;
            }
            let res = self.solve(guess, direction, src, ok)?;
            match res.termination {
                Termination::Converged => {
                    let z = res.z_star;
                    if !self.in_bounds(z) {
                        if guess_beyond(self.plan.bounds, z, direction) {
                            break;
                        }
                        // Converged behind the walk's start: nothing in bounds from this guess.
                        return Err(Error::SolveStopped {
                            guess: guess.as_f64(),
                            z: z.as_f64(),
                            termination: "converged outside the sweep bounds behind the walk".into(),
                        });
                    }
                    if let Some(&last) = found.last() {
                        let advanced = (z - last) * direction.sign::<T>()
                            > c::<T>(1e-10) * T::one().max(z.abs());
                        if !advanced {
                            return Err(Error::SolveStopped {
                                guess: guess.as_f64(),
                                z: z.as_f64(),
                                termination: "sweep did not advance".into(),
                            });
                        }
                    }
                    found.push(z);
                    self.report.zeros.push(res);
                    let (g, s) = if found.len() >= 3 {
                        accelerate_guess(self.plan, direction, &found)
                    } else {
                        (z + direction.sign::<T>() * self.plan.step, GuessSource::Step)
                    };
                    guess = g;
                    src = s;
                }
                Termination::LeftDomain => break,
                Termination::SingularityHit if src == GuessSource::Accelerated => {
                    guess = found[found.len() - 1] + direction.sign::<T>() * self.plan.step;
                    src = GuessSource::Retry;
                }
                t => {
                    return Err(Error::SolveStopped {
                        guess: guess.as_f64(),
                        z: res.z_star.as_f64(),
                        termination: t.to_string(),
                    })
                }
            }
        }
        Ok(found)
    }
}

fn guess_beyond<T: Scalar>(bounds: (T, T), z: T, direction: Direction) -> bool {
    let tol = c::<T>(1e-12) * T::one().max(z.abs());
    match direction {
        Direction::Forward => z > bounds.1 + tol,
        Direction::Backward => z < bounds.0 - tol,
    }
}

/// Finds every zero in `plan.bounds`.
///
/// Solver failures are returned with the guess that caused them; leaving the bounds ends a walk.
pub fn sweep_interval<T: Scalar, S: RiccatiSpace<T> + ?Sized>(
    space: &mut S,
    plan: &SweepPlan<T>,
    opts: &IterationOptions<T>,
) -> Result<SweepReport<T>> {
    opts.validate()?;
    let mut report = SweepReport { certificates: vec![plan.certificate], ..SweepReport::default() };
    let (lo, hi) = plan.bounds;
    {
        let mut walker = Walker { space: &mut *space, plan, opts, report: &mut report };
        match plan.guess_rule {
            GuessRule::TableRZero => {
                let zr = plan.r_zero.expect("r-zero plans carry z_r");
                let p = walker.space.from_z(zr);
                let h = walker.space.sample(p)?.h;
                let (gl, gr) = guess_around_r_zero(zr, h);
                // Left of z_r the drift is positive: walk backward; right of it, forward.
                if gl >= lo - plan.step {
                    walker.walk(Direction::Backward, gl, GuessSource::RZero)?;
                }
                if gr <= hi + plan.step {
                    walker.walk(Direction::Forward, gr, GuessSource::RZero)?;
                }
            }
            _ => {
                let dir = plan.direction;
                let end = match dir {
                    Direction::Forward => lo,
                    Direction::Backward => hi,
                };
                let p = walker.space.from_z(end);
                let s = if walker.space.contains(p) {
                    walker.space.sample(p)?
                } else {
                    Sample { h: T::infinity(), r: T::zero(), r_dot: T::zero() }
                };
                let (g, src) = first_guess_closed_interval(plan, dir, s.h, s.r);
                walker.walk(dir, g, src)?;
            }
        }
    }
    report.normalize(c::<T>(1e-10));
    Ok(report)
}

/// Samples used to look for a starting point with `h < 0` in a bespoke region.
const BESPOKE_SAMPLES: usize = 512;

/// Finds the zero of `h` in `(lo, hi]` for a region known to hold at most one zero and one
/// pole, with `r > 0` and non-increasing.
///
/// Just left of a zero `h < 0`, and `h < 0` persists back to the pole (or to `lo` when there
/// is none), so any such point converges monotonically to the zero. The start is `guess` when
/// the family supplies one, otherwise the first sampled point with `h < 0`. Returns `None`
/// when no such point exists or the iteration ends outside `(lo, hi]`.
pub fn bespoke_first_zero<T: Scalar>(
    problem: &RiccatiProblem<T>,
    lo: T,
    hi: T,
    guess: Option<T>,
    opts: &IterationOptions<T>,
) -> Result<Option<ZeroResult<T>>> {
    if !(lo < hi) {
        return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
    }
    let negative = |z: T| -> Result<bool> {
        let h = problem.h(z)?;
        Ok(h.is_finite() && h < T::zero())
    };
    let mut seed = None;
    if let Some(g) = guess {
        if g > lo && g <= hi && negative(g)? {
            seed = Some(g);
        }
    }
    if seed.is_none() {
        for i in 1..=BESPOKE_SAMPLES {
            let z = lo + (hi - lo) * T::from_count(i) / T::from_count(BESPOKE_SAMPLES);
            if negative(z)? {
                seed = Some(z);
                break;
            }
        }
    }
    let Some(z0) = seed else { return Ok(None) };
    let mut space = problem.restricted(lo, hi + T::FRAC_PI_2());
    let res = solve_in(&mut space, z0, opts)?;
    if res.termination == Termination::Converged && res.z_star > lo && res.z_star <= hi {
        Ok(Some(res))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riccati::IterationOptions;

    fn tan_problem(shift: f64) -> RiccatiProblem<f64> {
        RiccatiProblem::new(move |z: f64| Ok((z + shift).tan()), |_| 0.0, (-1e3, 1e3)).with_r_dot(|_| 0.0)
    }

    #[test]
    fn sign_conventions() {
        assert_eq!(xi1(0.0), 1.0);
        assert_eq!(xi2(0.0), -1.0);
        assert_eq!(xi1(-2.5), -1.0);
        assert_eq!(xi2(3.0), 1.0);
    }

    #[test]
    fn closed_interval_first_guesses() {
        let cert = RegimeCertificate {
            kind: RegimeKind::DecreasingRPos,
            interval: (1.0, 10.0),
            drift: DriftSign::Positive,
            k1: None,
            k2: None,
            r_zero: None,
        };
        let plan = SweepPlan::new(cert, (1.0, 10.0), OmegaTrend::Undeclared).unwrap();
        let hp = std::f64::consts::FRAC_PI_2;
        assert_eq!(first_guess_closed_interval(&plan, Direction::Backward, 0.3, 0.5).0, 10.0);
        assert_eq!(first_guess_closed_interval(&plan, Direction::Backward, -0.3, 0.5).0, 10.0 - hp);
        assert_eq!(first_guess_closed_interval(&plan, Direction::Forward, -0.2, -0.5).0, 1.0);
        assert_eq!(first_guess_closed_interval(&plan, Direction::Forward, 0.2, -0.5).0, 1.0 + hp);
        assert_eq!(first_guess_closed_interval(&plan, Direction::Forward, f64::INFINITY, -0.5).0, 1.0 + hp);
    }

    #[test]
    fn r_zero_pairs() {
        let hp = std::f64::consts::FRAC_PI_2;
        assert_eq!(guess_around_r_zero(5.0, f64::INFINITY), (5.0 - hp, 5.0 + hp));
        assert_eq!(guess_around_r_zero(5.0, -0.4), (5.0 - hp, 5.0));
        assert_eq!(guess_around_r_zero(5.0, 0.0), (5.0, 5.0 + hp));
    }

    #[test]
    fn forward_step_and_acceleration() {
        let cert = RegimeCertificate {
            kind: RegimeKind::DecreasingRNeg,
            interval: (0.0f64, 10.0),
            drift: DriftSign::Negative,
            k1: None,
            k2: None,
            r_zero: None,
        };
        let plan = SweepPlan::new(cert, (0.0, 10.0), OmegaTrend::Decreasing).unwrap();
        let g = next_guess(&plan, Direction::Forward, 4.0).unwrap();
        assert!((g - 5.570796327).abs() < 1e-9);
        let (g, src) = accelerate_guess(&plan, Direction::Forward, &[2.0, 3.7]);
        assert!((g - 5.4).abs() < 1e-12);
        assert_eq!(src, GuessSource::Accelerated);
        assert!(matches!(next_guess(&plan, Direction::Forward, 9.5), Err(Error::GuessOutOfBounds { .. })));
        let plain = plan.clone().with_acceleration(false);
        assert_eq!(accelerate_guess(&plain, Direction::Forward, &[2.0, 3.7]).1, GuessSource::Step);
    }

    #[test]
    fn slow_constants() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert!(RegimeCertificate::slow_constants_valid(16.0 / (9.0 * pi2), 4.0 / (3.0 * std::f64::consts::PI)));
        assert!(RegimeCertificate::slow_constants_valid(2.0 / 9.0, 1.0 / 3.0));
        assert!(!RegimeCertificate::slow_constants_valid(0.4, 0.5));
    }

    #[test]
    fn sweeps_tangent_zeros() {
        // r = 0: zeros at k pi, poles halfway, step 3 pi / 4.
        let p = tan_problem(0.0);
        let cert = classify_regime(&p, (1.0, 10.0), None).unwrap();
        assert_eq!(cert.drift, DriftSign::Vanishing);
        let plan = SweepPlan::new(cert, (1.0, 10.0), OmegaTrend::Undeclared).unwrap();
        let rep = sweep_interval(&mut p.clone(), &plan, &IterationOptions::absolute(1e-12)).unwrap();
        let zs = rep.z_values();
        assert_eq!(zs.len(), 3);
        for (k, z) in zs.iter().enumerate() {
            assert!((z - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_decreasing_drift_walks_backward() {
        // h = tan-like ratio of J_{3/2}: use the spherical closed form through the problem API.
        let p = RiccatiProblem::new(
            |x: f64| {
                let j1 = x.sin() / (x * x) - x.cos() / x;
                let j0 = x.sin() / x;
                Ok(if j0 == 0.0 { f64::INFINITY } else { j1 / j0 })
            },
            |x: f64| 1.0 / x,
            (0.0, 1e4),
        )
        .with_r_dot(|x: f64| -1.0 / (x * x));
        let cert = classify_regime(&p, (2.0, 20.0), None).unwrap();
        assert_eq!(cert.kind, RegimeKind::DecreasingRPos);
        let plan = SweepPlan::new(cert, (2.0, 20.0), OmegaTrend::Increasing).unwrap();
        assert_eq!(plan.direction, Direction::Backward);
        let rep = sweep_interval(&mut p.clone(), &plan, &IterationOptions::absolute(1e-12)).unwrap();
        // Zeros of tan x = x in (2, 20).
        let want = [4.493409457909064, 7.725251836937707, 10.904121659428899, 14.066193912831473, 17.220755271930768];
        let got = rep.z_values();
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-11, "{g} vs {w}");
        }
    }
}
