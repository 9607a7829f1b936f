//! Riccati-ratio problems, the third-order step, baseline steps and the solve loop.
//!
//! A problem is a ratio `h(z)` satisfying `h' = 1 + h^2 - 2 r h`. Its zeros are the
//! zeros of the target function and its poles are the zeros of the companion.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Fallible scalar evaluator.
pub type FallibleFn<T> = Arc<dyn Fn(T) -> Result<T> + Send + Sync>;
/// Infallible scalar evaluator.
pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Iteration scheme used by the solve loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Third-order Riccati step.
    Tom,
    /// Newton's method on `h`.
    Newton,
    /// Second-order arctan step on `h`.
    Som,
    /// Fourth-order arctan step on the Liouville normal form.
    Fom,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Tom, Method::Newton, Method::Som, Method::Fom];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tom => "TOM",
            Method::Newton => "NEWTON",
            Method::Som => "SOM",
            Method::Fom => "FOM",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "TOM" => Ok(Method::Tom),
            "NEWTON" => Ok(Method::Newton),
            "SOM" => Ok(Method::Som),
            "FOM" => Ok(Method::Fom),
            other => Err(Error::UnsupportedParameter(format!("unknown method {other}"))),
        }
    }
}

/// Why a solve stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIter,
    SingularityHit,
    LeftDomain,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Termination::Converged => "converged",
            Termination::MaxIter => "max-iter",
            Termination::SingularityHit => "singularity-hit",
            Termination::LeftDomain => "left-domain",
        };
        f.write_str(s)
    }
}

/// Stopping and method options for a single solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationOptions<T> {
    /// Relative step tolerance measured in x, `|dx| <= rel_tol * |x|`; zero disables it.
    pub rel_tol: T,
    /// Absolute step tolerance measured in z, `|dz| < abs_tol`; zero disables it.
    pub abs_tol: T,
    pub max_iter: usize,
    pub method: Method,
}

impl<T: Scalar> IterationOptions<T> {
    pub fn relative(rel_tol: f64) -> Self {
        Self { rel_tol: c(rel_tol), abs_tol: T::zero(), max_iter: 60, method: Method::Tom }
    }

    pub fn absolute(abs_tol: f64) -> Self {
        Self { rel_tol: T::zero(), abs_tol: c(abs_tol), max_iter: 60, method: Method::Tom }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol >= T::zero()
            && self.abs_tol >= T::zero()
            && (self.rel_tol > T::zero() || self.abs_tol > T::zero())
            && self.max_iter >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedParameter("tolerances must be non-negative, not both zero, and max_iter >= 1".into()))
        }
    }
}

impl<T: Scalar> Default for IterationOptions<T> {
    fn default() -> Self {
        Self::absolute(1e-12)
    }
}

/// Outcome of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroResult<T> {
    pub z_star: T,
    pub x_star: T,
    pub iterations: usize,
    /// Iterates in z, starting with the initial guess.
    pub history: Vec<T>,
    /// `|h(z_star)|`.
    pub final_residual: T,
    pub termination: Termination,
}

impl<T: Scalar> ZeroResult<T> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn guess(&self) -> T {
        self.history[0]
    }

    /// True when the iterates approach `z_ref` monotonically from one side.
    ///
    /// Iterates within `floor` of `z_ref` are rounding noise and are ignored.
    pub fn is_monotone_toward(&self, z_ref: T, floor: T) -> bool {
        let mut side: Option<bool> = None;
        let mut last = T::infinity();
        for &z in &self.history {
            let e = z - z_ref;
            if e.abs() <= floor {
                break;
            }
            let s = e > T::zero();
            if *side.get_or_insert(s) != s || e.abs() >= last {
                return false;
            }
            last = e.abs();
        }
        true
    }
}

/// Evaluated Riccati data at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub h: T,
    pub r: T,
    pub r_dot: T,
}

/// A coordinate system in which the solve loop can iterate.
///
/// The native coordinate `p` is z for plain problems and x for the Taylor-backed
/// polynomial evaluators, whose steps are composed through the exact map.
pub trait RiccatiSpace<T: Scalar> {
    /// Riccati data at native point `p`. May advance internal evaluator state.
    fn sample(&mut self, p: T) -> Result<Sample<T>>;
    fn to_z(&self, p: T) -> T;
    fn from_z(&self, z: T) -> T;
    fn to_x(&self, p: T) -> T;
    fn contains(&self, p: T) -> bool;
    /// Native point displaced by `dz` in the z coordinate.
    fn displace(&self, p: T, dz: T) -> T {
        self.from_z(self.to_z(p) + dz)
    }
}

/// The ratio `h(z)` with its drift and coordinate maps.
#[derive(Clone)]
pub struct RiccatiProblem<T> {
    h: FallibleFn<T>,
    r: ScalarFn<T>,
    r_dot: Option<ScalarFn<T>>,
    z_of_x: ScalarFn<T>,
    x_of_z: ScalarFn<T>,
    domain_z: (T, T),
}

impl<T: Scalar> fmt::Debug for RiccatiProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiccatiProblem").field("domain_z", &self.domain_z).finish_non_exhaustive()
    }
}

impl<T: Scalar> RiccatiProblem<T> {
    /// Problem with identity coordinate map (z = x) and finite-difference drift derivative.
    pub fn new(
        h: impl Fn(T) -> Result<T> + Send + Sync + 'static,
        r: impl Fn(T) -> T + Send + Sync + 'static,
        domain_z: (T, T),
    ) -> Self {
        Self {
            h: Arc::new(h),
            r: Arc::new(r),
            r_dot: None,
            z_of_x: Arc::new(|x| x),
            x_of_z: Arc::new(|z| z),
            domain_z,
        }
    }

    pub fn with_r_dot(mut self, r_dot: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.r_dot = Some(Arc::new(r_dot));
        self
    }

    pub fn with_maps(
        mut self,
        z_of_x: impl Fn(T) -> T + Send + Sync + 'static,
        x_of_z: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        self.z_of_x = Arc::new(z_of_x);
        self.x_of_z = Arc::new(x_of_z);
        self
    }

    pub fn h(&self, z: T) -> Result<T> {
        (self.h)(z)
    }

    pub fn r(&self, z: T) -> T {
        (self.r)(z)
    }

    pub fn has_analytic_r_dot(&self) -> bool {
        self.r_dot.is_some()
    }

    /// `r'(z)`, analytic when supplied, otherwise a central difference.
    pub fn r_dot(&self, z: T) -> T {
        match &self.r_dot {
            Some(f) => f(z),
            None => {
                let d = c::<T>(1e-6).max(c::<T>(1e-8) * z.abs());
                (self.r(z + d) - self.r(z - d)) / (d + d)
            }
        }
    }

    /// `Omega = 1 + r' - r^2`, the coefficient of the Liouville normal form.
    pub fn omega(&self, z: T) -> T {
        let r = self.r(z);
        T::one() + self.r_dot(z) - r * r
    }

    pub fn z_of_x(&self, x: T) -> T {
        (self.z_of_x)(x)
    }

    pub fn x_of_z(&self, z: T) -> T {
        (self.x_of_z)(z)
    }

    pub fn domain_z(&self) -> (T, T) {
        self.domain_z
    }

    /// Same problem with `domain_z` narrowed to `(lo, hi)`.
    pub fn restricted(&self, lo: T, hi: T) -> Self {
        let mut p = self.clone();
        p.domain_z = (lo.max(self.domain_z.0), hi.min(self.domain_z.1));
        p
    }

    /// Companion problem `g = -1/h` with drift `-r`; its zeros are the poles of `h`.
    pub fn companion(&self) -> Self {
        let h = self.h.clone();
        let r = self.r.clone();
        let mut p = self.clone();
        p.h = Arc::new(move |z| {
            let v = h(z)?;
            Ok(if v == T::zero() { T::infinity() } else { -T::one() / v })
        });
        p.r = Arc::new(move |z| -r(z));
        if let Some(rd) = self.r_dot.clone() {
            p.r_dot = Some(Arc::new(move |z| -rd(z)));
        }
        p
    }
}

impl<T: Scalar> RiccatiSpace<T> for RiccatiProblem<T> {
    fn sample(&mut self, p: T) -> Result<Sample<T>> {
        Ok(Sample { h: self.h(p)?, r: self.r(p), r_dot: self.r_dot(p) })
    }
    fn to_z(&self, p: T) -> T {
        p
    }
    fn from_z(&self, z: T) -> T {
        z
    }
    fn to_x(&self, p: T) -> T {
        self.x_of_z(p)
    }
    fn contains(&self, p: T) -> bool {
        p > self.domain_z.0 && p < self.domain_z.1
    }
    fn displace(&self, p: T, dz: T) -> T {
        p + dz
    }
}

/// Coefficient functions of the first-order system `y' = c1 y + c2 w`, `w' = c3 w + c4 y`.
#[derive(Clone)]
pub struct CoupledSystem<T> {
    pub c1: ScalarFn<T>,
    pub c2: ScalarFn<T>,
    pub c3: ScalarFn<T>,
    pub c4: ScalarFn<T>,
}

impl<T: Scalar> CoupledSystem<T> {
    /// `k(x) = sqrt(-c4/c2)`.
    pub fn k(&self, x: T) -> T {
        (-(self.c4)(x) / (self.c2)(x)).sqrt()
    }

    /// Whether `c2 c4 < 0` at `x`, the hypothesis guaranteeing interlacing zeros.
    pub fn admissible_at(&self, x: T) -> bool {
        let (c2, c4) = ((self.c2)(x), (self.c4)(x));
        c2 != T::zero() && c4 != T::zero() && c2 * c4 < T::zero()
    }

    /// `dz/dx = |c2| k`.
    pub fn dz_dx(&self, x: T) -> T {
        (self.c2)(x).abs() * self.k(x)
    }

    /// Drift `(c3 - k'/k - c1) / (2 |c2| k)` at `x`, with `k'` by central difference.
    pub fn drift(&self, x: T) -> T {
        let d = c::<T>(1e-6).max(c::<T>(1e-8) * x.abs());
        let kp = (self.k(x + d) - self.k(x - d)) / (d + d);
        let c3t = (self.c3)(x) - kp / self.k(x);
        (c3t - (self.c1)(x)) / (c::<T>(2.0) * self.dz_dx(x))
    }
}

fn checked_den<T: Scalar>(z: T, den: T) -> Result<T> {
    if den.abs() < T::tiny() || !den.is_finite() {
        Err(Error::ZeroDenominator { z: z.as_f64() })
    } else {
        Ok(den)
    }
}

/// Third-order step `z - 2h / (2 + h^2 - 2 r h)`.
pub fn third_order_step<T: Scalar>(z: T, h: T, r: T) -> Result<T> {
    let two = c::<T>(2.0);
    let den = checked_den(z, two + h * h - two * r * h)?;
    Ok(z - two * h / den)
}

/// Newton step `z - h / (1 + h^2 - 2 r h)`.
pub fn newton_step<T: Scalar>(z: T, h: T, r: T) -> Result<T> {
    let two = c::<T>(2.0);
    let den = checked_den(z, T::one() + h * h - two * r * h)?;
    Ok(z - h / den)
}

fn arctan_step<T: Scalar>(z: T, t: T, a: T) -> Result<T> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveA { z: z.as_f64(), a: a.as_f64() });
    }
    let s = a.sqrt();
    Ok(z - (s * t).atan() / s)
}

/// Second-order arctan step on the Riccati ratio, `z - atan(sqrt(A) h)/sqrt(A)`.
///
/// In the z variable the ratio is already normalised, so the solve loop uses `A = 1`.
pub fn som_step<T: Scalar>(z: T, h: T, a: T) -> Result<T> {
    arctan_step(z, h, a)
}

/// Fourth-order arctan step `z - atan(sqrt(A) t1)/sqrt(A)` with `t1 = y/y'`.
pub fn fom_step<T: Scalar>(z: T, t1: T, a: T) -> Result<T> {
    arctan_step(z, t1, a)
}

/// Displacement `d` such that the method's next iterate is `z - d`.
pub fn correction<T: Scalar>(method: Method, z: T, s: Sample<T>) -> Result<T> {
    let Sample { h, r, r_dot } = s;
    match method {
        Method::Tom => Ok(z - third_order_step(z, h, r)?),
        Method::Newton => Ok(z - newton_step(z, h, r)?),
        Method::Som => Ok(z - som_step(z, h, T::one())?),
        Method::Fom => {
            // Normal form u'' + Omega u = 0 with u/u' = h / (1 - r h).
            let den = T::one() - r * h;
            let t1 = if den == T::zero() { T::infinity() } else { h / den };
            Ok(z - fom_step(z, t1, T::one() + r_dot - r * r)?)
        }
    }
}

/// Runs the selected method from `p0` in the space's native coordinate.
///
/// Evaluator failures and step breakdowns are errors; running out of iterations,
/// hitting a pole or leaving the domain are reported through `termination`.
pub fn solve_in<T: Scalar, S: RiccatiSpace<T> + ?Sized>(
    space: &mut S,
    p0: T,
    opts: &IterationOptions<T>,
) -> Result<ZeroResult<T>> {
    opts.validate()?;
    let eps = T::roundoff();
    let mut p = p0;
    let mut z = space.to_z(p);
    let mut history = vec![z];
    let finish = |space: &S, p: T, history: Vec<T>, residual: T, termination| ZeroResult {
        z_star: space.to_z(p),
        x_star: space.to_x(p),
        iterations: history.len() - 1,
        history,
        final_residual: residual,
        termination,
    };
    if !space.contains(p) {
        return Ok(finish(space, p, history, T::nan(), Termination::LeftDomain));
    }
    let mut s = space.sample(p)?;
    let mut last_step = T::infinity();
    loop {
        if !s.h.is_finite() {
            return Ok(finish(space, p, history, T::infinity(), Termination::SingularityHit));
        }
        if s.h == T::zero() {
            return Ok(finish(space, p, history, T::zero(), Termination::Converged));
        }
        if history.len() > opts.max_iter {
            return Ok(finish(space, p, history, s.h.abs(), Termination::MaxIter));
        }
        let d = correction(opts.method, z, s)?;
        let p_new = space.displace(p, -d);
        if !p_new.is_finite() || !space.contains(p_new) {
            history.push(space.to_z(p_new));
            return Ok(finish(space, p_new, history, T::nan(), Termination::LeftDomain));
        }
        let z_new = space.to_z(p_new);
        history.push(z_new);
        let step = d.abs();
        let x_old = space.to_x(p);
        let x_new = space.to_x(p_new);
        let scale = T::one().max(z_new.abs());
        let converged = (opts.abs_tol > T::zero() && step < opts.abs_tol)
            || (opts.rel_tol > T::zero() && (x_new - x_old).abs() <= opts.rel_tol * x_new.abs())
            || step <= c::<T>(4.0) * eps * scale
            // Rounding floor: the step stopped shrinking after already being tiny.
            || (step >= last_step && last_step <= c::<T>(1e-6) * scale);
        last_step = step;
        p = p_new;
        z = z_new;
        s = space.sample(p)?;
        if converged {
            // Steps also shrink like 2/h next to a pole; a large ratio there means no zero.
            let termination = if s.h.is_finite() && s.h.abs() <= T::one() {
                Termination::Converged
            } else {
                Termination::SingularityHit
            };
            return Ok(finish(space, p, history, s.h.abs(), termination));
        }
    }
}

/// Solves from `z0` on a plain problem.
pub fn solve_zero<T: Scalar>(
    problem: &RiccatiProblem<T>,
    z0: T,
    opts: &IterationOptions<T>,
) -> Result<ZeroResult<T>> {
    let mut p = problem.clone();
    solve_in(&mut p, z0, opts)
}

/// `(h(z+d) - h(z-d)) / 2d - (1 + h^2 - 2 r h)`.
pub fn riccati_residual<T: Scalar>(problem: &RiccatiProblem<T>, z: T, delta: T) -> Result<T> {
    let hp = problem.h(z + delta)?;
    let hm = problem.h(z - delta)?;
    let h = problem.h(z)?;
    if !(hp.is_finite() && hm.is_finite() && h.is_finite()) {
        return Err(Error::NonFiniteSample { z: z.as_f64() });
    }
    let two = c::<T>(2.0);
    Ok((hp - hm) / (two * delta) - (T::one() + h * h - two * problem.r(z) * h))
}

/// Least-squares slope of `log e_{m+1}` against `log e_m`.
///
/// Only the leading run of strictly decreasing errors above rounding level is used;
/// at least three such errors are required.
pub fn estimate_order<T: Scalar>(history: &[T], z_star: T) -> Result<T> {
    let floor = c::<T>(10.0) * T::roundoff() * T::one().max(z_star.abs());
    let mut errs: Vec<T> = Vec::new();
    for &z in history {
        let e = (z - z_star).abs();
        if e <= floor || errs.last().is_some_and(|&l| e >= l) {
            break;
        }
        errs.push(e);
    }
    if errs.len() < 3 {
        return Err(Error::InsufficientHistory { needed: 3, have: errs.len() });
    }
    let pts: Vec<(T, T)> = errs.windows(2).map(|w| (w[0].ln(), w[1].ln())).collect();
    let n = T::from_count(pts.len());
    let mx = pts.iter().fold(T::zero(), |a, p| a + p.0) / n;
    let my = pts.iter().fold(T::zero(), |a, p| a + p.1) / n;
    let (sxy, sxx) = pts.iter().fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    Ok(sxy / sxx)
}

/// Central-difference estimates of `G'(z)` and `G''(z)` for the third-order map.
pub fn step_map_derivatives<T: Scalar>(problem: &RiccatiProblem<T>, z: T, delta: T) -> Result<(T, T)> {
    let g = |z: T| -> Result<T> { third_order_step(z, problem.h(z)?, problem.r(z)) };
    let (gp, g0, gm) = (g(z + delta)?, g(z)?, g(z - delta)?);
    let two = c::<T>(2.0);
    Ok(((gp - gm) / (two * delta), (gp - two * g0 + gm) / (delta * delta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tan_problem() -> RiccatiProblem<f64> {
        RiccatiProblem::new(|z: f64| Ok(z.tan()), |_| 0.0, (0.0, 100.0)).with_r_dot(|_| 0.0)
    }

    #[test]
    fn third_order_step_values() {
        assert_eq!(third_order_step(5.0, 0.0, 0.7).unwrap(), 5.0);
        let z = third_order_step(3.0, 3.0f64.tan(), 0.0).unwrap();
        // Independent evaluation: 3 - 2 tan 3 / (2 + tan^2 3).
        assert_abs_diff_eq!(z, 3.141112870393896, epsilon = 1e-12);
    }

    #[test]
    fn newton_step_values() {
        assert_eq!(newton_step(5.0, 0.0, 0.7).unwrap(), 5.0);
        let h = 3.0f64.tan();
        let z = newton_step(3.0, h, 0.0).unwrap();
        assert_abs_diff_eq!(z, 3.0 - h / (1.0 + h * h), epsilon = 1e-15);
        assert_abs_diff_eq!(z, 3.139707749099463, epsilon = 1e-12);
    }

    #[test]
    fn zero_denominator_detected() {
        // 2 + h^2 - 2 r h = 0 at h = 2, r = 1.5.
        assert!(matches!(third_order_step(1.0, 2.0, 1.5), Err(Error::ZeroDenominator { .. })));
        // 1 + h^2 - 2 r h = 0 at h = 1, r = 1.
        assert!(matches!(newton_step(1.0, 1.0, 1.0), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn arctan_steps() {
        assert_eq!(fom_step(2.0, 0.0, 3.0).unwrap(), 2.0);
        assert_eq!(som_step(2.0, 0.0, 1.0).unwrap(), 2.0);
        assert!(matches!(fom_step(2.0, 1.0, -0.5), Err(Error::NonPositiveA { .. })));
        assert!(matches!(som_step(2.0, 1.0, 0.0), Err(Error::NonPositiveA { .. })));
        // For r = 0 the arctan step is exact on tan.
        let z = som_step(3.0, 3.0f64.tan(), 1.0).unwrap();
        assert_abs_diff_eq!(z, 3.0 - (3.0f64).tan().atan(), epsilon = 1e-15);
    }

    #[test]
    fn tan_problem_converges_to_pi() {
        let res = solve_zero(&tan_problem(), 2.8, &IterationOptions::absolute(1e-10)).unwrap();
        assert!(res.converged());
        assert_abs_diff_eq!(res.z_star, std::f64::consts::PI, epsilon = 1e-12);
        assert_abs_diff_eq!(res.x_star, std::f64::consts::PI, epsilon = 1e-12);
        assert_eq!(res.history.len(), res.iterations + 1);
        assert!(res.is_monotone_toward(std::f64::consts::PI, 1e-14));
    }

    #[test]
    fn tan_problem_in_f32() {
        let p = RiccatiProblem::new(|z: f32| Ok(z.tan()), |_| 0.0f32, (0.0, 10.0));
        let res = solve_zero(&p, 3.0f32, &IterationOptions::absolute(1e-5)).unwrap();
        assert!(res.converged());
        assert!((res.z_star - std::f32::consts::PI).abs() < 1e-5);
    }

    #[test]
    fn newton_needs_at_least_as_many_steps() {
        let p = tan_problem();
        let tom = solve_zero(&p, 3.0, &IterationOptions::absolute(1e-10)).unwrap();
        let newton =
            solve_zero(&p, 3.0, &IterationOptions::absolute(1e-10).with_method(Method::Newton)).unwrap();
        assert!(newton.iterations >= tom.iterations, "{} vs {}", newton.iterations, tom.iterations);
        assert_abs_diff_eq!(newton.z_star, tom.z_star, epsilon = 1e-10);
    }

    #[test]
    fn singularity_and_domain_reported() {
        let p = RiccatiProblem::new(
            |z: f64| Ok(if (z - 1.0).abs() < 1e-9 { f64::INFINITY } else { z.tan() }),
            |_| 0.0,
            (0.5, 2.0),
        );
        let res = solve_zero(&p, 1.0, &IterationOptions::absolute(1e-10)).unwrap();
        assert_eq!(res.termination, Termination::SingularityHit);
        let res = solve_zero(&p, 1.4, &IterationOptions::absolute(1e-10)).unwrap();
        assert_eq!(res.termination, Termination::LeftDomain);
    }

    #[test]
    fn max_iter_reported() {
        let opts = IterationOptions::absolute(1e-14).with_max_iter(1);
        let res = solve_zero(&tan_problem(), 2.0, &opts).unwrap();
        assert_eq!(res.termination, Termination::MaxIter);
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn residual_on_tan() {
        let r = riccati_residual(&tan_problem(), 0.3, 1e-5).unwrap();
        assert!(r.abs() < 1e-6);
    }

    #[test]
    fn order_of_geometric_toy() {
        let hist: Vec<f64> = (0..4).map(|m| 10f64.powf(-(3f64.powi(m)))).collect();
        let q = estimate_order(&hist, 0.0).unwrap();
        assert_abs_diff_eq!(q, 3.0, epsilon = 1e-12);
        assert!(matches!(estimate_order(&hist[..2], 0.0), Err(Error::InsufficientHistory { .. })));
    }

    #[test]
    fn companion_zero_is_pole() {
        // Poles of tan sit at (k + 1/2) pi.
        let comp = tan_problem().companion();
        let res = solve_zero(&comp, 1.3, &IterationOptions::absolute(1e-12)).unwrap();
        assert!(res.converged());
        assert_abs_diff_eq!(res.z_star, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn cubic_contact_on_tan() {
        let (g1, g2) = step_map_derivatives(&tan_problem(), std::f64::consts::PI, 1e-4).unwrap();
        assert!(g1.abs() < 1e-5 && g2.abs() < 1e-2, "{g1} {g2}");
    }

    #[test]
    fn coupled_system_drift_for_bessel_pair() {
        // J_mu' = -(mu/x) J_mu + J_{mu-1},  J_{mu-1}' = ((mu-1)/x) J_{mu-1} - J_mu.
        let mu = 3.0;
        let sys = CoupledSystem::<f64> {
            c1: Arc::new(move |x| -mu / x),
            c2: Arc::new(|_| 1.0),
            c3: Arc::new(move |x| (mu - 1.0) / x),
            c4: Arc::new(|_| -1.0),
        };
        assert!(sys.admissible_at(2.0));
        assert_abs_diff_eq!(sys.dz_dx(2.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sys.drift(2.0), (mu - 0.5) / 2.0, epsilon = 1e-9);
    }
}
