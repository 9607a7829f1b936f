//! Local Taylor-series evaluation of the weighted Legendre and Hermite solutions.
//!
//! Legendre: `y = lambda sqrt(1 - x^2) P_n(x)` solves `Q y'' + R y = 0` with
//! `Q = 4 (1 - x^2)^2`, `R = 4 n (n + 1) (1 - x^2) + 4`.
//! Hermite: `y = lambda exp(-x^2 / 2) H_n(x)` solves `y'' + (2n + 1 - x^2) y = 0`.
//!
//! The cursor keeps `y` and `y'` at its current centre; every evaluation regenerates
//! the coefficients there and moves the centre to the evaluation point.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::specfun::RatioSample;

/// Which weighted polynomial the cursor tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaylorFamily {
    Legendre { n: usize },
    Hermite { n: usize },
}

impl TaylorFamily {
    pub fn degree(self) -> usize {
        match self {
            TaylorFamily::Legendre { n } | TaylorFamily::Hermite { n } => n,
        }
    }

    /// Maximum truncation order.
    pub fn cap(self) -> usize {
        match self {
            TaylorFamily::Legendre { .. } => 100,
            TaylorFamily::Hermite { .. } => 50,
        }
    }

    fn tail_tol(self) -> f64 {
        match self {
            TaylorFamily::Legendre { .. } => 1e-19,
            TaylorFamily::Hermite { .. } => 1e-25,
        }
    }
}

/// Mutable evaluation cursor: centre, coefficients of the last expansion, order used.
#[derive(Debug, Clone)]
pub struct TaylorState<T> {
    family: TaylorFamily,
    center: T,
    y: T,
    y_prime: T,
    coeffs: Vec<T>,
    order_used: usize,
}

impl<T: Scalar> TaylorState<T> {
    /// Cursor at `x = 0` with the parity seed: `y(0) = 1, y'(0) = 0` for even degree,
    /// `y(0) = 0, y'(0) = 1` for odd degree.
    pub fn new(family: TaylorFamily) -> Self {
        let odd = family.degree() % 2 == 1;
        let (y, y_prime) = if odd { (T::zero(), T::one()) } else { (T::one(), T::zero()) };
        Self { family, center: T::zero(), y, y_prime, coeffs: vec![y, y_prime], order_used: 1 }
    }

    pub fn family(&self) -> TaylorFamily {
        self.family
    }

    pub fn center(&self) -> T {
        self.center
    }

    /// Scaled terms `a_k t^k`, `k = 0 ..= N + 1`, of the most recent expansion with step `t`.
    ///
    /// Near `x = +-1` the raw coefficients grow like `(1 - |x|)^-k` and would overflow where
    /// `t^k` underflows; the scaled terms stay bounded.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn order_used(&self) -> usize {
        self.order_used
    }

    /// `(y, y')` at the current centre.
    pub fn value(&self) -> (T, T) {
        (self.y, self.y_prime)
    }

    /// `(sign, ln |lambda|)` of the normalisation implied by the parity seed.
    pub fn normalization(&self) -> (T, T) {
        let n = self.family.degree();
        match self.family {
            TaylorFamily::Legendre { .. } => {
                // P_n(0) for even n, P_n'(0) = n P_{n-1}(0) for odd n.
                let (m, scale) = if n % 2 == 0 { (n, T::one()) } else { (n - 1, T::from_count(n)) };
                let (p0, _) = crate::specfun::poly::legendre_pair(m, T::zero());
                let v = scale * p0;
                (v.signum(), -v.abs().ln())
            }
            TaylorFamily::Hermite { .. } => {
                // H_n(0) = (-1)^{n/2} n! / (n/2)!,  H_n'(0) = 2n H_{n-1}(0).
                let (m, extra) = if n % 2 == 0 { (n, T::zero()) } else { (n - 1, T::from_count(2 * n).ln()) };
                let log_fact = |k: usize| (1..=k).fold(T::zero(), |s, j| s + T::from_count(j).ln());
                let ln_abs = log_fact(m) - log_fact(m / 2) + extra;
                let sign = if (m / 2) % 2 == 0 { T::one() } else { -T::one() };
                (sign, -ln_abs)
            }
        }
    }

    /// Largest single expansion step allowed from centre `d`.
    pub fn step_bound(&self, d: T) -> T {
        let half = c::<T>(0.5);
        match self.family {
            TaylorFamily::Legendre { n } => {
                let nf = T::from_count(n);
                let spacing = T::PI() * (T::one() - d * d).max(T::zero()).sqrt() / (nf * (nf + T::one())).sqrt();
                (half * spacing).min(half * (T::one() - d.abs()))
            }
            TaylorFamily::Hermite { n } => {
                let q = T::from_count(2 * n + 1) - d * d;
                half * T::PI() / q.max(T::one()).sqrt()
            }
        }
    }

    /// Advances to `x_new`, returning `(y, y')` there; the centre moves to `x_new`.
    ///
    /// Steps beyond the local bound are split into sub-steps.
    pub fn advance(&mut self, x_new: T) -> Result<(T, T)> {
        if let TaylorFamily::Legendre { .. } = self.family {
            if !(x_new.abs() < T::one()) {
                return Err(Error::Domain(format!("Legendre evaluation needs |x| < 1, got {}", x_new)));
            }
        }
        if !x_new.is_finite() {
            return Err(Error::Domain("non-finite evaluation point".into()));
        }
        loop {
            let gap = x_new - self.center;
            let bound = self.step_bound(self.center);
            if gap.abs() <= bound {
                self.expand_to(x_new)?;
                return Ok((self.y, self.y_prime));
            }
            let target = self.center + bound * gap.signum();
            self.expand_to(target)?;
        }
    }

    /// Generates the scaled term `a_{k+2} t^{k+2}` from lower scaled terms.
    fn next_coeff(&self, k: usize, t: T) -> T {
        let a = |j: isize| if j < 0 { T::zero() } else { self.coeffs[j as usize] };
        let ki = k as isize;
        let kf = T::from_count(k);
        let d = self.center;
        match self.family {
            TaylorFamily::Legendre { n } => {
                let nn = T::from_count(n) * T::from_count(n + 1);
                let one = T::one();
                let s = one - d * d;
                let q = c::<T>(4.0) * s * s;
                let q1 = c::<T>(16.0) * d * (d * d - one);
                let q2 = c::<T>(48.0) * d * d - c::<T>(16.0);
                let q3 = c::<T>(96.0) * d;
                let q4 = c::<T>(96.0);
                let r0 = c::<T>(4.0) * nn * s + c::<T>(4.0);
                let r1 = -c::<T>(8.0) * nn * d;
                let r2 = -c::<T>(8.0) * nn;
                let km1 = kf - one;
                let km2 = kf - c::<T>(2.0);
                let km3 = kf - c::<T>(3.0);
                let t2 = t * t;
                let rest = (kf + one) * kf * q1 * a(ki + 1) * t
                    + (kf * km1 / c::<T>(2.0) * q2 + r0) * a(ki) * t2
                    + (km1 * km2 / c::<T>(6.0) * q3 + r1) * a(ki - 1) * t2 * t
                    + (km2 * km3 / c::<T>(24.0) * q4 + r2 / c::<T>(2.0)) * a(ki - 2) * t2 * t2;
                -rest / ((kf + c::<T>(2.0)) * (kf + one) * q)
            }
            TaylorFamily::Hermite { n } => {
                let w = T::from_count(2 * n + 1) - d * d;
                let t2 = t * t;
                (-w * a(ki) * t2 + c::<T>(2.0) * d * a(ki - 1) * t2 * t + a(ki - 2) * t2 * t2)
                    / ((kf + c::<T>(2.0)) * (kf + T::one()))
            }
        }
    }

    fn expand_to(&mut self, x: T) -> Result<()> {
        let t = x - self.center;
        let cap = self.family.cap();
        let tol = c::<T>(self.family.tail_tol());
        self.coeffs.clear();
        self.coeffs.push(self.y);
        self.coeffs.push(self.y_prime * t);
        let (mut sy, mut sd) = (self.y, self.y_prime);
        let (mut ay, mut ad) = (self.y.abs(), self.y_prime.abs());
        let mut order = 0;
        let mut done = t == T::zero();
        // Parity makes every other coefficient vanish at symmetric centres, so the tail test
        // must hold for two consecutive orders.
        let mut quiet = false;
        for n0 in 1..=cap {
            if done {
                break;
            }
            self.coeffs.push(self.next_coeff(n0 - 1, t));
            let ty = self.coeffs[n0];
            let td = T::from_count(n0 + 1) * self.coeffs[n0 + 1] / t;
            sy = sy + ty;
            sd = sd + td;
            ay = ay + ty.abs();
            ad = ad + td.abs();
            order = n0;
            let zd = (td / sd).abs();
            let zeta = match self.family {
                TaylorFamily::Legendre { .. } => zd.max((ty / sy).abs()),
                TaylorFamily::Hermite { .. } => zd,
            };
            if zeta < tol {
                done = quiet;
                quiet = true;
                if n0 == cap {
                    done = true;
                }
            } else {
                quiet = false;
            }
            if !done && n0 == cap {
                // The verbatim thresholds sit below double rounding; at the cap accept a tail that
                // is negligible against the summed magnitudes.
                let floor = c::<T>(1e-14);
                let ok = ty.abs() <= floor * ay.max(T::min_positive_value())
                    && td.abs() <= floor * ad.max(T::min_positive_value());
                if !ok {
                    return Err(Error::TruncationNotMet { order: cap, step: t.as_f64() });
                }
            }
        }
        // y' as the derivative of the y series including the last term.
        self.y = sy;
        self.y_prime = sd;
        self.center = x;
        self.order_used = order;
        Ok(())
    }
}

/// `h = -P_n / P_{n+1}` at `x` from the weighted Legendre solution.
pub fn legendre_ratio<T: Scalar>(state: &mut TaylorState<T>, x: T) -> Result<RatioSample<T>> {
    let (y, yp) = state.advance(x)?;
    let n = T::from_count(state.family().degree());
    let num = (n + T::one()) * y;
    let den = (T::one() - x * x) * yp - n * x * y;
    Ok(RatioSample::quotient(num, den).with_y(y, yp))
}

/// `h = -sqrt(2(n+1)) H_n / H_{n+1}` at `x` from the weighted Hermite solution.
pub fn hermite_ratio<T: Scalar>(state: &mut TaylorState<T>, x: T) -> Result<RatioSample<T>> {
    let (y, yp) = state.advance(x)?;
    let n = state.family().degree();
    let num = -T::from_count(2 * (n + 1)).sqrt() * y;
    let den = x * y - yp;
    Ok(RatioSample::quotient(num, den).with_y(y, yp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::poly::{hermite_pair, legendre_pair};
    use approx::assert_abs_diff_eq;

    #[test]
    fn parity_seeds() {
        let s = TaylorState::<f64>::new(TaylorFamily::Hermite { n: 4 });
        assert_eq!(s.value(), (1.0, 0.0));
        let s = TaylorState::<f64>::new(TaylorFamily::Legendre { n: 3 });
        assert_eq!(s.value(), (0.0, 1.0));
    }

    #[test]
    fn hermite_two_at_half() {
        let mut s = TaylorState::<f64>::new(TaylorFamily::Hermite { n: 2 });
        let (y, _) = s.advance(0.5).unwrap();
        // lambda = 1/H_2(0) = -1/2, y = -exp(-1/8) (4 x^2 - 2) / 2.
        assert_abs_diff_eq!(y, 0.441248451, epsilon = 1e-9);
        let (sign, ln_abs) = s.normalization();
        assert_abs_diff_eq!(sign * ln_abs.exp(), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn legendre_matches_recurrence() {
        for n in [2usize, 7, 30] {
            let mut s = TaylorState::<f64>::new(TaylorFamily::Legendre { n });
            let (sign, ln_abs) = s.normalization();
            let lambda = sign * ln_abs.exp();
            for i in 1..=40 {
                let x = 0.95 * i as f64 / 40.0;
                let (y, _) = s.advance(x).unwrap();
                let direct = lambda * (1.0 - x * x).sqrt() * legendre_pair(n, x).0;
                assert!((y - direct).abs() <= 1e-12 * direct.abs().max(1e-3), "n={n} x={x}: {y} vs {direct}");
            }
        }
    }

    #[test]
    fn ratios_match_direct_polynomials() {
        let mut s = TaylorState::<f64>::new(TaylorFamily::Legendre { n: 2 });
        let h = legendre_ratio(&mut s, 0.5).unwrap().value.unwrap();
        assert_abs_diff_eq!(h, -0.285714286, epsilon = 1e-9);
        let mut s = TaylorState::<f64>::new(TaylorFamily::Hermite { n: 3 });
        let h = hermite_ratio(&mut s, 1.0).unwrap().value.unwrap();
        let (h3, h4) = hermite_pair(3, 1.0);
        assert_abs_diff_eq!(h, -8f64.sqrt() * h3 / h4, epsilon = 1e-13);
        assert_abs_diff_eq!(h, -0.565685425, epsilon = 1e-9);
        let h = hermite_ratio(&mut s, 1.5f64.sqrt()).unwrap().value.unwrap();
        assert!(h.abs() < 1e-14);
    }

    #[test]
    fn recentering_is_stable() {
        let mut a = TaylorState::<f64>::new(TaylorFamily::Hermite { n: 12 });
        let mut b = a.clone();
        a.advance(1.3).unwrap();
        b.advance(1.45).unwrap();
        let (ya, _) = a.advance(1.4).unwrap();
        let (yb, _) = b.advance(1.4).unwrap();
        assert!((ya - yb).abs() <= 1e-13 * ya.abs());
    }

    #[test]
    fn legendre_rejects_endpoint() {
        let mut s = TaylorState::<f64>::new(TaylorFamily::Legendre { n: 4 });
        assert!(matches!(s.advance(1.0), Err(Error::Domain(_))));
    }
}
