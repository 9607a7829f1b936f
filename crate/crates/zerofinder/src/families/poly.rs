//! Legendre and Hermite adapters.
//!
//! Each family has a z-space problem evaluated by the three-term recurrence (used for
//! classification and cross-checks) and an x-space iteration backed by the local Taylor
//! evaluator, where z-steps are composed through the exact coordinate map.

use crate::error::Result;
use crate::riccati::{RiccatiProblem, RiccatiSpace, Sample};
use crate::scalar::{c, Scalar};
use crate::specfun::poly::{hermite_function_pair, legendre_pair};
use crate::specfun::{hermite_ratio, legendre_ratio, RatioSample, TaylorFamily, TaylorState};

/// `h(z) = -P_n(x) / P_{n+1}(x)`, `x = tanh(z / (n + 1))`, `r(z) = -tanh(z / (n + 1))`.
pub fn legendre_problem<T: Scalar>(n: usize) -> RiccatiProblem<T> {
    let m = T::from_count(n + 1);
    RiccatiProblem::new(
        move |z: T| {
            let x = (z / m).tanh();
            let (p, q) = legendre_pair(n, x);
            Ok(RatioSample::quotient(-p, q).as_h())
        },
        move |z: T| -(z / m).tanh(),
        (T::neg_infinity(), T::infinity()),
    )
    .with_r_dot(move |z: T| {
        let t = (z / m).tanh();
        -(T::one() - t * t) / m
    })
    .with_maps(move |x: T| m * x.atanh(), move |z: T| (z / m).tanh())
}

/// `h(z) = -sqrt(2(n+1)) H_n(x) / H_{n+1}(x)`, `z = sqrt(2(n+1)) x`, `r(z) = -z / (2(n+1))`.
pub fn hermite_problem<T: Scalar>(n: usize) -> RiccatiProblem<T> {
    let two_m = T::from_count(2 * (n + 1));
    let s = two_m.sqrt();
    RiccatiProblem::new(
        move |z: T| {
            let (p, q) = hermite_function_pair(n, z / s);
            Ok(RatioSample::quotient(-p, q).as_h())
        },
        move |z: T| -z / two_m,
        (T::neg_infinity(), T::infinity()),
    )
    .with_r_dot(move |_| -T::one() / two_m)
    .with_maps(move |x: T| s * x, move |z: T| z / s)
}

/// Largest z that can hold a Legendre zero: `x = cos(pi / (2n + 1))`.
pub fn legendre_z_bound<T: Scalar>(n: usize) -> T {
    let x = (T::PI() / T::from_count(2 * n + 1)).cos();
    T::from_count(n + 1) * x.atanh()
}

/// Largest z that can hold a Hermite zero: `x = sqrt(2n + 1)`.
pub fn hermite_z_bound<T: Scalar>(n: usize) -> T {
    (T::from_count(2 * (n + 1)) * T::from_count(2 * n + 1)).sqrt()
}

/// Legendre iteration in x with the tanh addition rule
/// `x' = (x + t) / (1 + x t)`, `t = tanh(dz / (n + 1))`.
#[derive(Debug, Clone)]
pub struct LegendreXSpace<T> {
    n: usize,
    state: TaylorState<T>,
}

impl<T: Scalar> LegendreXSpace<T> {
    pub fn new(n: usize) -> Self {
        Self { n, state: TaylorState::new(TaylorFamily::Legendre { n }) }
    }

    fn m(&self) -> T {
        T::from_count(self.n + 1)
    }
}

impl<T: Scalar> RiccatiSpace<T> for LegendreXSpace<T> {
    fn sample(&mut self, x: T) -> Result<Sample<T>> {
        let h = legendre_ratio(&mut self.state, x)?.as_h();
        Ok(Sample { h, r: -x, r_dot: -(T::one() - x * x) / self.m() })
    }
    fn to_z(&self, x: T) -> T {
        self.m() * x.atanh()
    }
    fn from_z(&self, z: T) -> T {
        (z / self.m()).tanh()
    }
    fn to_x(&self, x: T) -> T {
        x
    }
    fn contains(&self, x: T) -> bool {
        x.abs() < T::one()
    }
    fn displace(&self, x: T, dz: T) -> T {
        let t = (dz / self.m()).tanh();
        (x + t) / (T::one() + x * t)
    }
}

/// Hermite iteration in x: `x' = x + dz / sqrt(2(n + 1))`.
#[derive(Debug, Clone)]
pub struct HermiteXSpace<T> {
    n: usize,
    state: TaylorState<T>,
}

impl<T: Scalar> HermiteXSpace<T> {
    pub fn new(n: usize) -> Self {
        Self { n, state: TaylorState::new(TaylorFamily::Hermite { n }) }
    }

    fn s(&self) -> T {
        T::from_count(2 * (self.n + 1)).sqrt()
    }
}

impl<T: Scalar> RiccatiSpace<T> for HermiteXSpace<T> {
    fn sample(&mut self, x: T) -> Result<Sample<T>> {
        let h = hermite_ratio(&mut self.state, x)?.as_h();
        let s = self.s();
        Ok(Sample { h, r: -x / s, r_dot: -T::one() / (s * s) })
    }
    fn to_z(&self, x: T) -> T {
        self.s() * x
    }
    fn from_z(&self, z: T) -> T {
        z / self.s()
    }
    fn to_x(&self, x: T) -> T {
        x
    }
    fn contains(&self, x: T) -> bool {
        // Beyond the turning point the weighted solution only decays; a generous margin keeps
        // the Taylor cursor away from underflow.
        x.abs() < c::<T>(2.0) * T::from_count(2 * self.n + 1).sqrt() + c::<T>(10.0)
    }
    fn displace(&self, x: T, dz: T) -> T {
        x + dz / self.s()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riccati::{riccati_residual, solve_in, solve_zero, IterationOptions};

    #[test]
    fn legendre_maps_and_drift() {
        let p = legendre_problem::<f64>(9);
        assert!((p.r(2.0) + 0.197375320224904).abs() < 1e-12);
        for &x in &[-0.99, -0.3, 0.0, 0.5, 0.999] {
            assert!((p.x_of_z(p.z_of_x(x)) - x).abs() <= 1e-12 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn closed_form_zeros() {
        let p = legendre_problem::<f64>(2);
        let res = solve_zero(&p, p.z_of_x(0.5), &IterationOptions::relative(1e-15)).unwrap();
        assert!((res.x_star - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let h = hermite_problem::<f64>(3);
        let res = solve_zero(&h, h.z_of_x(1.2), &IterationOptions::relative(1e-10)).unwrap();
        assert!((res.x_star - 1.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hermite_drift_and_bound() {
        let p = hermite_problem::<f64>(4);
        assert!((p.r(10f64.sqrt()) + 0.316227766016838).abs() < 1e-12);
        for n in 1..200 {
            assert!(hermite_z_bound::<f64>(n) < 2.0 * (n + 1) as f64);
        }
    }

    #[test]
    fn residuals_small() {
        let l = legendre_problem::<f64>(7);
        let h = l.h(1.0).unwrap();
        assert!(riccati_residual(&l, 1.0, 1e-5).unwrap().abs() < 1e-5 * (1.0 + h * h));
        let m = hermite_problem::<f64>(6);
        let h = m.h(2.0).unwrap();
        assert!(riccati_residual(&m, 2.0, 1e-5).unwrap().abs() < 1e-5 * (1.0 + h * h));
    }

    #[test]
    fn x_space_agrees_with_z_space() {
        let mut xs = LegendreXSpace::<f64>::new(20);
        let zp = legendre_problem::<f64>(20);
        let opts = IterationOptions::relative(1e-15);
        let g = 0.3;
        let a = solve_in(&mut xs, g, &opts).unwrap();
        let b = solve_zero(&zp, zp.z_of_x(g), &opts).unwrap();
        assert!((a.x_star - b.x_star).abs() < 1e-14);

        let mut hs = HermiteXSpace::<f64>::new(11);
        let zp = hermite_problem::<f64>(11);
        let opts = IterationOptions::relative(1e-12);
        let a = solve_in(&mut hs, 1.0, &opts).unwrap();
        let b = solve_zero(&zp, zp.z_of_x(1.0), &opts).unwrap();
        assert!((a.x_star - b.x_star).abs() < 1e-13);
    }
}
