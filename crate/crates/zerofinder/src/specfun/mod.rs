//! Evaluation backends for the ratios consumed by the family adapters.

pub mod bessel;
pub mod coulomb;
pub mod kummer;
pub mod poly;
pub mod taylor;

pub use bessel::{bessel_jy, bessel_ratio_cf, bessel_y, cylinder_ratio, CylinderValues};
pub use coulomb::{coulomb_ratio, coulomb_series};
pub use kummer::{kummer_ratio, kummer_series};
pub use taylor::{hermite_ratio, legendre_ratio, TaylorFamily, TaylorState};

use crate::scalar::Scalar;

/// A ratio evaluation, optionally carrying the Taylor-backed function values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample<T> {
    /// `None` when the denominator vanishes (a pole of the ratio).
    pub value: Option<T>,
    pub y: Option<T>,
    pub y_prime: Option<T>,
}

impl<T: Scalar> RatioSample<T> {
    /// `num / den`, singular when `|den| <= 1e-300 * |num|` or `den == 0`.
    pub fn quotient(num: T, den: T) -> Self {
        let singular = den == T::zero() || den.abs() <= T::tiny() * num.abs();
        Self { value: if singular { None } else { Some(num / den) }, y: None, y_prime: None }
    }

    pub fn with_y(mut self, y: T, y_prime: T) -> Self {
        self.y = Some(y);
        self.y_prime = Some(y_prime);
        self
    }

    pub fn is_singular(&self) -> bool {
        self.value.is_none()
    }

    /// Ratio value with poles mapped to infinity, as the solver expects.
    pub fn as_h(&self) -> T {
        self.value.unwrap_or_else(T::infinity)
    }

    pub fn map(self, f: impl FnOnce(T) -> T) -> Self {
        Self { value: self.value.map(f), ..self }
    }
}

/// Neumaier-compensated series accumulator that also tracks `sum |t|` and `sum k t_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<T> {
    sum: T,
    comp: T,
    deriv: T,
    pub abs_sum: T,
}

impl<T: Scalar> SeriesSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero(), deriv: T::zero(), abs_sum: T::zero() }
    }

    /// Adds term `t` carrying power `k` of the expansion variable.
    pub fn push(&mut self, t: T, k: T) {
        let s = self.sum + t;
        self.comp = self.comp
            + if self.sum.abs() >= t.abs() { (self.sum - s) + t } else { (t - s) + self.sum };
        self.sum = s;
        self.deriv = self.deriv + k * t;
        self.abs_sum = self.abs_sum + t.abs();
    }

    pub fn sum(&self) -> T {
        self.sum + self.comp
    }

    /// `x f'(x)` for the series `f(x)`.
    pub fn x_derivative(&self) -> T {
        self.deriv
    }

    /// `sum |t| / (|f| + |x f'|)`: error amplification relative to the local amplitude.
    ///
    /// Measuring against the amplitude rather than `|f|` keeps the estimate finite at zeros.
    pub fn condition(&self) -> T {
        let amp = self.sum().abs() + self.deriv.abs();
        if amp == T::zero() {
            T::infinity()
        } else {
            self.abs_sum / amp
        }
    }
}

impl<T: Scalar> Default for SeriesSum<T> {
    fn default() -> Self {
        Self::new()
    }
}
