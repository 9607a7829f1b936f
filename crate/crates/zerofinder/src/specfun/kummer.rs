//! Kummer's confluent hypergeometric function `M(a, b, x)` by its power series.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar, Widen};
use crate::specfun::{RatioSample, SeriesSum};

/// Summation condition beyond which a series value is rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Power series `sum (a)_k / (b)_k x^k / k!` with its `x d/dx` companion.
pub fn kummer_series<W: Scalar>(a: W, b: W, x: W) -> Result<SeriesSum<W>> {
    if b <= W::zero() && b == b.floor() {
        return Err(Error::Domain(format!("M(a, b, x) undefined for b = {b}")));
    }
    let mut acc = SeriesSum::new();
    let mut t = W::one();
    acc.push(t, W::zero());
    let terminating = a <= W::zero() && a == a.floor();
    let min_terms = if a < W::zero() { (-a).to_usize().unwrap_or(0) + 1 } else { 0 };
    for k in 0..20_000usize {
        let kf = W::from_count(k);
        t = t * (a + kf) / (b + kf) * x / (kf + W::one());
        acc.push(t, kf + W::one());
        if t == W::zero() && terminating {
            return Ok(acc);
        }
        if k >= min_terms && t.abs() <= W::roundoff() * acc.abs_sum * c::<W>(0.01) {
            return Ok(acc);
        }
    }
    Err(Error::NoConvergence { terms: 20_000 })
}

/// `M(a, b, x) / M(a - 1, b, x)`, both series evaluated in the wide type.
pub fn kummer_ratio<T: Widen>(a: T, b: T, x: T) -> Result<RatioSample<T>> {
    let (aw, bw, xw) = (a.widen(), b.widen(), x.widen());
    let num = kummer_series(aw, bw, xw)?;
    let den = kummer_series(aw - <T::Wide as num_traits::One>::one(), bw, xw)?;
    for s in [&num, &den] {
        let cond = s.condition().as_f64();
        if cond > MAX_CONDITION {
            return Err(Error::CancellationLoss { condition: cond });
        }
    }
    Ok(RatioSample::quotient(T::narrow(num.sum()), T::narrow(den.sum())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_values() {
        let s = kummer_series(-2.0f64, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(s.sum(), -0.5, epsilon = 1e-15);
        let r = kummer_ratio(-2.0f64, 1.0, 1.0).unwrap().value.unwrap();
        assert_abs_diff_eq!(r, 0.75, epsilon = 1e-15);
        let r = kummer_ratio(-2.0f64, 1.0, 1e-12).unwrap().value.unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-11);
        let r = kummer_ratio(-2.0f64, 1.0, 2.0 - 2f64.sqrt()).unwrap().value.unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn non_integer_parameter_matches_exponential_identity() {
        // M(a, a, x) = e^x.
        let s = kummer_series(-1.7f64, -1.7, 3.0).unwrap();
        assert_abs_diff_eq!(s.sum(), 3f64.exp(), epsilon = 1e-12);
    }
}
