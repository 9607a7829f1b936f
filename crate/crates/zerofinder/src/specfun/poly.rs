//! Direct three-term recurrences for the classical polynomials.

use crate::scalar::{c, Scalar};

/// `(P_n(x), P_{n+1}(x))` by the Bonnet recurrence.
pub fn legendre_pair<T: Scalar>(n: usize, x: T) -> (T, T) {
    let (mut p0, mut p1) = (T::one(), x);
    for k in 1..=n {
        let kf = T::from_count(k);
        let p2 = ((kf + kf + T::one()) * x * p1 - kf * p0) / (kf + T::one());
        p0 = p1;
        p1 = p2;
    }
    (p0, p1)
}

/// `(P_n(x), P_n'(x))`.
pub fn legendre_with_derivative<T: Scalar>(n: usize, x: T) -> (T, T) {
    let (pn, pn1) = legendre_pair(n, x);
    let nf = T::from_count(n);
    // (1 - x^2) P_n' = (n + 1) (x P_n - P_{n+1})
    let d = (nf + T::one()) * (x * pn - pn1) / (T::one() - x * x);
    (pn, d)
}

/// Physicists' Hermite pair `(H_n(x), H_{n+1}(x))`; overflows for large `n`.
pub fn hermite_pair<T: Scalar>(n: usize, x: T) -> (T, T) {
    let two = c::<T>(2.0);
    let (mut h0, mut h1) = (T::one(), two * x);
    for k in 1..=n {
        let h2 = two * x * h1 - two * T::from_count(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    (h0, h1)
}

/// Orthonormal Hermite functions `(psi_n, psi_{n+1})` at `x`, up to a common positive factor.
///
/// The Gaussian weight is dropped and the pair is rescaled on the way up, so the ratio and
/// the signs are exact even where `psi_n` itself would underflow.
pub fn hermite_function_pair<T: Scalar>(n: usize, x: T) -> (T, T) {
    let two = c::<T>(2.0);
    let big = c::<T>(1e150);
    let (mut p0, mut p1) = (T::one(), two.sqrt() * x);
    for k in 1..=n {
        let kf = T::from_count(k);
        let p2 = (two / (kf + T::one())).sqrt() * x * p1 - (kf / (kf + T::one())).sqrt() * p0;
        p0 = p1;
        p1 = p2;
        if p1.abs() > big {
            p0 = p0 / big;
            p1 = p1 / big;
        }
    }
    (p0, p1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_values() {
        let (p2, p3) = legendre_pair(2, 0.5f64);
        assert_abs_diff_eq!(p2, -0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(p3, -0.4375, epsilon = 1e-15);
        let (p, d) = legendre_with_derivative(3, 0.3f64);
        // P_3 = (5x^3 - 3x)/2, P_3' = (15x^2 - 3)/2
        assert_abs_diff_eq!(p, (5.0 * 0.027 - 0.9) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d, (15.0 * 0.09 - 3.0) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn hermite_values() {
        let (h3, h4) = hermite_pair(3, 1.0f64);
        assert_eq!((h3, h4), (-4.0, -20.0));
    }

    #[test]
    fn hermite_function_ratio_matches_polynomials() {
        // psi_n / psi_{n+1} = sqrt(2(n+1)) H_n / H_{n+1}
        for &x in &[0.3f64, 1.1, 2.7] {
            let (h5, h6) = hermite_pair(5, x);
            let (p5, p6) = hermite_function_pair(5, x);
            assert_abs_diff_eq!(p5 / p6, 12f64.sqrt() * h5 / h6, epsilon = 1e-12);
        }
        // Far outside the oscillatory region the pair must stay finite.
        let (a, b) = hermite_function_pair(1000, 60.0f64);
        assert!(a.is_finite() && b.is_finite() && b != 0.0);
    }
}
