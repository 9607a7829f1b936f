//! Bessel and cylinder function ratios.
//!
//! `J_nu / J_{nu-1}` comes from the continued fraction
//! `R_nu = 1 / (2 nu / x - R_{nu+1})` evaluated by the modified Lentz method.
//! Cylinder functions need `Y` as well; `J, Y` and their derivatives are computed by
//! Temme's series (`x < 2`) or Steed's method (`x >= 2`), with the minimal-solution
//! ratio from the same continued fraction.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::specfun::RatioSample;

const MAX_TERMS: usize = 10_000;

/// `R_nu(x) = J_nu(x) / J_{nu-1}(x)` by modified Lentz; `nu > 0`.
pub fn j_ratio_lentz<T: Scalar>(nu: T, x: T) -> Result<T> {
    let tiny = c::<T>(1e-300).max(T::min_positive_value());
    let tol = T::roundoff();
    let two_over_x = c::<T>(2.0) / x;
    // f = 0 + 1/(b1 - 1/(b2 - ...)), b_j = 2 (nu + j - 1) / x.
    let mut f = tiny;
    let mut cc = f;
    let mut d = T::zero();
    let extra = x.as_f64().abs().min(1e7) as usize;
    for j in 1..=MAX_TERMS + extra {
        let b = (nu + T::from_count(j - 1)) * two_over_x;
        let a = if j == 1 { T::one() } else { -T::one() };
        d = b + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        cc = b + a / cc;
        if cc.abs() < tiny {
            cc = tiny;
        }
        d = T::one() / d;
        let delta = cc * d;
        f = f * delta;
        if (delta - T::one()).abs() < tol {
            return Ok(f);
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS + extra })
}

/// `1 / (2 nu / x - tail)` flagged singular when the subtraction cancels to rounding level.
fn step_down<T: Scalar>(nu: T, x: T, tail: T) -> RatioSample<T> {
    let lead = c::<T>(2.0) * nu / x;
    let den = lead - tail;
    let noise = c::<T>(4.0) * T::roundoff() * (lead.abs() + tail.abs());
    if den == T::zero() || den.abs() <= noise || !tail.is_finite() {
        if !tail.is_finite() {
            // Tail at its own pole: the ratio vanishes.
            return RatioSample { value: Some(T::zero()), y: None, y_prime: None };
        }
        RatioSample { value: None, y: None, y_prime: None }
    } else {
        RatioSample { value: Some(T::one() / den), y: None, y_prime: None }
    }
}

/// `J_mu(x) / J_{mu-1}(x)` for `mu > 0`, `x > 0`.
///
/// Singular where the final downward step cancels to rounding, i.e. at zeros of `J_{mu-1}`.
pub fn bessel_ratio_cf<T: Scalar>(mu: T, x: T) -> Result<RatioSample<T>> {
    if !(x > T::zero()) || !(mu > T::zero()) {
        return Err(Error::Domain(format!("bessel ratio needs mu > 0, x > 0 (mu = {mu}, x = {x})")));
    }
    let tail = j_ratio_lentz(mu + T::one(), x)?;
    Ok(step_down(mu, x, tail))
}

/// `-J_mu(x) / J_{mu+1}(x)` for `mu > -1`, the ratio used below order one half.
pub fn bessel_ratio_lower<T: Scalar>(mu: T, x: T) -> Result<RatioSample<T>> {
    if !(x > T::zero()) || !(mu > -T::one()) {
        return Err(Error::Domain(format!("bessel ratio needs mu > -1, x > 0 (mu = {mu}, x = {x})")));
    }
    // -J_mu/J_{mu+1} = -(2 (mu+1)/x - R_{mu+2}),  R_{mu+2} = 1/(2 (mu+2)/x - R_{mu+3}).
    let tail = j_ratio_lentz(mu + c::<T>(3.0), x)?;
    let inner = step_down(mu + c::<T>(2.0), x, tail);
    Ok(match inner.value {
        None => RatioSample { value: None, y: None, y_prime: None },
        Some(r2) => {
            let g = c::<T>(2.0) * (mu + T::one()) / x - r2;
            RatioSample { value: Some(-g), y: None, y_prime: None }
        }
    })
}

/// `(J_nu, Y_nu, J_nu', Y_nu')` for `nu >= 0`.
fn bessel_jy_nonneg(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    const XMIN: f64 = 2.0;
    let maxit = MAX_TERMS + x as usize;
    let nl = if x < XMIN { (nu + 0.5) as usize } else { ((nu - x + 1.5).max(0.0)) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    // CF1 for f = J'_nu / J_nu.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut cc = h;
    let mut converged = false;
    for _ in 0..maxit {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        cc = b - 1.0 / cc;
        if cc.abs() < FPMIN {
            cc = FPMIN;
        }
        d = 1.0 / d;
        let del = cc * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { terms: maxit });
    }
    // Downward recurrence of the unnormalised J and J' to order xmu.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;
    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        // Temme's series for Y_xmu and Y_{xmu+1}.
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = beschb(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cterm = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=maxit {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cterm *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cterm * (ff + r * q);
            sum += del;
            let del1 = cterm * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NoConvergence { terms: maxit });
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // Steed's CF2 for p + iq.
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..=maxit {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NoConvergence { terms: maxit });
        }
        let gam = (p - f) / q;
        let mut j = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            j = -j;
        }
        rjmu = j;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    let rjp = rjp1 * scale;
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    let ryp = nu * xi * rymu - ry1;
    Ok((rj, rymu, rjp, ryp))
}

/// `gamma1`, `gamma2` of Temme's method and `1/Gamma(1 +- xmu)` for `|xmu| <= 1/2`.
fn beschb(x: f64) -> (f64, f64, f64, f64) {
    const C1: [f64; 7] = [
        -1.142022680371168e0,
        6.5165112670737e-3,
        3.087090173086e-4,
        -3.4706269649e-6,
        6.9437664e-9,
        3.67795e-11,
        -1.356e-13,
    ];
    const C2: [f64; 8] = [
        1.843740587300905e0,
        -7.68528408447867e-2,
        1.2719271366546e-3,
        -4.9717367042e-6,
        -3.31261198e-8,
        2.423096e-10,
        -1.702e-13,
        -1.49e-15,
    ];
    let xx = 8.0 * x * x - 1.0;
    let gam1 = chebev(&C1, xx);
    let gam2 = chebev(&C2, xx);
    (gam1, gam2, gam2 - x * gam1, gam2 + x * gam1)
}

/// Chebyshev sum on `[-1, 1]` with the half-weighted leading coefficient.
fn chebev(coef: &[f64], y: f64) -> f64 {
    let y2 = 2.0 * y;
    let (mut d, mut dd) = (0.0, 0.0);
    for &cj in coef[1..].iter().rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    y * d - dd + 0.5 * coef[0]
}

/// `(J_nu, Y_nu, J_nu', Y_nu')` for real `nu` and `x > 0`; negative orders by reflection.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    if !(x > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_jy needs x > 0 (nu = {nu}, x = {x})")));
    }
    if nu >= 0.0 {
        return bessel_jy_nonneg(nu, x);
    }
    let p = -nu;
    let (j, y, jp, yp) = bessel_jy_nonneg(p, x)?;
    let (s, co) = sin_cos_pi(p);
    Ok((co * j - s * y, s * j + co * y, co * jp - s * yp, s * jp + co * yp))
}

/// `(sin(pi p), cos(pi p))` with exact values at integers and half-integers.
fn sin_cos_pi(p: f64) -> (f64, f64) {
    let r = p.rem_euclid(2.0);
    if r.fract() == 0.0 || (2.0 * r).fract() == 0.0 {
        return match (2.0 * r) as u32 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    (PI * r).sin_cos()
}

/// `Y_nu(x)`.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.1)
}

/// Cylinder function `C_mu = J_mu cos(alpha) - Y_mu sin(alpha)` and its neighbours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderValues {
    pub c: f64,
    pub c_prime: f64,
    /// `C_{mu-1}`
    pub c_lower: f64,
    /// `C_{mu+1}`
    pub c_upper: f64,
}

pub fn cylinder_values(mu: f64, alpha: f64, x: f64) -> Result<CylinderValues> {
    let (j, y, jp, yp) = bessel_jy(mu, x)?;
    let (sa, ca) = alpha.sin_cos();
    let cv = j * ca - y * sa;
    let cp = jp * ca - yp * sa;
    let m = mu / x;
    Ok(CylinderValues { c: cv, c_prime: cp, c_lower: cp + m * cv, c_upper: m * cv - cp })
}

/// `C_mu / C_{mu-1}` for `mu >= 1/2`, `-C_mu / C_{mu+1}` below.
pub fn cylinder_ratio(mu: f64, alpha: f64, x: f64) -> Result<RatioSample<f64>> {
    let v = cylinder_values(mu, alpha, x)?;
    Ok(if mu >= 0.5 {
        RatioSample::quotient(v.c, v.c_lower)
    } else {
        RatioSample::quotient(-v.c, v.c_upper)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn half_order_ratio_is_tangent() {
        let h = bessel_ratio_cf(0.5f64, 1.0).unwrap().value.unwrap();
        assert_abs_diff_eq!(h, 1.557407725, epsilon = 1e-9);
        assert_abs_diff_eq!(h, 1f64.tan(), epsilon = 1e-14);
        for &x in &[0.3, 2.0, 17.0, 250.0] {
            let h = bessel_ratio_cf(0.5f64, x).unwrap().value.unwrap();
            assert!((h - x.tan()).abs() <= 1e-12 * (1.0 + x.tan().powi(2)), "x={x}");
        }
    }

    #[test]
    fn small_argument_leading_term() {
        let h = bessel_ratio_cf(2.0f64, 1e-4).unwrap().value.unwrap();
        assert_abs_diff_eq!(h, 2.5e-5, epsilon = 1e-12);
    }

    #[test]
    fn pole_at_zero_of_lower_order() {
        let s = bessel_ratio_cf(1.0f64, 2.404825557695773).unwrap();
        assert!(s.is_singular() || s.value.unwrap().abs() > 1e13);
    }

    #[test]
    fn lower_ratio_half_order_is_minus_cot() {
        for &x in &[0.7f64, 3.0, 40.0] {
            let h = bessel_ratio_lower(-0.5, x).unwrap().value.unwrap();
            assert!((h + 1.0 / x.tan()).abs() <= 1e-12 * (1.0 + 1.0 / x.tan().powi(2)), "x={x}");
        }
    }

    #[test]
    fn wronskian_holds() {
        for &mu in &[0.0, 0.3, 2.5, 10.0, -0.7, -2.3] {
            for &x in &[0.4, 1.9, 2.1, 7.5, 33.0] {
                let (j, y, _, _) = bessel_jy(mu, x).unwrap();
                let (j1, y1, _, _) = bessel_jy(mu + 1.0, x).unwrap();
                let w = j1 * y - j * y1;
                assert!((w - 2.0 / (PI * x)).abs() < 1e-10, "mu={mu} x={x}: {w}");
            }
        }
    }

    #[test]
    fn spherical_closed_forms() {
        // J_{1/2} = sqrt(2/(pi x)) sin x,  Y_{1/2} = -sqrt(2/(pi x)) cos x.
        for &x in &[0.5f64, 1.5, 3.0, 12.0] {
            let (j, y, _, _) = bessel_jy(0.5, x).unwrap();
            let s = (2.0 / (PI * x)).sqrt();
            assert_abs_diff_eq!(j, s * x.sin(), epsilon = 1e-14);
            assert_abs_diff_eq!(y, -s * x.cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn cylinder_at_zero_phase_matches_bessel() {
        for &x in &[3.0f64, 11.0, 26.0] {
            let a = cylinder_ratio(2.5, 0.0, x).unwrap().value.unwrap();
            let b = bessel_ratio_cf(2.5, x).unwrap().value.unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + b * b), "x={x}");
        }
    }

    #[test]
    fn cylinder_half_order_phase() {
        // C_{1/2} ~ sin(x + alpha), so the ratio is tan(x + alpha).
        let alpha = std::f64::consts::FRAC_PI_4;
        for &x in &[1.0f64, 4.0, 9.0] {
            let h = cylinder_ratio(0.5, alpha, x).unwrap().value.unwrap();
            assert!((h - (x + alpha).tan()).abs() < 1e-12 * (1.0 + h * h));
        }
    }
}
