//! Bessel and cylinder adapters; both use the identity map z = x.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::families::{Bespoke, CaseId, FamilyCase};
use crate::riccati::RiccatiProblem;
use crate::scalar::{c, Scalar};
use crate::specfun::bessel::bessel_ratio_lower;
use crate::specfun::{bessel_jy, bessel_ratio_cf, cylinder_ratio};
use crate::sweep::OmegaTrend;

/// Orders above this are refused: the evaluators lose accuracy and speed with order.
pub const MAX_ORDER: f64 = 1000.0;

fn check_order(mu: f64) -> Result<()> {
    if !mu.is_finite() || mu.abs() > MAX_ORDER {
        return Err(Error::UnsupportedParameter(format!("order must satisfy |mu| <= {MAX_ORDER}, got {mu}")));
    }
    Ok(())
}

/// Drift of the pair used at order `mu`: `(mu - 1/2)/x` from one half up, `-(mu + 1/2)/x` below.
fn drift(mu: f64) -> f64 {
    if mu >= 0.5 {
        mu - 0.5
    } else {
        -(mu + 0.5)
    }
}

fn with_drift<T: Scalar>(p: RiccatiProblem<T>, d: T) -> RiccatiProblem<T> {
    p.with_r_dot(move |x: T| -d / (x * x))
}

/// Case split for `J_mu`, shared with the `alpha = 0` cylinder case.
pub fn bessel_case(mu: f64) -> Result<FamilyCase> {
    if !(mu > -1.0) {
        return Err(Error::UnsupportedParameter(format!("Bessel order must exceed -1, got {mu}")));
    }
    check_order(mu)?;
    let inf = f64::INFINITY;
    let sqrt_bound = ((mu + 1.0) * (mu + 5.0)).sqrt();
    Ok(if mu == 0.5 || mu == -0.5 {
        let id = if mu > 0.0 { CaseId::BesselCase1 } else { CaseId::BesselCase2Neutral };
        FamilyCase::new(id, 0.0, (0.0, inf), (0.0, inf), OmegaTrend::Undeclared)
    } else if mu > 0.5 {
        FamilyCase::new(CaseId::BesselCase1, mu, (mu, inf), (mu - 0.5, inf), OmegaTrend::Increasing)
    } else if mu >= 0.0 {
        let b = FRAC_PI_2 * (mu + 1.5);
        FamilyCase::new(CaseId::BesselCase2a, b, (b, inf), (b, inf), OmegaTrend::Decreasing)
            .with_slow(16.0 / (9.0 * PI * PI), 4.0 / (3.0 * PI))
    } else if mu > -0.5 {
        FamilyCase::new(CaseId::BesselCase2b, sqrt_bound, (sqrt_bound, inf), (sqrt_bound, inf), OmegaTrend::Decreasing)
            .with_slow(2.0 / 9.0, 1.0 / 3.0)
    } else {
        let b = -(mu + 0.5);
        let case = FamilyCase::new(CaseId::BesselCase2c, b, (sqrt_bound, inf), (b, inf), OmegaTrend::Increasing);
        if sqrt_bound < b {
            // Below -0.95 the first zero can sit under the drift bound.
            case.with_bespoke(Bespoke { region: (sqrt_bound, b), guess: Some(sqrt_bound) })
        } else {
            case
        }
    })
}

/// `J_mu / J_{mu-1}` with `r = (mu - 1/2)/x` for `mu >= 1/2`; `-J_mu / J_{mu+1}` with
/// `r = -(mu + 1/2)/x` below.
pub fn bessel_problem<T: Scalar>(mu: T) -> Result<(RiccatiProblem<T>, FamilyCase)> {
    let case = bessel_case(mu.as_f64())?;
    let d = c::<T>(drift(mu.as_f64()));
    let upper = mu >= c::<T>(0.5);
    let p = RiccatiProblem::new(
        move |x: T| {
            let s = if upper { bessel_ratio_cf(mu, x)? } else { bessel_ratio_lower(mu, x)? };
            Ok(s.as_h())
        },
        move |x: T| d / x,
        (T::zero(), T::infinity()),
    );
    Ok((with_drift(p, d), case))
}

/// `theta_1(mu) = pi/2 - atan(Y_mu(mu) / J_mu(mu))`: for `alpha` at or above it one zero of
/// `C_mu` lies in `(0, mu]`.
pub fn cylinder_theta1(mu: f64) -> Result<f64> {
    let (j, y, _, _) = bessel_jy(mu, mu)?;
    Ok(FRAC_PI_2 - (y / j).atan())
}

/// Case split for `C_mu = J_mu cos(alpha) - Y_mu sin(alpha)`.
pub fn cylinder_case(mu: f64, alpha: f64) -> Result<FamilyCase> {
    if !(0.0..PI).contains(&alpha) {
        return Err(Error::UnsupportedParameter(format!("phase must lie in [0, pi), got {alpha}")));
    }
    check_order(mu)?;
    if alpha == 0.0 && mu > -1.0 {
        let mut case = bessel_case(mu)?;
        case.case_id = match case.case_id {
            CaseId::BesselCase1 => CaseId::CylinderCase1,
            CaseId::BesselCase2c => CaseId::CylinderCase2a,
            CaseId::BesselCase2Neutral => CaseId::CylinderCase2Neutral,
            _ => CaseId::CylinderCase2b,
        };
        return Ok(case);
    }
    let inf = f64::INFINITY;
    Ok(if mu == 0.5 || mu == -0.5 {
        let id = if mu > 0.0 { CaseId::CylinderCase1 } else { CaseId::CylinderCase2Neutral };
        FamilyCase::new(id, 0.0, (0.0, inf), (0.0, inf), OmegaTrend::Undeclared)
    } else if mu > 0.5 {
        let lo = mu - 0.5;
        if alpha < cylinder_theta1(mu)? {
            FamilyCase::new(CaseId::CylinderCase1, lo, (mu, inf), (lo, inf), OmegaTrend::Increasing)
        } else {
            FamilyCase::new(CaseId::CylinderCase1, lo, (0.0, inf), (lo, inf), OmegaTrend::Increasing)
                .with_bespoke(Bespoke { region: (0.0, lo), guess: None })
        }
    } else if mu < -0.5 {
        let lo = -(mu + 0.5);
        FamilyCase::new(CaseId::CylinderCase2a, lo, (0.0, inf), (lo, inf), OmegaTrend::Increasing)
            .with_bespoke(Bespoke { region: (0.0, lo), guess: None })
    } else {
        let b = 0.75 * PI + mu * FRAC_PI_2;
        let k2 = (mu + 0.5) / (FRAC_PI_2 * (mu + 1.5));
        let k1 = (mu + 0.5) / (PI * PI / 4.0 * (mu + 1.5).powi(2));
        // The first zero exceeds b - alpha; nothing certifies the stretch below b.
        FamilyCase::new(CaseId::CylinderCase2b, b, ((b - alpha).max(0.0), inf), (b, inf), OmegaTrend::Decreasing)
            .with_slow(k1, k2)
    })
}

/// `C_mu / C_{mu-1}` for `mu >= 1/2`, `-C_mu / C_{mu+1}` below, with the Bessel drifts.
pub fn cylinder_problem(mu: f64, alpha: f64) -> Result<(RiccatiProblem<f64>, FamilyCase)> {
    let case = cylinder_case(mu, alpha)?;
    let d = drift(mu);
    let p = RiccatiProblem::new(
        move |x: f64| Ok(cylinder_ratio(mu, alpha, x)?.as_h()),
        move |x: f64| d / x,
        (0.0, f64::INFINITY),
    );
    Ok((with_drift(p, d), case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riccati::{solve_zero, IterationOptions};
    use crate::sweep::RegimeKind;

    #[test]
    fn case_split() {
        assert_eq!(bessel_case(10.0).unwrap().case_id, CaseId::BesselCase1);
        assert_eq!(bessel_case(0.25).unwrap().case_id, CaseId::BesselCase2a);
        assert_eq!(bessel_case(-0.3).unwrap().case_id, CaseId::BesselCase2b);
        assert_eq!(bessel_case(-0.7).unwrap().case_id, CaseId::BesselCase2c);
        assert!(bessel_case(-0.7).unwrap().bespoke.is_none());
        assert!(bessel_case(-0.97).unwrap().bespoke.is_some());
        assert!(matches!(bessel_case(-1.0), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn regimes() {
        let (p, _) = bessel_problem(10.0f64).unwrap();
        let cert = crate::sweep::classify_regime(&p, (10.0, 1000.0), None).unwrap();
        assert_eq!(cert.kind, RegimeKind::DecreasingRPos);
        let (p, case) = bessel_problem(0.25f64).unwrap();
        let b = case.certified.0;
        let cert = crate::sweep::classify_regime(&p, (b, b + 1000.0), case.slow).unwrap();
        assert_eq!(cert.kind, RegimeKind::SlowlyIncreasingR);
        assert_eq!(cert.k1, Some(16.0 / (9.0 * PI * PI)));
        assert_eq!(cert.k2, Some(4.0 / (3.0 * PI)));
    }

    #[test]
    fn j0_first_zero() {
        let (p, _) = bessel_problem(0.0f64).unwrap();
        let res = solve_zero(&p, 3.0, &IterationOptions::absolute(1e-10)).unwrap();
        assert!((res.z_star - 2.404825557695773).abs() < 1e-14);
    }

    #[test]
    fn cylinder_reduces_to_bessel() {
        let (c, _) = cylinder_problem(2.5, 0.0).unwrap();
        let (b, _) = bessel_problem(2.5f64).unwrap();
        for &x in &[1.0, 4.0, 9.0] {
            let (hc, hb) = (c.h(x).unwrap(), b.h(x).unwrap());
            assert!((hc - hb).abs() < 1e-12 * (1.0 + hb.abs()), "x={x}");
        }
    }

    #[test]
    fn half_order_cylinder_is_shifted_tangent() {
        let (c, _) = cylinder_problem(0.5, 0.75).unwrap();
        for &x in &[0.3, 2.0, 11.0] {
            let h = c.h(x).unwrap();
            let t = (x + 0.75f64).tan();
            assert!((h - t).abs() < 1e-12 * (1.0 + t * t), "x={x}");
        }
    }
}
