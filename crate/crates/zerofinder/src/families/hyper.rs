//! Kummer and Coulomb adapters.

use crate::error::{Error, Result};
use crate::families::{Bespoke, CaseId, FamilyCase};
use crate::riccati::RiccatiProblem;
use crate::scalar::{c, Widen};
use crate::specfun::{coulomb_ratio, kummer_ratio};
use crate::sweep::OmegaTrend;

/// Below this `b` the zero interval is not known to sit inside the `|r| < 1` interval.
pub const KUMMER_MIN_B: f64 = 1.0 / 6.0;

/// Arguments above `50 + 10 L` are refused for Coulomb functions: the power series cancels.
pub fn coulomb_max_x(l: f64) -> f64 {
    50.0 + 10.0 * l
}

/// Derived constants of the Kummer transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerConstants {
    pub kappa: f64,
    /// `kappa (b - a)`: `z = scale * ln x`.
    pub scale: f64,
    pub z_r: f64,
    /// Interval in x holding every zero.
    pub x_zeros: (f64, f64),
    /// Interval in z where `|r| < 1`.
    pub z_drift: (f64, f64),
}

impl KummerConstants {
    pub fn new(a: f64, b: f64) -> Self {
        let kappa = ((1.0 - a) / (b - a)).sqrt();
        let scale = kappa * (b - a);
        let disc = (a * (a - b) - b).sqrt();
        let x_zeros = (b - 2.0 * a - 2.0 * disc, b - 2.0 * a + 2.0 * disc);
        let lo = ((1.0 - a).sqrt() - (b - a).sqrt()).powi(2);
        let z_drift = (scale * lo.ln(), scale * (1.0 - 2.0 * a + b + 2.0 * scale).ln());
        Self { kappa, scale, z_r: scale * (1.0 - 2.0 * a + b).ln(), x_zeros, z_drift }
    }
}

/// Case split for `M(a, b, x)`, `a < -1`, `b > 0`.
pub fn kummer_case(a: f64, b: f64) -> Result<FamilyCase> {
    if !(a < -1.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::UnsupportedParameter(format!("Kummer adapter needs a < -1 and b > 0, got a = {a}, b = {b}")));
    }
    let k = KummerConstants::new(a, b);
    let z_zeros = (k.scale * k.x_zeros.0.ln(), k.scale * k.x_zeros.1.ln());
    let mut case = FamilyCase::new(CaseId::Kummer, z_zeros.0, z_zeros, k.z_drift, OmegaTrend::Undeclared);
    case.r_zero = Some(k.z_r);
    if b < KUMMER_MIN_B {
        case.case_id = CaseId::KummerSmallB;
        if k.z_drift.0 > z_zeros.0 {
            case = case.with_bespoke(Bespoke { region: (z_zeros.0, k.z_drift.0), guess: None });
        }
    }
    Ok(case)
}

/// `h(z) = kappa M(a, b, x) / M(a - 1, b, x)`, `z = kappa (b - a) ln x`,
/// `r(z) = (1 - 2a + b - x) / (2 kappa (b - a))`.
pub fn kummer_problem<T: Widen>(a: T, b: T) -> Result<(RiccatiProblem<T>, FamilyCase)> {
    let case = kummer_case(a.as_f64(), b.as_f64())?;
    let kappa = ((T::one() - a) / (b - a)).sqrt();
    let scale = kappa * (b - a);
    let c0 = T::one() - c::<T>(2.0) * a + b;
    let two = c::<T>(2.0);
    let p = RiccatiProblem::new(
        move |z: T| Ok(kummer_ratio(a, b, (z / scale).exp())?.as_h() * kappa),
        move |z: T| (c0 - (z / scale).exp()) / (two * scale),
        (T::neg_infinity(), T::infinity()),
    )
    .with_r_dot(move |z: T| -(z / scale).exp() / (two * scale * scale))
    .with_maps(move |x: T| scale * x.ln(), move |z: T| (z / scale).exp());
    Ok((p, case))
}

/// Case split for `F_L(eta, x)`, `L > 0`.
pub fn coulomb_case(l: f64, eta: f64) -> Result<FamilyCase> {
    if !(l > 0.0) || !l.is_finite() || !eta.is_finite() {
        return Err(Error::UnsupportedParameter(format!("Coulomb adapter needs L > 0, got L = {l}, eta = {eta}")));
    }
    let s = (l * l + eta * eta).sqrt();
    let bound = l * s / (s - eta);
    let inf = f64::INFINITY;
    let (id, omega) = if eta >= 0.0 {
        (CaseId::CoulombRepulsive, OmegaTrend::Increasing)
    } else {
        (CaseId::CoulombAttractive, OmegaTrend::Undeclared)
    };
    let mut case = FamilyCase::new(id, bound, (0.0, inf), (bound, inf), omega)
        .with_bespoke(Bespoke { region: (0.0, bound), guess: None });
    if eta < 0.0 {
        case.r_zero = Some(-l * s / eta);
    }
    Ok(case)
}

/// `h(z) = F_L(eta, x) / F_{L-1}(eta, x)`, `z = (s / L) x`, `r(z) = L / z + eta / s`,
/// `s = sqrt(L^2 + eta^2)`.
pub fn coulomb_problem<T: Widen>(l: T, eta: T) -> Result<(RiccatiProblem<T>, FamilyCase)> {
    let case = coulomb_case(l.as_f64(), eta.as_f64())?;
    let s = (l * l + eta * eta).sqrt();
    let x_max = c::<T>(coulomb_max_x(l.as_f64()));
    let p = RiccatiProblem::new(
        move |z: T| {
            let x = l * z / s;
            if x > x_max {
                return Err(Error::Domain(format!("Coulomb series limited to x <= {x_max}, got {x}")));
            }
            Ok(coulomb_ratio(l, eta, x)?.as_h())
        },
        move |z: T| l / z + eta / s,
        (T::zero(), T::infinity()),
    )
    .with_r_dot(move |z: T| -l / (z * z))
    .with_maps(move |x: T| s * x / l, move |z: T| l * z / s);
    Ok((p, case))
}
