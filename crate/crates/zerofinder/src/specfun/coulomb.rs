//! Regular Coulomb wave functions through the power series of `F_L(eta, rho) / (C_L rho^{L+1})`.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar, Widen};
use crate::specfun::kummer::MAX_CONDITION;
use crate::specfun::{RatioSample, SeriesSum};

/// `S_L(rho) = sum a_m rho^m` with `a_0 = 1`, `a_1 = eta / (L + 1)` and
/// `m (m + 2L + 1) a_m = 2 eta a_{m-1} - a_{m-2}`.
pub fn coulomb_series<W: Scalar>(l: W, eta: W, rho: W) -> Result<SeriesSum<W>> {
    let two = c::<W>(2.0);
    let mut acc = SeriesSum::new();
    // Recur on the terms t_m = a_m rho^m so neither factor overflows.
    let (mut tm2, mut tm1) = (W::one(), eta / (l + W::one()) * rho);
    acc.push(tm2, W::zero());
    acc.push(tm1, W::one());
    let mut quiet = 0;
    for m in 2..50_000usize {
        let mf = W::from_count(m);
        let t = (two * eta * rho * tm1 - rho * rho * tm2) / (mf * (mf + two * l + W::one()));
        acc.push(t, mf);
        // Three-term recurrences can produce isolated tiny terms; require a quiet run.
        if t.abs() <= W::roundoff() * acc.abs_sum * c::<W>(0.01) && mf > rho.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
        tm2 = tm1;
        tm1 = t;
    }
    Err(Error::NoConvergence { terms: 50_000 })
}

/// `F_L(eta, x) / F_{L-1}(eta, x)` for `L > 0`.
///
/// With `C_L / C_{L-1} = sqrt(L^2 + eta^2) / (L (2L + 1))` no gamma function is needed.
pub fn coulomb_ratio<T: Widen>(l: T, eta: T, x: T) -> Result<RatioSample<T>> {
    if !(l > T::zero()) || !(x > T::zero()) {
        return Err(Error::Domain(format!("Coulomb ratio needs L > 0, x > 0 (L = {l}, x = {x})")));
    }
    let (lw, ew, xw) = (l.widen(), eta.widen(), x.widen());
    let upper = coulomb_series(lw, ew, xw)?;
    let lower = coulomb_series(lw - <T::Wide as num_traits::One>::one(), ew, xw)?;
    for s in [&upper, &lower] {
        let cond = s.condition().as_f64();
        if cond > MAX_CONDITION {
            return Err(Error::CancellationLoss { condition: cond });
        }
    }
    let s = (lw * lw + ew * ew).sqrt();
    let factor = s / (lw * (c::<T::Wide>(2.0) * lw + <T::Wide as num_traits::One>::one())) * xw;
    Ok(RatioSample::quotient(T::narrow(factor * upper.sum()), T::narrow(lower.sum())))
}
