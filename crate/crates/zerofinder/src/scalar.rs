//! Scalar abstraction shared by every numeric routine in the crate.

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real floating-point type the solvers are generic over (`f32`, `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Converts an unsigned count into `Self`.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy conversion to `f64` for diagnostics and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Unit roundoff. Double-double types report a subnormal `epsilon()`, so anything below
    /// `1e-40` is replaced by `2^-104`.
    #[inline]
    fn roundoff() -> Self {
        let e = Self::epsilon();
        if e.as_f64() < 1e-40 {
            Self::lit(2f64.powi(-104))
        } else {
            e
        }
    }

    /// Smallest denominator magnitude accepted before a division is treated as singular.
    #[inline]
    fn tiny() -> Self {
        Self::lit(1e-300).max(Self::min_positive_value())
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

#[inline]
pub(crate) fn c<T: Scalar>(v: f64) -> T {
    T::lit(v)
}

/// Scalar with a wider companion type used for cancellation-prone series.
pub trait Widen: Scalar {
    type Wide: Scalar;
    fn widen(self) -> Self::Wide;
    fn narrow(w: Self::Wide) -> Self;
}

impl Widen for f32 {
    type Wide = f64;
    fn widen(self) -> f64 {
        self as f64
    }
    fn narrow(w: f64) -> f32 {
        w as f32
    }
}

impl Widen for f64 {
    type Wide = crate::dd::DoubleDouble;
    fn widen(self) -> crate::dd::DoubleDouble {
        crate::dd::DoubleDouble::from(self)
    }
    fn narrow(w: crate::dd::DoubleDouble) -> f64 {
        w.into()
    }
}

impl Widen for crate::dd::DoubleDouble {
    type Wide = crate::dd::DoubleDouble;
    fn widen(self) -> Self {
        self
    }
    fn narrow(w: Self) -> Self {
        w
    }
}
