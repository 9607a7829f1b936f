//! Double-double scalar.
//!
//! A thin wrapper over [`twofloat::TwoFloat`]. The upstream quotient forms its residual
//! `1 - b * (1/b)` without a fused multiply-add, so it cancels to zero and the result
//! is only as accurate as an `f64` division. Here division is done by two correction
//! steps with exact `TwoFloat * f64` products, and the functions that divide internally
//! are rebuilt on top of it. Everything else delegates.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// Double-double number (about 32 significant digits).
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    pub fn lit(v: f64) -> Self {
        DoubleDouble(<TwoFloat as From<f64>>::from(v))
    }

    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    pub fn inner(self) -> TwoFloat {
        self.0
    }

    /// `self * 2^k`, exact barring overflow.
    fn scale(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble(TwoFloat::new_add(self.hi() * f, self.lo() * f))
    }

    /// `e^x - 1` by its Maclaurin series; meant for `|x| < 1/2`.
    fn exp_m1_series(self) -> Self {
        let mut term = self;
        let mut sum = self;
        for k in 2..60 {
            term = term * self / DoubleDouble::lit(k as f64);
            sum = sum + term;
            if term.hi().abs() <= 1e-34 * sum.hi().abs() {
                break;
            }
        }
        sum
    }

    /// `(sin x, cos x)` by Maclaurin series; meant for `|x| <= pi/4`.
    fn sin_cos_series(self) -> (Self, Self) {
        let x2 = self * self;
        let (mut s, mut ts) = (self, self);
        let (mut c, mut tc) = (Self::one(), Self::one());
        for k in 1..40 {
            let kf = 2.0 * k as f64;
            tc = -tc * x2 / DoubleDouble::lit(kf * (kf - 1.0));
            ts = -ts * x2 / DoubleDouble::lit(kf * (kf + 1.0));
            s = s + ts;
            c = c + tc;
            if tc.hi().abs() <= 1e-34 {
                break;
            }
        }
        (s, c)
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        DoubleDouble(<TwoFloat as From<f64>>::from(v))
    }
}

impl From<TwoFloat> for DoubleDouble {
    fn from(v: TwoFloat) -> Self {
        DoubleDouble(v)
    }
}

impl From<DoubleDouble> for f64 {
    fn from(v: DoubleDouble) -> f64 {
        v.hi() + v.lo()
    }
}

fn quotient(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    if !q1.is_finite() || q1 == 0.0 {
        return <TwoFloat as From<f64>>::from(q1);
    }
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi(), self.lo())
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&(self.hi() + self.lo()), f)
    }
}

// Lexicographic on (hi, lo): the upstream ordering mishandles infinities.
impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi().partial_cmp(&other.hi())? {
            Ordering::Equal if self.hi().is_infinite() => Some(Ordering::Equal),
            Ordering::Equal => self.lo().partial_cmp(&other.lo()),
            o => Some(o),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $body:expr) => {
        impl $tr for DoubleDouble {
            type Output = Self;
            #[inline]
            fn $m(self, rhs: Self) -> Self {
                let f: fn(TwoFloat, TwoFloat) -> TwoFloat = $body;
                DoubleDouble(f(self.0, rhs.0))
            }
        }
        impl $atr for DoubleDouble {
            #[inline]
            fn $am(&mut self, rhs: Self) {
                *self = $tr::$m(*self, rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a + b);
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a - b);
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a * b);
binop!(Div, div, DivAssign, div_assign, quotient);
binop!(Rem, rem, RemAssign, rem_assign, |a, b| {
    let q = quotient(a, b).trunc();
    a - q * b
});

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble(-self.0)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble(TwoFloat::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble(TwoFloat::one())
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(DoubleDouble::lit)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi() + self.lo())
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        TwoFloat::from_i64(n).map(DoubleDouble)
    }
    fn from_u64(n: u64) -> Option<Self> {
        TwoFloat::from_u64(n).map(DoubleDouble)
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(DoubleDouble::lit(n))
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(DoubleDouble::lit)
    }
}

macro_rules! consts {
    ($($name:ident),*) => {
        impl FloatConst for DoubleDouble {
            $(fn $name() -> Self { DoubleDouble(<TwoFloat as FloatConst>::$name()) })*
        }
    };
}

consts!(
    E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4,
    FRAC_PI_6, FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2
);

macro_rules! unary {
    ($($m:ident),*) => {
        $(#[inline] fn $m(self) -> Self { DoubleDouble(<TwoFloat as Float>::$m(self.0)) })*
    };
}

macro_rules! predicate {
    ($($m:ident),*) => {
        $(#[inline] fn $m(self) -> bool { <TwoFloat as Float>::$m(self.0) })*
    };
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        DoubleDouble(TwoFloat::nan())
    }
    fn infinity() -> Self {
        DoubleDouble(TwoFloat::infinity())
    }
    fn neg_infinity() -> Self {
        DoubleDouble(TwoFloat::neg_infinity())
    }
    fn neg_zero() -> Self {
        DoubleDouble(TwoFloat::neg_zero())
    }
    fn min_value() -> Self {
        DoubleDouble(<TwoFloat as Float>::min_value())
    }
    fn min_positive_value() -> Self {
        DoubleDouble(TwoFloat::min_positive_value())
    }
    fn max_value() -> Self {
        DoubleDouble(<TwoFloat as Float>::max_value())
    }
    /// `2^-104`, the spacing of a double-double near one.
    fn epsilon() -> Self {
        DoubleDouble::lit(2f64.powi(-104))
    }

    predicate!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    unary!(floor, ceil, round, trunc, fract, abs, signum, sqrt);

    fn exp(self) -> Self {
        if !self.is_finite() || self.hi().abs() > 709.0 {
            return DoubleDouble::lit(self.hi().exp());
        }
        let ln2 = Self::LN_2();
        let k = (self.hi() / ln2.hi()).round();
        // Reduce to |r| <= ln2 / 2^11, sum the series, then square back up.
        let r = (self - ln2 * DoubleDouble::lit(k)) * DoubleDouble::lit(2f64.powi(-10));
        let mut v = r.exp_m1_series();
        for _ in 0..10 {
            v = v * (v + DoubleDouble::lit(2.0));
        }
        (v + Self::one()).scale(k as i32)
    }
    fn exp_m1(self) -> Self {
        if self.hi().abs() < 0.5 {
            self.exp_m1_series()
        } else {
            self.exp() - Self::one()
        }
    }
    fn exp2(self) -> Self {
        (self * Self::LN_2()).exp()
    }
    fn ln(self) -> Self {
        if !(self.hi() > 0.0) || !self.is_finite() {
            return DoubleDouble::lit(self.hi().ln());
        }
        // Newton on exp(y) = x from the f64 logarithm; each step doubles the digits.
        let mut y = DoubleDouble::lit(self.hi().ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::one();
        }
        y
    }
    fn ln_1p(self) -> Self {
        if self.hi().abs() > 0.5 {
            return (Self::one() + self).ln();
        }
        let mut y = DoubleDouble::lit(self.hi().ln_1p());
        for _ in 0..2 {
            let u = y.exp_m1();
            y = y + (self - u) / (Self::one() + u);
        }
        y
    }
    fn log2(self) -> Self {
        self.ln() / Self::LN_2()
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10()
    }
    fn cbrt(self) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self;
        }
        let mut y = DoubleDouble::lit(self.hi().cbrt());
        for _ in 0..2 {
            y = y - (y * y * y - self) / (DoubleDouble::lit(3.0) * y * y);
        }
        y
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn atan(self) -> Self {
        if !self.is_finite() {
            return DoubleDouble::lit(self.hi().atan());
        }
        // Newton on tan(y) = x: y <- y - (sin y - x cos y) cos y.
        let mut y = DoubleDouble::lit(self.hi().atan());
        for _ in 0..2 {
            let (s, c) = y.sin_cos();
            y = y - (s - self * c) * c;
        }
        y
    }
    fn asin(self) -> Self {
        let one = Self::one();
        self.atan2(((one - self) * (one + self)).sqrt())
    }
    fn acos(self) -> Self {
        let one = Self::one();
        ((one - self) * (one + self)).sqrt().atan2(self)
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let v = (a + a / ((a * a + Self::one()).sqrt() + Self::one()) * a).ln_1p();
        v.copysign(self)
    }
    fn acosh(self) -> Self {
        (self + (self * self - Self::one()).sqrt()).ln()
    }

    fn classify(self) -> FpCategory {
        self.hi().classify()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn powf(self, n: Self) -> Self {
        (n * self.ln()).exp()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn atan2(self, other: Self) -> Self {
        let pi = Self::PI();
        if other.is_zero() {
            if self.is_zero() {
                return Self::zero();
            }
            return Self::FRAC_PI_2().copysign(self);
        }
        let base = (self / other).atan();
        if other > Self::zero() {
            base
        } else if self >= Self::zero() {
            base + pi
        } else {
            base - pi
        }
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let half_pi = Self::FRAC_PI_2();
        let k = (self.hi() / half_pi.hi()).round();
        let r = self - half_pi * DoubleDouble::lit(k);
        let (s, c) = r.sin_cos_series();
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn sinh(self) -> Self {
        // (e^x - e^-x) / 2 through expm1 to keep small arguments accurate.
        let e = self.abs().exp_m1();
        let v = (e + e / (e + Self::one())) * DoubleDouble::lit(0.5);
        v.copysign(self)
    }
    fn cosh(self) -> Self {
        let e = self.abs().exp();
        (e + e.recip()) * DoubleDouble::lit(0.5)
    }
    fn tanh(self) -> Self {
        let e = (DoubleDouble::lit(-2.0) * self.abs()).exp_m1();
        (-e / (e + DoubleDouble::lit(2.0))).copysign(self)
    }
    fn atanh(self) -> Self {
        let one = Self::one();
        ((one + self) / (one - self)).ln() * DoubleDouble::lit(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi().integer_decode()
    }
    fn copysign(self, sign: Self) -> Self {
        if self.is_sign_negative() == sign.is_sign_negative() {
            self
        } else {
            -self
        }
    }
}
