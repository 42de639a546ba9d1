//! Double-double scalar for convergence measurements below f64 roundoff.
//!
//! Wraps [`twofloat::TwoFloat`] and replaces its division, whose error term is
//! computed without a fused multiply-add and therefore only reaches f64 accuracy.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// About 32 significant digits for +, −, ×, ÷ and √; transcendental functions are those of `twofloat`.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble(pub TwoFloat);

impl DoubleDouble {
    pub fn of(x: f64) -> Self {
        Self(tf(x))
    }

    pub fn hi(self) -> f64 {
        self.0.hi()
    }
}

#[inline]
fn tf(x: f64) -> TwoFloat {
    <TwoFloat as From<f64>>::from(x)
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self(tf(x))
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&self.0, f)
    }
}

macro_rules! delegate_op {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for DoubleDouble {
            type Output = Self;
            #[inline]
            fn $m(self, o: Self) -> Self {
                Self($tr::$m(self.0, o.0))
            }
        }
        impl $atr for DoubleDouble {
            #[inline]
            fn $am(&mut self, o: Self) {
                *self = $tr::$m(*self, o);
            }
        }
    };
}

delegate_op!(Add, add, AddAssign, add_assign);
delegate_op!(Sub, sub, SubAssign, sub_assign);
delegate_op!(Mul, mul, MulAssign, mul_assign);

impl Div for DoubleDouble {
    type Output = Self;

    /// Long division with two correction quotients.
    #[inline]
    fn div(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        let q1 = a.hi() / b.hi();
        if !q1.is_finite() || q1 == 0.0 {
            return Self(tf(q1));
        }
        let r = a - b * q1;
        let q2 = r.hi() / b.hi();
        let r = r - b * q2;
        let q3 = r.hi() / b.hi();
        Self(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl DivAssign for DoubleDouble {
    #[inline]
    fn div_assign(&mut self, o: Self) {
        *self = *self / o;
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        let q = (self / o).trunc();
        self - q * o
    }
}

impl RemAssign for DoubleDouble {
    fn rem_assign(&mut self, o: Self) {
        *self = *self % o;
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self(tf(0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self(tf(1.0))
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(Self)
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
        Some(self.0.hi() + self.0.lo())
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::of(n as f64) + Self::of((n - (n as f64) as i64) as f64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::of(n as f64) + Self::of(n.wrapping_sub((n as f64) as u64) as i64 as f64))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self(tf(x)))
    }
    fn from_f32(x: f32) -> Option<Self> {
        Some(Self(tf(x as f64)))
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Self::of)
    }
}

macro_rules! consts {
    ($($name:ident),*) => {
        impl FloatConst for DoubleDouble {
            $(fn $name() -> Self { Self(<TwoFloat as FloatConst>::$name()) })*
        }
    };
}

consts!(E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2);

macro_rules! unary {
    ($($m:ident),*) => { $(fn $m(self) -> Self { Self(<TwoFloat as Float>::$m(self.0)) })* };
}
macro_rules! binary {
    ($($m:ident),*) => { $(fn $m(self, o: Self) -> Self { Self(<TwoFloat as Float>::$m(self.0, o.0)) })* };
}
macro_rules! predicate {
    ($($m:ident),*) => { $(fn $m(self) -> bool { <TwoFloat as Float>::$m(self.0) })* };
}
macro_rules! constant {
    ($($m:ident),*) => { $(fn $m() -> Self { Self(<TwoFloat as Float>::$m()) })* };
}

impl Float for DoubleDouble {
    constant!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value);
    predicate!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    unary!(
        floor, ceil, round, trunc, fract, abs, signum, sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan, asin,
        acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh
    );
    binary!(powf, log, abs_sub, hypot, atan2);

    fn classify(self) -> FpCategory {
        <TwoFloat as Float>::classify(self.0)
    }

    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base *= base;
            k >>= 1;
        }
        acc
    }

    fn max(self, o: Self) -> Self {
        match self.partial_cmp(&o) {
            Some(Ordering::Less) => o,
            None if self.is_nan() => o,
            _ => self,
        }
    }

    fn min(self, o: Self) -> Self {
        match self.partial_cmp(&o) {
            Some(Ordering::Greater) => o,
            None if self.is_nan() => o,
            _ => self,
        }
    }

    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    fn integer_decode(self) -> (u64, i16, i8) {
        <TwoFloat as Float>::integer_decode(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_double_double_accurate() {
        let one = DoubleDouble::one();
        let three = DoubleDouble::of(3.0);
        let e = (one / three) * three - one;
        assert!(e.abs().hi() < 1e-30, "{:e}", e.hi());
        let x = DoubleDouble::of(1.2345);
        assert!(((x * x) / x - x).abs().hi() < 1e-30);
        assert!((x.recip() * x - one).abs().hi() < 1e-30);
    }
}
