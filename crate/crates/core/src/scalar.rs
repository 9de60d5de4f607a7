//! Scalar abstractions.
//!
//! The algebraic maps (embedding, `N`, `K`, brackets, the Lyapunov function)
//! only need ring operations, so they are written against [`Scalar`] and run
//! unchanged on `f32`, `f64` and exact rationals. Anything that takes a
//! square root, bisects or integrates in time needs [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// A commutative ring element with exact zero, usable by the algebraic maps.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds a small integer (the `(i - 2)` coefficients of `N`, the `1/4` of `f`).
    fn from_int(v: i64) -> Self;

    /// `false` for NaN or infinite floats; always `true` for exact types.
    fn is_finite_scalar(&self) -> bool {
        true
    }

    fn abs_value(&self) -> Self;

    /// Nearest `f64`, used for error reports and serialization.
    fn to_f64_approx(&self) -> f64;
}

/// Floating point scalars: everything the eigensolver and integrator need.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + ToPrimitive + Copy + Display + LowerExp {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn from_int(v: i64) -> Self {
                v as $t
            }

            #[inline]
            fn is_finite_scalar(&self) -> bool {
                <$t>::is_finite(*self)
            }

            #[inline]
            fn abs_value(&self) -> Self {
                <$t>::abs(*self)
            }

            #[inline]
            fn to_f64_approx(&self) -> f64 {
                *self as f64
            }
        }

        impl Real for $t {}
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn abs_value(&self) -> Self {
        if *self < Ratio::from_integer(0) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_f64_approx(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn abs_value(&self) -> Self {
        num_traits::Signed::abs(self)
    }

    fn to_f64_approx(&self) -> f64 {
        let num = self.numer().to_f64().unwrap_or(f64::NAN);
        let den = self.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    }
}
