//! Scalar types a lattice basis can be written in.
//!
//! Integer scalars (`i64`, `i128`, [`BigInt`]) are *exact*: determinants, Gram
//! matrices and reduction run in arbitrary precision and fall back to the
//! scalar only at the API boundary, reporting [`Error::Overflow`] instead of
//! wrapping. Floating scalars run the same algorithms in their own precision
//! with explicit tolerances.
//!
//! [`Error::Overflow`]: crate::Error::Overflow

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Arithmetic needed by Gaussian elimination: either exact rationals or floats.
pub trait FieldScalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {
    fn from_f64_value(x: f64) -> Option<Self>;
    fn as_f64(&self) -> f64;
}

impl FieldScalar for BigRational {
    fn from_f64_value(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl FieldScalar for f64 {
    fn from_f64_value(x: f64) -> Option<Self> {
        Some(x)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl FieldScalar for f32 {
    fn from_f64_value(x: f64) -> Option<Self> {
        Some(x as f32)
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// True for integer kinds, whose arithmetic is carried out exactly.
    const EXACT: bool;

    /// Field used for elimination: exact rationals or the float type itself.
    type Field: FieldScalar;

    fn to_field(&self) -> Self::Field;

    /// Nearest integer to `x` if `x` is integral (exactly, or within `tol` for floats).
    fn field_to_integer(x: &Self::Field, tol: f64) -> Option<BigInt>;

    fn from_bigint(v: &BigInt) -> Option<Self>;

    /// Exact integer value; `None` for float kinds.
    fn exact_integer(&self) -> Option<BigInt>;

    fn as_f64(&self) -> f64;

    fn from_f64_value(x: f64) -> Option<Self>;
}

macro_rules! impl_int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = true;
            type Field = BigRational;

            fn to_field(&self) -> BigRational {
                BigRational::from_integer(BigInt::from(*self))
            }
            fn field_to_integer(x: &BigRational, _tol: f64) -> Option<BigInt> {
                x.is_integer().then(|| x.to_integer())
            }
            fn from_bigint(v: &BigInt) -> Option<Self> {
                v.to_string().parse().ok()
            }
            fn exact_integer(&self) -> Option<BigInt> {
                Some(BigInt::from(*self))
            }
            fn as_f64(&self) -> f64 {
                *self as f64
            }
            fn from_f64_value(x: f64) -> Option<Self> {
                (x.fract() == 0.0).then(|| <$t>::from_f64(x)).flatten()
            }
        }
    )*};
}

impl_int_scalar!(i32, i64, i128);

impl Scalar for BigInt {
    const EXACT: bool = true;
    type Field = BigRational;

    fn to_field(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn field_to_integer(x: &BigRational, _tol: f64) -> Option<BigInt> {
        x.is_integer().then(|| x.to_integer())
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn exact_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn from_f64_value(x: f64) -> Option<Self> {
        (x.fract() == 0.0).then(|| BigInt::from_f64(x)).flatten()
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = false;
            type Field = $t;

            fn to_field(&self) -> $t {
                *self
            }
            fn field_to_integer(x: &$t, tol: f64) -> Option<BigInt> {
                let r = x.round();
                ((*x - r).abs() as f64 <= tol).then(|| BigInt::from_f64(r as f64)).flatten()
            }
            fn from_bigint(v: &BigInt) -> Option<Self> {
                v.to_f64().map(|x| x as $t)
            }
            fn exact_integer(&self) -> Option<BigInt> {
                None
            }
            fn as_f64(&self) -> f64 {
                *self as f64
            }
            fn from_f64_value(x: f64) -> Option<Self> {
                Some(x as $t)
            }
        }
    )*};
}

impl_float_scalar!(f32, f64);
