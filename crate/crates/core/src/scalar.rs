//! Coefficient domains for truncated series.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

/// A field-like coefficient type usable inside a [`TruncatedSeries`](crate::TruncatedSeries).
///
/// Exact instantiations (`BigRational`) give bit-exact results; the float
/// instantiations are useful for quick numerics but can only approximate
/// the integrality checks made by the kernel module.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Whether the value is an integer (within rounding for floats).
    fn is_integral(&self) -> bool;

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! float_scalar {
    ($($t:ty => $tol:expr),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn is_integral(&self) -> bool {
                self.is_finite() && (self - self.round()).abs() <= $tol * self.abs().max(1.0)
            }
        }
    )*};
}

float_scalar!(f64 => 1e-9, f32 => 1e-4);

/// True when the rational is stored in lowest terms with a positive denominator.
pub fn is_canonical(q: &BigRational) -> bool {
    use num_integer::Integer;
    let den = q.denom();
    den > &BigInt::zero() && q.numer().gcd(den).is_one()
}
