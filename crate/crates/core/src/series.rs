//! Dense truncated power series in one variable `z`.
//!
//! A series of order `N` stores the coefficients of `z^0 ..= z^N`; nothing is
//! known about higher powers. Binary operations return the smaller of the two
//! input orders, so a result never claims more precision than its inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{len} coefficients do not fit in a series of order {order}")]
    Length { len: usize, order: usize },
    #[error("divisor has zero constant term")]
    NonUnit,
    #[error("square root requires constant term 1")]
    Domain,
    #[error("coefficient of z^{index} is nonzero, cannot divide by z^{power}")]
    NonDivisible { index: usize, power: usize },
    #[error("cannot divide a series of order {order} by z^{power}")]
    Exhausted { order: usize, power: usize },
    #[error("coefficient of z^{n} lies beyond order {order}")]
    OutOfOrder { n: usize, order: usize },
    #[error("coefficient of z^{index} is not an integer: {value}")]
    NonIntegral { index: usize, value: String },
}

/// Coefficients `c_0 ..= c_order` of a power series in `z`.
///
/// Equality compares coefficients up to the smaller of the two orders.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Builds a series from its low coefficients, zero padded up to `order`.
    pub fn make_poly(coeffs: Vec<T>, order: usize) -> Result<Self, SeriesError> {
        if coeffs.len() > order + 1 {
            return Err(SeriesError::Length {
                len: coeffs.len(),
                order,
            });
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, T::zero());
        Ok(Self { coeffs })
    }

    /// Like [`make_poly`](Self::make_poly) from machine integers.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Result<Self, SeriesError> {
        Self::make_poly(coeffs.iter().map(|&c| T::from_i64(c)).collect(), order)
    }

    /// A polynomial whose coefficients beyond `order` are dropped rather than rejected.
    pub(crate) fn poly_truncated(coeffs: &[i64], order: usize) -> Self {
        let len = coeffs.len().min(order + 1);
        Self::from_ints(&coeffs[..len], order).expect("length clamped to order")
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The geometric series `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![T::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&T, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfOrder {
            n,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Lowers the order to `order` (no-op if already lower).
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `z^m`. The order grows by `m` since the new low terms are known zeros.
    pub fn mul_z_pow(&self, m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `z^m`, requiring the low `m` coefficients to be exactly zero.
    pub fn div_z_pow(&self, m: usize) -> Result<Self, SeriesError> {
        if m > self.order() {
            return Err(SeriesError::Exhausted {
                order: self.order(),
                power: m,
            });
        }
        if let Some(index) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NonDivisible { index, power: m });
        }
        Ok(Self {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    /// Series quotient `self / divisor` up to the common order.
    pub fn try_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::NonUnit);
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<T> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc = acc - divisor.coeffs[j].clone() * q[n - j].clone();
            }
            q.push(acc / b0.clone());
        }
        Ok(Self { coeffs: q })
    }

    /// Square root with constant term 1 of a series with constant term 1.
    ///
    /// Solves `c_n = (a_n - sum_{j=1}^{n-1} c_j c_{n-j}) / 2` term by term.
    pub fn sqrt_unit(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::Domain);
        }
        let two = T::two();
        let mut c: Vec<T> = Vec::with_capacity(self.coeffs.len());
        c.push(T::one());
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for j in 1..n {
                acc = acc - c[j].clone() * c[n - j].clone();
            }
            c.push(acc / two.clone());
        }
        Ok(Self { coeffs: c })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Rejects the series at its first non-integral coefficient.
    pub fn ensure_integral(self) -> Result<Self, SeriesError> {
        match self.coeffs.iter().position(|c| !c.is_integral()) {
            None => Ok(self),
            Some(index) => Err(SeriesError::NonIntegral {
                index,
                value: self.coeffs[index].to_string(),
            }),
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl<T: Scalar> PartialEq for TruncatedSeries<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(T::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * rhs.coeffs[n - j].clone()
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn neg(self) -> TruncatedSeries<T> {
        self.map(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for TruncatedSeries<T> {
            type Output = TruncatedSeries<T>;

            fn $m(self, rhs: Self) -> TruncatedSeries<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn neg(self) -> TruncatedSeries<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Zero};

    type S = TruncatedSeries<Rational>;

    fn ints(s: &S) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn make_poly_pads_and_rejects_overflow() {
        assert_eq!(ints(&S::from_ints(&[1], 3).unwrap()), [1, 0, 0, 0]);
        assert_eq!(
            ints(&S::from_ints(&[1, -2, -1, -2, 1], 8).unwrap()),
            [1, -2, -1, -2, 1, 0, 0, 0, 0]
        );
        let empty = S::make_poly(vec![], 0).unwrap();
        assert!(empty.is_zero());
        assert_eq!(empty.order(), 0);
        assert_eq!(
            S::from_ints(&[1, 2, 3], 1),
            Err(SeriesError::Length { len: 3, order: 1 })
        );
    }

    #[test]
    fn ring_operations() {
        let a = S::from_ints(&[1, 1], 4).unwrap();
        let b = S::from_ints(&[0, 0, 1], 4).unwrap();
        assert_eq!(ints(&(&a + &b)), [1, 1, 1, 0, 0]);
        assert_eq!(ints(&(&a * &a)), [1, 2, 1, 0, 0]);
        assert!((&a + &(-&a)).is_zero());
        assert_eq!(ints(&a.scale(&Rational::from_integer(3.into()))), [3, 3, 0, 0, 0]);
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = S::one(3);
        let b = S::one(7);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!(a.scale(&Rational::one()).order(), 3);
    }

    #[test]
    fn telescoping_product() {
        let n = 12;
        let one_minus_z = S::from_ints(&[1, -1], n).unwrap();
        let prod = &one_minus_z * &S::geometric(n);
        assert_eq!(prod, S::one(n));
    }

    #[test]
    fn division() {
        let one_minus_z = S::from_ints(&[1, -1], 9).unwrap();
        assert_eq!(S::one(9).try_div(&one_minus_z).unwrap(), S::geometric(9));
        let a = S::from_ints(&[3, 1, 4, 1, 5], 6).unwrap();
        assert_eq!(a.try_div(&a).unwrap(), S::one(6));
        let z = S::from_ints(&[0, 1], 4).unwrap();
        assert_eq!(a.try_div(&z), Err(SeriesError::NonUnit));
    }

    #[test]
    fn division_handles_rational_constants() {
        let a = S::one(5);
        let b = S::from_ints(&[2, 1], 5).unwrap();
        let q = a.try_div(&b).unwrap();
        assert_eq!(*q.coeff(0).unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn sqrt_of_square_and_domain() {
        let sq = S::from_ints(&[1, 2, 1], 6).unwrap();
        assert_eq!(ints(&sq.sqrt_unit().unwrap()), [1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(S::one(3).sqrt_unit().unwrap(), S::one(3));
        assert_eq!(S::from_ints(&[4, 1], 3).unwrap().sqrt_unit(), Err(SeriesError::Domain));
        assert_eq!(S::zero(3).sqrt_unit(), Err(SeriesError::Domain));
    }

    #[test]
    fn sqrt_of_radicand_squares_back() {
        let rad = S::from_ints(&[1, -2, -1, -2, 1], 20).unwrap();
        let root = rad.sqrt_unit().unwrap();
        assert_eq!(ints(&root)[..4], [1, -1, -1, -2]);
        assert_eq!(&root * &root, rad);
    }

    #[test]
    fn z_shifts() {
        let a = S::from_ints(&[0, 0, 1, 0, 1], 6).unwrap();
        let shifted = a.div_z_pow(2).unwrap();
        assert_eq!(ints(&shifted), [1, 0, 1, 0, 0]);
        assert_eq!(shifted.order(), 4);
        assert_eq!(a.div_z_pow(0).unwrap(), a);
        assert_eq!(
            S::from_ints(&[1, 1], 3).unwrap().div_z_pow(1),
            Err(SeriesError::NonDivisible { index: 0, power: 1 })
        );
        assert!(matches!(S::zero(2).div_z_pow(3), Err(SeriesError::Exhausted { .. })));
        let z2 = S::one(4).mul_z_pow(2);
        assert_eq!(ints(&z2), [0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(z2.order(), 6);
    }

    #[test]
    fn coeff_and_pow() {
        let a = S::from_ints(&[1, 3], 2).unwrap();
        assert_eq!(*a.coeff(1).unwrap(), Rational::from_integer(3.into()));
        assert_eq!(a.coeff(3), Err(SeriesError::OutOfOrder { n: 3, order: 2 }));
        let b = S::from_ints(&[1, 1], 5).unwrap();
        assert_eq!(ints(&b.pow(2)), [1, 2, 1, 0, 0, 0]);
        assert_eq!(ints(&b.pow(5)), [1, 5, 10, 10, 5, 1]);
        assert_eq!(b.pow(0), S::one(5));
    }

    #[test]
    fn equality_is_up_to_common_order() {
        let a = S::from_ints(&[1, 2], 1).unwrap();
        let b = S::from_ints(&[1, 2, 99], 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(S::from_ints(&[1, 3], 1).unwrap(), b);
    }

    #[test]
    fn integrality_guard() {
        let half = S::one(2).scale(&Rational::new(1.into(), 2.into()));
        assert!(matches!(half.ensure_integral(), Err(SeriesError::NonIntegral { index: 0, .. })));
        assert!(S::zero(2).ensure_integral().is_ok());
        assert!(Rational::zero().is_integer());
    }

    #[test]
    fn display() {
        let a = S::from_ints(&[1, 0, -2], 3).unwrap();
        assert_eq!(a.to_string(), "1 + -2*z^2 + O(z^4)");
    }

    #[test]
    fn float_instantiation() {
        let rad = TruncatedSeries::<f64>::from_ints(&[1, -2, -1, -2, 1], 10).unwrap();
        let root = rad.sqrt_unit().unwrap();
        let back = &root * &root;
        for (x, y) in back.coeffs().iter().zip(rad.coeffs()) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
