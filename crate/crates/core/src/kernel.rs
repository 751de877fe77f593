//! Closed-form generating functions obtained by the kernel method.
//!
//! Both kernels have the shape `K(u) = z u^2 + beta(z) u + 1`. Their small root
//! `s2 = (-beta - sqrt(beta^2 - 4z)) / (2z)` is a genuine power series with
//! constant term 1, and every closed form below is a rational expression in
//! `z` and `s2`. The large root `s1 = 1/(z s2)` is never built.
//!
//! Every public function computes intermediates with enough headroom that the
//! result is exact up to the requested order, and rejects non-integral output.

use std::fmt;

use crate::scalar::Scalar;
use crate::series::{SeriesError, TruncatedSeries};

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    /// `z u^2 + (z^2 - z - 1) u + 1`, shared by both air-pocket readings.
    Dap,
    /// `z u^2 + (2 z^2 - z - 1) u + 1`.
    Skew,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 2] = [KernelFamily::Dap, KernelFamily::Skew];

    /// Coefficients of the linear term `beta(z)`.
    fn linear(self) -> &'static [i64] {
        match self {
            KernelFamily::Dap => &[-1, -1, 1],
            KernelFamily::Skew => &[-1, -1, 2],
        }
    }

    /// `beta^2 - 4z`.
    fn radicand_coeffs(self) -> &'static [i64] {
        match self {
            KernelFamily::Dap => &[1, -2, -1, -2, 1],
            KernelFamily::Skew => &[1, -2, -3, -4, 4],
        }
    }

    /// Evaluates `K(u) = z u^2 + beta u + 1` at a series `u`.
    pub fn eval<T: Scalar>(self, u: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let order = u.order();
        let beta = TruncatedSeries::poly_truncated(self.linear(), order);
        let quad = (u * u).mul_z_pow(1).truncate(order);
        &(&quad + &(&beta * u)) + &TruncatedSeries::one(order)
    }

    /// The power-series root `s2`, exact to `order`.
    pub fn root<T: Scalar>(self, order: usize) -> Result<TruncatedSeries<T>> {
        let work = order + 1;
        let radicand = TruncatedSeries::poly_truncated(self.radicand_coeffs(), work);
        let neg_beta = -&TruncatedSeries::poly_truncated(self.linear(), work);
        let numerator = &neg_beta - &radicand.sqrt_unit()?;
        Ok(numerator.div_z_pow(1)?.scale(&half()))
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelFamily::Dap => "dap",
            KernelFamily::Skew => "skew",
        })
    }
}

fn half<T: Scalar>() -> T {
    T::one() / T::two()
}

fn exponent(k: usize) -> u32 {
    u32::try_from(k).expect("level exponent fits in u32")
}

/// `1 - 2z - z^2 - 2z^3 + z^4`. Requires `order >= 4`.
pub fn dap_radicand<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    TruncatedSeries::from_ints(KernelFamily::Dap.radicand_coeffs(), order)
}

/// `s2 = (1 + z - z^2 - sqrt(1 - 2z - z^2 - 2z^3 + z^4)) / (2z)`.
pub fn dap_s2<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    KernelFamily::Dap.root(order)?.ensure_integral()
}

fn dap_f_with<T: Scalar>(s2: &TruncatedSeries<T>, k: usize, order: usize) -> TruncatedSeries<T> {
    s2.pow(exponent(k)).mul_z_pow(k).truncate(order)
}

fn dap_g_with<T: Scalar>(s2: &TruncatedSeries<T>, k: usize, order: usize) -> TruncatedSeries<T> {
    let sk = s2.pow(exponent(k));
    (&(&sk * s2) - &sk).mul_z_pow(k).truncate(order)
}

/// Paths ending at level `k` right after an up-step: `z^k s2^k`.
pub fn dap_f<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let s2 = KernelFamily::Dap.root(order)?;
    dap_f_with(&s2, k, order).ensure_integral()
}

/// Paths ending at level `k` right after a down-step: `z^k (s2^{k+1} - s2^k)`.
pub fn dap_g<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let s2 = KernelFamily::Dap.root(order)?;
    dap_g_with(&s2, k, order).ensure_integral()
}

/// All partial paths ending at level `k`, computed as `f_k + g_k`.
pub fn dap_level<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let s2 = KernelFamily::Dap.root(order)?;
    (&dap_f_with(&s2, k, order) + &dap_g_with(&s2, k, order)).ensure_integral()
}

/// Partial paths ending anywhere: `(1 - z - z^2 - sqrt(..)) / (2 z^3)`.
pub fn dap_total<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    let work = order + 3;
    let radicand = TruncatedSeries::poly_truncated(KernelFamily::Dap.radicand_coeffs(), work);
    let lead = TruncatedSeries::<T>::poly_truncated(&[1, -1, -1], work);
    let numerator = &lead - &radicand.sqrt_unit()?;
    numerator.div_z_pow(3)?.scale(&half()).ensure_integral()
}

/// Right-to-left reading, all nonempty partial paths ending at level `k`.
///
/// `b_0 = s2 - 1` and `b_k = (s2 - 1)/z * s2^{k-1}` for `k >= 1`.
pub fn rl_b<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let s2 = KernelFamily::Dap.root(order + 1)?;
    let s2_minus_one = &s2 - &TruncatedSeries::one(order + 1);
    if k == 0 {
        return s2_minus_one.truncate(order).ensure_integral();
    }
    let head = s2_minus_one.div_z_pow(1)?;
    (&head * &s2.pow(exponent(k - 1))).truncate(order).ensure_integral()
}

/// Right-to-left reading, paths ending at level `k` after a down-step
/// (the empty path included at level 0): `[k = 0] + z b_{k+1}`.
pub fn rl_a<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let mut out = if order == 0 {
        TruncatedSeries::zero(0)
    } else {
        rl_b::<T>(k + 1, order - 1)?.mul_z_pow(1)
    };
    if k == 0 {
        out = &out + &TruncatedSeries::one(order);
    }
    Ok(out)
}

/// `1 - 2z - 3z^2 - 4z^3 + 4z^4`. Requires `order >= 4`.
pub fn skew_radicand<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    TruncatedSeries::from_ints(KernelFamily::Skew.radicand_coeffs(), order)
}

/// `s2 = (1 + z - 2z^2 - sqrt(1 - 2z - 3z^2 - 4z^3 + 4z^4)) / (2z)`.
pub fn skew_s2<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    KernelFamily::Skew.root(order)?.ensure_integral()
}

/// `1 / (1 - z s2)` for the skew root.
fn skew_inverse_factor<T: Scalar>(s2: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    let order = s2.order();
    let z_s2 = s2.mul_z_pow(1).truncate(order);
    TruncatedSeries::one(order).try_div(&(&TruncatedSeries::one(order) - &z_s2))
}

/// `A(1) = 1/(2(1-z)) + 1/(2(1 - z s2))`: skew paths ending after an up-step.
pub fn skew_a1<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    let inv = skew_inverse_factor(&KernelFamily::Skew.root::<T>(order)?)?;
    (&TruncatedSeries::geometric(order) + &inv).scale(&half()).ensure_integral()
}

/// `C(1) = -1/(2(1-z)) + 1/(2(1 - z s2))`: skew paths ending after a red step.
pub fn skew_c1<T: Scalar>(order: usize) -> Result<TruncatedSeries<T>> {
    let inv = skew_inverse_factor(&KernelFamily::Skew.root::<T>(order)?)?;
    (&inv - &TruncatedSeries::geometric(order)).scale(&half()).ensure_integral()
}

/// Skew paths ending at level `k`: `z^k s2^{k+1} (1 - z^2 - z s2) / (1 - z s2)`.
pub fn skew_level<T: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    let s2 = KernelFamily::Skew.root::<T>(order)?;
    let z_s2 = s2.mul_z_pow(1).truncate(order);
    let factor = &TruncatedSeries::poly_truncated(&[1, 0, -1], order) - &z_s2;
    let inv = skew_inverse_factor(&s2)?;
    let body = &(&s2.pow(exponent(k + 1)) * &factor) * &inv;
    body.mul_z_pow(k).truncate(order).ensure_integral()
}

/// `K(s2)` for the family's own root; identically zero.
pub fn kernel_residual<T: Scalar>(family: KernelFamily, order: usize) -> Result<TruncatedSeries<T>> {
    Ok(family.eval(&family.root::<T>(order)?))
}

/// `z s2^2 K(1/(z s2)) = 1 + beta s2 + z s2^2`, the polynomial form of the
/// statement that `s1 = 1/(z s2)` is the other kernel root (`s1 s2 = 1/z`).
pub fn reciprocal_root_residual<T: Scalar>(
    family: KernelFamily,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    let s2 = family.root::<T>(order)?;
    let beta = TruncatedSeries::poly_truncated(family.linear(), order);
    let z_s2_sq = (&s2 * &s2).mul_z_pow(1).truncate(order);
    Ok(&(&TruncatedSeries::one(order) + &(&beta * &s2)) + &z_s2_sq)
}
