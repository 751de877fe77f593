//! Exact generating functions for partial Dyck paths with air pockets, and
//! the combinatorial oracles that check them.
//!
//! * [`series`]: truncated power series over any [`Scalar`].
//! * [`kernel`]: closed forms in the kernel root `s2`.
//! * [`automata`]: step-level path models, DFS and DP counting, sampling.
//! * [`verify`]: the cross-check matrix behind the `verify` subcommand.
//! * [`cli`]: series families, output formats and rendering for the binary.

pub mod automata;
pub mod kernel;
pub mod cli;
pub mod reference;
pub mod scalar;
pub mod series;
pub mod verify;

pub use automata::{CountTable, Layer, ModelId, PathWord, Step};
pub use kernel::KernelFamily;
pub use scalar::Scalar;
pub use series::{SeriesError, TruncatedSeries};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Series over exact rationals; the instantiation every check uses.
pub type Series = TruncatedSeries<Rational>;
/// Double-precision series, for quick numerics.
pub type SeriesF64 = TruncatedSeries<f64>;
/// Single-precision series.
pub type SeriesF32 = TruncatedSeries<f32>;
