//! Exact computations around the interpolated Gaudin Bethe algebra: a
//! walled-Brauer diagram category over `Q[w]`, the universal trace and
//! column-determinant generators with matrix and diagram backends, Fuchsian
//! no-monodromy ideals with their stabilized interpolations, and a truncated
//! pseudo-differential calculus for ratios of differential operators.
//!
//! Everything is exact rational arithmetic; truncation horizons are explicit
//! arguments wherever series are involved.

// banded-matrix and multi-array index loops read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod bethe;
pub mod diagram;
pub mod fuchs;
pub mod linalg;
pub mod psdo;
pub mod rings;
pub mod sample;

pub use rings::{falling_factorial, Rat, Ring, WPoly};
