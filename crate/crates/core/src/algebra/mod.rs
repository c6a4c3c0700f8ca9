//! Scalar and matrix kernels: exact arithmetic over ℚ(i,√2) with
//! power-of-two denominators, and double-precision complex arithmetic.

mod exact;
mod matrix;
mod umatrix;

pub use exact::ExactScalar;
pub use matrix::{Scalar, SquareMatrix};
pub use umatrix::{Kernel, ScalarValue, UMatrix};
