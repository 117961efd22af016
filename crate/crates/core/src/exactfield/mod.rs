//! Exact scalars (ℚ and `F_p`) and dense linear algebra.

mod matrix;
pub mod poly;
mod scalar;

pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar, MAX_PRIME};
