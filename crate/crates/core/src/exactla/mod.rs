//! Exact fields and dense linear algebra over them.

mod field;
mod matrix;

pub use field::{Field, Frac, PrimeField, RationalFunctionField, MAX_PRIME};
pub use matrix::Matrix;
