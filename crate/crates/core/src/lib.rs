pub mod bgg;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod kmodule;
pub mod polyalgebra;
pub mod rankvariety;
pub mod suppcomm;

pub use error::{Error, Result};
