//! Exact and numeric engine for partial multiple L-values: series oracles,
//! closed forms over the ring generated by log2, pi^2 and odd zeta values,
//! Gamma-product generating functions, and consistency checks tying the
//! three together.

pub mod algebra;
pub mod bigfloat;
pub mod constants;
pub mod cyclotomic;
pub mod error;
pub mod lvalues;
pub mod partitions;
pub mod rational;
pub mod series;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
