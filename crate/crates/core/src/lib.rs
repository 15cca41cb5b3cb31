//! Exact-arithmetic toolkit for algebraic curve branches given by formal
//! power-series parameterizations: multiplicity sequences via blow-up,
//! Arf closures of numerical semigroups and of subrings of `k[[t]]`,
//! characters, bases and minimal embedding dimension.

pub mod arfring;
pub mod branch;
pub mod error;
pub mod field;
pub mod oracles;
pub mod semigroup;
pub mod series;

pub use error::{Error, ErrorCategory, Result};
pub use field::{FieldSpec, Scalar};
pub use series::{OrderValue, PowerSeries, DEFAULT_PRECISION};
