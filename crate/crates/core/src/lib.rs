//! Exact finite-field and integer matrix toolkit for Deza-graph families,
//! self-orthogonal and LCD subspace codes, design verifiers, equitable
//! partitions and association schemes.

pub mod codes;
pub mod designs;
pub mod deza;
pub mod error;
pub mod exactmat;
pub mod gf;
mod packed;
pub mod par;
pub mod partitions;
pub mod report;
pub mod schemes;
pub mod verdict;

pub use error::{Error, Result};
pub use exactmat::{FqMatrix, IntMatrix};
pub use gf::{Field, FieldElement};
pub use report::{Check, Report};
pub use verdict::Verdict;
