//! Exact computations with finite-dimensional left Leibniz algebras given by
//! structure constants: classical invariants, central series, and the Lie
//! algebra of derivations, over the rationals or a prime field.

pub mod algebra;
pub mod catalog;
pub mod derivations;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod oracle;

pub use algebra::{LeibnizAlgebra, Side, StructureTable};
pub use catalog::{CatalogEntry, CatalogKind};
pub use derivations::{DerReport, DerivationAlgebra};
pub use error::{Error, Result};
pub use fields::{ArithOp, Field, Scalar};
pub use linalg::{Matrix, Subspace};
