//! Exact computations for Rota-Baxter family algebras over finite semigroups.

pub mod algebra;
pub mod complex;
pub mod deformations;
pub mod dendriform;
pub mod error;
pub mod homotopy;
pub mod linalg;
pub mod omega_hom;
pub mod operator_complex;
pub mod rbfam_cohomology;
pub mod report;
pub mod samples;
pub mod scalar;
pub mod semigroup;
pub mod tensor;

pub use error::{Error, Limits, Result};
pub use linalg::Matrix;
pub use omega_hom::{compose_at, family_dim, gerstenhaber_bracket, OmegaMap};
pub use report::{Report, Violation};
pub use scalar::Scalar;
pub use semigroup::{check_semigroup, Semigroup};
pub use tensor::Multilinear;

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The default scalar field.
pub type Q = num_rational::BigRational;
