//! Exact computer algebra for graded nilpotent Lie algebras at finite
//! truncation order: completed tensor, symmetric, free Lie and universal
//! enveloping algebras, and the symmetrization isomorphism between the
//! symmetric and enveloping algebras together with its splitting of the
//! tensor algebra.

pub mod envelope;
pub mod error;
pub mod freelie;
pub mod graded;
pub mod lie;
pub mod linalg;
pub mod lincomb;
pub mod pbw;
pub mod scalar;

pub use error::{Error, Result};
pub use graded::{BasisElement, GradedSpace, Permutation, TensorElement, Word};
pub use lincomb::{LinComb, Vector};
pub use scalar::Scalar;
