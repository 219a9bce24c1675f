//! Exact computations with DG algebras `A ⊆ B = A[X]` over a field: tensor
//! powers over `A`, the classical and reduced bar resolutions of `B` over
//! `B⊗_A B`, the semifree resolution built from the tensor algebra of the
//! suspended diagonal ideal, semifree DG modules and their naive lifting.

pub mod algebra;
pub mod derivation;
pub mod bar;
mod cache;
pub mod error;
pub mod expr;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod identities;
pub mod linalg;
pub mod module;
pub mod report;
pub mod semifree;
pub mod tensor;

pub use algebra::{AlgElement, DGAlgebra, Generator, Monomial, Sign, Which};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use report::{Check, Status, ValidationReport};
pub use tensor::{TensorElement, TensorWord};
