//! Graded vector spaces, algebras and modules with their axiom checkers.

mod algebra;
mod cauchy;
mod constructors;
mod module;
mod morphism;
mod space;

pub use algebra::{check_algebra, check_algebra_morphism, GradedAlgebra};
pub use cauchy::{assembled_mult, cauchy_algebra_oracle};
pub use constructors::{group_algebra, monomials, regular_module, shift_module, truncated_polynomial};
pub use module::{check_module, check_module_morphism, GradedModule};
pub use morphism::GradedMorphism;
pub use space::{graded_tensor, GradedTensor, GradedVectorSpace};

pub(crate) use module::same_algebra;
