//! Finite-dimensional graded algebras and complexes of graded free modules
//! over them, expanded degreewise into chain complexes of vector spaces.

mod algebra;
mod length;
mod module;
mod poly;

pub use algebra::{AlgebraElement, GradedAlgebra};
pub use length::{entry_degrees, entry_length, image_length, GradedLength};
pub use module::{
    koszul_complex, minimal_free_resolution, tensor_filtration, FilterBy, GradedComplex, GradedFreeModule,
    GradedModuleMap,
};
pub use poly::{monomial_degree, monomials, Monomial, Polynomial};
