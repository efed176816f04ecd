//! Exact matrices and the subspace lattice: kernel, image, sum, intersection,
//! preimage, quotients and induced maps.

#[macro_use]
pub(crate) mod elim;
mod matrix;
mod quotient;
mod subspace;
pub mod vector;

pub use elim::{rref, rref_with, Echelon, Strategy, DENSE_THRESHOLD};
pub use matrix::Matrix;
pub use quotient::{induced_map, quotient, QuotientPresentation};
pub use subspace::{image, kernel, preimage, Subspace};
pub use vector::SparseVec;
