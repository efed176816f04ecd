//! Filtered chain complexes over exact fields and the spectral sequences
//! they determine.
//!
//! The crate is `no_std` (it needs `alloc`). Layers, bottom up:
//!
//! - [`field`]: rationals and prime fields;
//! - [`linalg`]: sparse matrices, canonical subspaces, quotient presentations;
//! - [`complex`]: chain complexes, chain maps, homology, tensor and Hom;
//! - [`simplicial`]: reduced chain complexes of simplicial complexes;
//! - [`filtered`]: filtered complexes and their constructors;
//! - [`sseq`]: lazily evaluated pages, differentials and limits;
//! - [`graded`]: finite-dimensional graded algebras, Koszul complexes and
//!   minimal free resolutions, expanded into vector-space complexes.

#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
#[macro_use]
pub mod linalg;
pub mod complex;
pub mod filtered;
pub mod graded;
pub mod simplicial;
pub mod sseq;

pub use error::{Error, Result};
pub use field::{ArithOp, FieldElement, FieldSpec, Scalar};
