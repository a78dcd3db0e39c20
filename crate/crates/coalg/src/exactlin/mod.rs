//! Exact linear algebra over Q and prime fields.
//!
//! Everything downstream (radicals, socles, Hom spaces, integrals) reduces
//! to reduced row echelon forms and kernels computed here. All arithmetic
//! is exact; pivoting is deterministic (first nonzero by column order) so
//! outputs are reproducible.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{kernel_basis, rref, solve_linear, Echelon, Matrix, SparseRow};
pub use scalar::{Field, Scalar};
pub use subspace::{subspace_ops, SubspaceBasis};
