//! Exact linear algebra over the Gaussian rationals.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use lattice::{smith_normal_form, IntegerLattice};
pub use matrix::{nilpotent_exp, nilpotent_log, Matrix, Vector};
pub use poly::{MatPoly, Poly};
pub use scalar::Scalar;
pub use subspace::{image, kernel, Subspace};
