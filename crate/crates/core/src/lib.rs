//! Exact computations with mixed Hodge structures, nilpotent orbits and
//! their degenerations, over the Gaussian rationals ℚ(i).

pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod ih;
pub mod linalg;
pub mod mhs;
pub mod orbits;
pub mod sl2;
pub mod zerolocus;

pub use error::{HodgeError, Result};
pub use linalg::{Matrix, Scalar, Subspace, Vector};
