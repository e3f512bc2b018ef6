//! Linear algebra over the max-times and max-plus semirings, and the
//! geometry of max cones: Kleene stars and (sub)eigencones, cellular
//! decomposition, nonlinear and cyclic projectors, permanents and
//! pseudoinverses, and the alternating method for two-sided systems.

pub mod cones;
pub mod error;
pub mod io;
pub mod matrix;
pub mod perm;
pub mod projectors;
pub mod scalar;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{Matrix, MinMatrix, Vector};
pub use scalar::{Cmp, MaxPlusF64, MaxPlusRat, MaxTimesRat, Scalar};

/// Floating-point backend (log-domain storage, serves both views).
pub type MatrixF64 = Matrix<MaxPlusF64>;
pub type VectorF64 = Vector<MaxPlusF64>;

/// Exact max-times backend.
pub type MatrixRat = Matrix<MaxTimesRat>;
pub type VectorRat = Vector<MaxTimesRat>;

/// Exact max-plus backend.
pub type MatrixMp = Matrix<MaxPlusRat>;
pub type VectorMp = Vector<MaxPlusRat>;
