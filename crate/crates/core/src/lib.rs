//! Entanglement measures for two-qubit states and the geometry of the
//! Bell-diagonal (standard-form) states.
//!
//! For a standard-form state `ρ = (1 + Σ r_i σ_i⊗σ_i)/4`, concurrence,
//! negativity and Hilbert-Schmidt distance are all fixed multiples of the
//! Euclidean distance from `(r_x, r_y, r_z)` to the separable octahedron.
//! This crate computes each quantity along independent routes so those
//! relations can be checked numerically.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod measures;
pub mod qmat;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{classify, Classification, Region, Vertex};
pub use measures::{measure, MeasureReport};
pub use qmat::{ComplexMatrix, HermitianEig, C64};
pub use states::{DensityMatrix, LocalFilter, PauliTensor, StandardState};
