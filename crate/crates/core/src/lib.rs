//! Simulation of quantum teleportation and of entanglement as a resource.
//!
//! Numerical routines are generic over the scalar type through [`scalar::Real`]
//! (`f64` or `f32`). The aliases below fix the scalar to `f64`, which is what
//! the command-line runner and the stated tolerances assume.

// `!(x > 0)` guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distill;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod states;
pub mod teleport;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = scalar::C<f64>;
pub type Matrix = linalg::ComplexMatrix<f64>;
pub type Ket = states::StateVector<f64>;
pub type Density = states::DensityMatrix<f64>;
pub type Basis = teleport::MeasurementBasis<f64>;
pub type Corrections = teleport::CorrectionTable<f64>;
pub type Record = teleport::TeleportRecord<f64>;

pub type Complex32 = scalar::C<f32>;
pub type Ket32 = states::StateVector<f32>;
pub type Density32 = states::DensityMatrix<f32>;
