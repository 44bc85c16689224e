//! Dense complex linear algebra for small composite quantum systems.

mod dims;
mod eigen;
mod matrix;
mod ops;
mod ortho;
mod polar;

pub use dims::DimSpec;
pub use eigen::{hermitian_eigen, Spectrum};
pub use matrix::{inner, norm_sqr, pauli, ComplexMatrix};
pub use polar::polar_unitary;
pub use ortho::{from_columns, orthonormal_completion};
pub(crate) use ortho::orthonormalize_against;
pub use ops::{
    partial_trace, permute_subsystems, permute_vector, pure_fidelity, shannon_bits, state_spectrum, tensor_product,
    tensor_vec, uhlmann_fidelity, von_neumann_entropy,
};
