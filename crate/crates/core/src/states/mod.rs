//! Pure and mixed states, the named states used by the protocols, Haar
//! sampling and the Schmidt decomposition.

mod density;
mod named;
mod random;
mod schmidt;
mod serial;
mod vector;

pub use density::{state_fidelity, DensityMatrix};
pub use named::{bell_diagonal, bell_state, generalized_bell, partially_entangled, root_of_unity, werner_state, BellKind};
pub use random::{haar_random_ket, haar_random_ket_with, haar_random_unitary};
pub use schmidt::{schmidt_decompose, SchmidtForm};
pub use serial::{MatrixJson, VectorJson};
pub use vector::StateVector;
