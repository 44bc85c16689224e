//! Entanglement measures: entropy of a pure bipartite state, ensemble
//! averages and the entanglement of formation of a mixed state.

mod concurrence;
mod ensemble;
mod formation;

pub use concurrence::{concurrence_2q, concurrence_oracle_2q};
pub use ensemble::{ensemble_entanglement, pure_entanglement, Ensemble};
pub use formation::{entanglement_of_formation, EofConfig, EofResult};
