//! Entanglement distillation estimators, pure-state concentration and the
//! distill-then-teleport / teleport-then-distill comparison.

mod capacity;
mod concentration;
mod hashing;
mod recurrence;
mod report;

pub use capacity::{theorem3_experiment, CapacityExperiment, Direction, TeleportCapacityReport, FAITHFUL_THRESHOLD};
pub use concentration::concentrate_pure;
pub use hashing::{bell_weights, hashing_rate};
pub use recurrence::{recurrence_distill, recurrence_round, MAX_ROUNDS};
pub use report::{DistillReport, Protocol};
