//! The teleportation protocol: joint measurement, classical announcement and
//! correction, for qubits and qudits, plus the wrong-table scenario and the
//! resource-dimension audit.

mod audit;
mod basis;
mod correction;
mod engine;
mod example1;
mod qudit;

pub use audit::{dimension_audit, AuditBudget, AuditConfig, AuditReport};
pub use basis::{classical_bits_for, MeasurementBasis, MeasurementOutcome};
pub use correction::{clock_power, shift_power, CorrectionTable};
pub use engine::{average_fidelity, bell_measure, teleport, teleport_pure, Branch, PureBranch, TeleportRecord};
pub use example1::{example1_scenario, Example1Report};
pub use qudit::qudit_teleport;
