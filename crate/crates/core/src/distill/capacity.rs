use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::hashing::hashing_rate;
use super::recurrence::recurrence_distill;
use super::report::{DistillReport, Protocol};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DimSpec};
use crate::states::{bell_state, haar_random_ket, werner_state, BellKind, DensityMatrix};
use crate::teleport::{average_fidelity, bell_measure, teleport, CorrectionTable, MeasurementBasis};

/// Minimum per-qubit fidelity for a teleported qubit to count as faithful.
pub const FAITHFUL_THRESHOLD: f64 = 1.0 - 1e-5;

/// Fidelity the distillation stage aims for before teleporting.
const DISTILL_TARGET: f64 = 1.0 - 1e-6;

/// Expected-value copy budget; large enough that the yield, not the budget, decides.
const COPIES: u64 = 1 << 62;

/// Haar inputs used to measure the forward teleportation fidelity.
const PROBE_INPUTS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    OneWay,
    TwoWay,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::OneWay => "one_way",
            Direction::TwoWay => "two_way",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_way" => Ok(Direction::OneWay),
            "two_way" => Ok(Direction::TwoWay),
            _ => Err(Error::Argument(format!("unknown direction '{s}' (expected one_way or two_way)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TeleportCapacityReport {
    pub direction: Direction,
    pub qubits_per_copy: f64,
    pub achieved_fidelity: f64,
}

/// Both legs of the comparison between distillable entanglement and
/// teleportation capacity for one Werner fidelity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapacityExperiment {
    pub werner_fidelity: f64,
    pub direction: Direction,
    /// Distillation of the Werner pairs (`D`).
    pub d_estimate: DistillReport,
    /// Haar qubits teleported over the distilled pairs (`T ≥ D`).
    pub t_estimate: TeleportCapacityReport,
    /// Halves of locally prepared singlets teleported back over the same
    /// channel, re-establishing shared pairs (`D ≥ T`).
    pub d_from_t: DistillReport,
    pub note: String,
}

/// Distill-then-teleport and teleport-then-distill on `werner_state(F)`.
///
/// Forward: distill to fidelity `1 − 1e−6` (hashing for one-way, recurrence
/// for two-way), then teleport Haar qubits over the distilled pairs with the
/// exact engine; every distilled pair carries one qubit if the achieved
/// fidelity clears [`FAITHFUL_THRESHOLD`]. Reverse: Alice teleports one half of
/// a local singlet over the same channel and the shared pair's singlet
/// fidelity is checked against the same threshold.
pub fn theorem3_experiment(fidelity: f64, direction: Direction) -> Result<CapacityExperiment> {
    if !(fidelity > 0.5 && fidelity <= 1.0) {
        return Err(Error::NotDistillable(fidelity));
    }
    let input = werner_state(fidelity)?;
    let d_estimate = match direction {
        Direction::OneWay => {
            let rate = hashing_rate(&input)?;
            // hashing is an asymptotic statement: the output fidelity is the
            // target the block code is sized for
            let out_f = if fidelity == 1.0 { 1.0 } else { DISTILL_TARGET };
            DistillReport {
                protocol: Protocol::HashingOneWay,
                input_copies: COPIES,
                output_pairs: rate * COPIES as f64,
                output_fidelity: out_f,
                ebit_yield: rate,
                rounds: 1,
                converged: true,
            }
        }
        Direction::TwoWay => recurrence_distill(fidelity, DISTILL_TARGET, COPIES)?,
    };
    let channel = werner_state(d_estimate.output_fidelity.min(1.0))?;
    let basis = MeasurementBasis::bell();
    let table = CorrectionTable::singlet();

    let mut forward = 0.0;
    for s in 0..PROBE_INPUTS {
        let psi = haar_random_ket::<f64>(2, s).density();
        forward += average_fidelity(&teleport(&psi, &channel, &table, &basis)?);
    }
    let forward = forward / PROBE_INPUTS as f64;
    let t = if forward >= FAITHFUL_THRESHOLD { d_estimate.ebit_yield } else { 0.0 };
    let t_estimate = TeleportCapacityReport { direction, qubits_per_copy: t, achieved_fidelity: forward };

    let pair = teleport_half_of_singlet(&channel, &table, &basis)?;
    let pair_f = pair.fidelity_with_pure(&bell_state(BellKind::PsiMinus))?;
    let d_back = if pair_f >= FAITHFUL_THRESHOLD { t } else { 0.0 };
    let d_from_t = DistillReport {
        protocol: d_estimate.protocol,
        input_copies: COPIES,
        output_pairs: d_back * COPIES as f64,
        output_fidelity: pair_f,
        ebit_yield: d_back,
        rounds: 0,
        converged: pair_f >= FAITHFUL_THRESHOLD,
    };

    let relation = match direction {
        Direction::OneWay => "T(A->B) = D(A->B)",
        Direction::TwoWay => "T(A<->B) = D(A<->B)",
    };
    Ok(CapacityExperiment {
        werner_fidelity: fidelity,
        direction,
        d_estimate,
        t_estimate,
        d_from_t,
        note: format!("checks {relation} at faithfulness threshold {FAITHFUL_THRESHOLD}"),
    })
}

/// Alice holds `(ref, d)` in a singlet and teleports `d` to Bob over `channel`.
/// Returns the averaged `(ref, Bob)` state.
fn teleport_half_of_singlet(
    channel: &DensityMatrix<f64>,
    table: &CorrectionTable<f64>,
    basis: &MeasurementBasis<f64>,
) -> Result<DensityMatrix<f64>> {
    let local = bell_state::<f64>(BellKind::PsiMinus).density();
    // (ref, d, A, B) -> (d, A, ref, B) so the measured pair comes first
    let joint = local.tensor(channel)?.permute(&[1, 2, 0, 3])?;
    let mut acc = ComplexMatrix::zeros(4, 4);
    for branch in bell_measure(&joint, basis)? {
        let Some(state) = branch.state else { continue };
        let u = crate::linalg::tensor_product(&ComplexMatrix::identity(2), table.entry(branch.outcome.index))?;
        acc = &acc + &state.matrix().conjugate_by(&u)?.scale_real(branch.probability);
    }
    DensityMatrix::new(acc.hermitian_part(), DimSpec::bipartite(2, 2)).map_err(|e| match e {
        Error::NotAState(m) => Error::NotAState(format!("reverse leg produced an invalid state: {m}")),
        other => other,
    })
}
