use super::basis::MeasurementBasis;
use super::correction::CorrectionTable;
use super::engine::{teleport, TeleportRecord};
use crate::error::{arg, Result};
use crate::scalar::Real;
use crate::states::{generalized_bell, DensityMatrix};

/// Teleports an `N`-level state through `generalized_bell(N, 0, 0)` with the
/// generalized Bell measurement and [`CorrectionTable::qudit`] corrections.
pub fn qudit_teleport<R: Real>(input: &DensityMatrix<R>) -> Result<Vec<TeleportRecord<R>>> {
    let n = input.dim();
    if n < 2 {
        return arg("qudit teleportation needs N ≥ 2");
    }
    let resource = generalized_bell::<R>(n, 0, 0)?.density();
    teleport(input, &resource, &CorrectionTable::qudit(n), &MeasurementBasis::generalized_bell(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::haar_random_ket;
    use crate::teleport::average_fidelity;

    #[test]
    fn qutrit_branches() {
        let psi = haar_random_ket::<f64>(3, 21).density();
        let recs = qudit_teleport(&psi).unwrap();
        assert_eq!(recs.len(), 9);
        for r in &recs {
            assert!((r.outcome_probability - 1.0 / 9.0).abs() < 1e-12);
            assert!(r.fidelity.unwrap() > 1.0 - 1e-9);
            assert_eq!(r.outcome.classical_bits, 4);
        }
        assert!((average_fidelity(&recs) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn n4_uses_four_bits() {
        let psi = haar_random_ket::<f64>(4, 1).density();
        let recs = qudit_teleport(&psi).unwrap();
        assert!(recs.iter().all(|r| r.outcome.classical_bits == 4 && r.fidelity.unwrap() > 1.0 - 1e-9));
    }

    #[test]
    fn n2_reproduces_the_qubit_protocol() {
        let psi = haar_random_ket::<f64>(2, 8).density();
        let recs = qudit_teleport(&psi).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.fidelity.unwrap() > 1.0 - 1e-12));
    }
}
