//! The generic core instantiated at `f32`.

use qtele_core::entanglement::{concurrence_oracle_2q, pure_entanglement};
use qtele_core::states::{bell_state, generalized_bell, haar_random_ket, werner_state, BellKind};
use qtele_core::teleport::{average_fidelity, example1_scenario, qudit_teleport, teleport, CorrectionTable, MeasurementBasis};
use qtele_core::{Complex32, Ket32};

#[test]
fn qubit_teleportation_in_f32() {
    let resource = bell_state::<f32>(BellKind::PsiMinus).density();
    let (table, basis) = (CorrectionTable::<f32>::singlet(), MeasurementBasis::<f32>::bell());
    for s in 0..50 {
        let psi: Ket32 = haar_random_ket(2, s);
        let recs = teleport(&psi.density(), &resource, &table, &basis).unwrap();
        for r in &recs {
            assert!((r.outcome_probability - 0.25).abs() < 1e-5);
            assert!(r.fidelity.unwrap() > 1.0 - 1e-5);
        }
        assert!((average_fidelity(&recs) - 1.0).abs() < 1e-5);
    }
}

#[test]
fn qutrit_and_entropy_in_f32() {
    let psi = haar_random_ket::<f32>(3, 4).density();
    let recs = qudit_teleport(&psi).unwrap();
    assert_eq!(recs.len(), 9);
    assert!(recs.iter().all(|r| r.fidelity.unwrap() > 1.0 - 1e-4));
    let e = pure_entanglement(&generalized_bell::<f32>(4, 0, 0).unwrap()).unwrap();
    assert!((e - 2.0).abs() < 1e-5);
    let eof = concurrence_oracle_2q(&werner_state(0.85f32).unwrap()).unwrap();
    assert!((eof - 0.5918574).abs() < 1e-3);
}

#[test]
fn example1_in_f32() {
    let r = example1_scenario(Complex32::new(0.6, 0.0), Complex32::new(0.8, 0.0)).unwrap();
    let out = r.output_state.amplitudes();
    assert!((out[0].re + 0.8).abs() < 1e-6 && (out[1].re - 0.6).abs() < 1e-6);
    assert!(r.fidelity < 1e-6);
}
