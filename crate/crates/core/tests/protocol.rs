//! End-to-end behaviour across modules.

use qtele_core::distill::{hashing_rate, recurrence_distill};
use qtele_core::entanglement::{concurrence_oracle_2q, entanglement_of_formation, EofConfig};
use qtele_core::linalg::DimSpec;
use qtele_core::states::{bell_state, haar_random_ket, werner_state, BellKind, DensityMatrix};
use qtele_core::teleport::{average_fidelity, teleport, teleport_pure, CorrectionTable, MeasurementBasis};
use qtele_core::{Basis, Corrections};

#[test]
fn noisy_channel_fidelity_is_two_f_plus_one_over_three() {
    let (table, basis) = (Corrections::singlet(), Basis::bell());
    for f in [0.25, 0.6, 0.9] {
        let channel = werner_state(f).unwrap();
        for s in 0..10 {
            let psi = haar_random_ket::<f64>(2, s).density();
            let avg = average_fidelity(&teleport(&psi, &channel, &table, &basis).unwrap());
            assert!((avg - (2.0 * f + 1.0) / 3.0).abs() < 1e-12);
        }
    }
}

#[test]
fn every_resource_has_a_matching_table() {
    // a Bell resource other than the singlet is fixed by composing with a local Pauli
    let basis = MeasurementBasis::<f64>::bell();
    let singlet = CorrectionTable::<f64>::singlet();
    for kind in BellKind::ALL {
        let resource = bell_state::<f64>(kind);
        let probe = haar_random_ket::<f64>(2, 3);
        let branches = teleport_pure(&probe, &resource, &singlet, &basis).unwrap();
        let fids: Vec<f64> = branches.iter().map(|b| b.fidelity.unwrap()).collect();
        if kind == BellKind::PsiMinus {
            assert!(fids.iter().all(|&f| f > 1.0 - 1e-12));
        } else {
            // wrong table: every branch lands on the same fixed Pauli error
            let first = fids[0];
            assert!(fids.iter().all(|&f| (f - first).abs() < 1e-12));
        }
    }
}

#[test]
fn entanglement_measures_are_ordered_on_werner_states() {
    let config = EofConfig { restarts: 4, ..EofConfig::default() };
    for i in 0..8 {
        let f = 0.6 + 0.05 * i as f64;
        let w = werner_state(f).unwrap();
        let eof = entanglement_of_formation(&w, &config).unwrap().value;
        let oracle = concurrence_oracle_2q(&w).unwrap();
        assert!((eof - oracle).abs() < 1e-3, "F={f}");
        assert!(hashing_rate(&w).unwrap() <= eof + 1e-3);
    }
}

#[test]
fn recurrence_reaches_near_perfect_pairs() {
    for (f, rounds, y) in [(0.75, 34, 1.3116e-11), (0.7, 35, 3.874e-12), (0.85, 31, 2.2217e-10)] {
        let r = recurrence_distill(f, 1.0 - 1e-6, 1 << 62).unwrap();
        assert_eq!(r.rounds, rounds, "F={f}");
        assert!((r.ebit_yield / y - 1.0).abs() < 1e-3, "F={f}: {}", r.ebit_yield);
        assert!(r.output_fidelity >= 1.0 - 1e-6 && r.converged);
    }
}

#[test]
fn separable_states_have_no_formation_cost() {
    let rho = DensityMatrix::<f64>::maximally_mixed(DimSpec::bipartite(2, 2));
    let r = entanglement_of_formation(&rho, &EofConfig { restarts: 4, ..EofConfig::default() }).unwrap();
    assert!(r.value < 1e-6, "{}", r.value);
}
