//! Protocol run with the wrong correction table: a shared `Φ⁺` corrected with
//! the `Ψ⁻` table.

use super::basis::MeasurementBasis;
use super::correction::CorrectionTable;
use super::engine::{teleport, teleport_pure, TeleportRecord};
use crate::error::{arg, Error, Result};
use crate::linalg::DimSpec;
use crate::scalar::{Real, C};
use crate::states::{bell_state, BellKind, StateVector};

#[derive(Clone, Debug)]
pub struct Example1Report<R: Real> {
    /// The `Ψ⁻`-outcome branch from the density-matrix engine.
    pub record: TeleportRecord<R>,
    /// Bob's corrected ket on that branch (exact, not only up to phase).
    pub output_state: StateVector<R>,
    /// `−β|0⟩ + α|1⟩`
    pub expected_state: StateVector<R>,
    /// `⟨ψ|ψ'⟩ = β·conj(α) − α·conj(β)`
    pub overlap: C<R>,
    /// `|⟨ψ|ψ'⟩|²`; zero exactly when `conj(α)β` is real.
    pub fidelity: R,
    /// Both amplitudes real, the case where the output is orthogonal to the input.
    pub real_amplitudes: bool,
}

pub fn example1_scenario<R: Real>(alpha: C<R>, beta: C<R>) -> Result<Example1Report<R>> {
    let input = StateVector::new(vec![alpha, beta], DimSpec::single(2))
        .map_err(|e| Error::Argument(format!("input (alpha, beta) must be normalized: {e}")))?;
    let resource = bell_state::<R>(BellKind::PhiPlus);
    let table = CorrectionTable::singlet();
    let basis = MeasurementBasis::bell();
    let branch = BellKind::PsiMinus.index();

    let record = teleport(&input.density(), &resource.density(), &table, &basis)?.swap_remove(branch);
    let pure = teleport_pure(&input, &resource, &table, &basis)?.swap_remove(branch);
    let Some(output_state) = pure.output else {
        return arg("psi_minus branch has zero probability");
    };
    let expected_state = StateVector::new(vec![-beta, alpha], DimSpec::single(2))?;
    let overlap = input.inner(&output_state);
    let tiny = R::epsilon();
    Ok(Example1Report {
        record,
        fidelity: overlap.norm_sqr(),
        overlap,
        output_state,
        expected_state,
        real_amplitudes: alpha.im.abs() <= tiny && beta.im.abs() <= tiny,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cr(x: f64) -> C<f64> {
        C::new(x, 0.0)
    }

    #[test]
    fn real_amplitudes_give_orthogonal_output() {
        let r = example1_scenario(cr(0.6), cr(0.8)).unwrap();
        let out = r.output_state.amplitudes();
        assert!((out[0] - cr(-0.8)).norm() < 1e-12);
        assert!((out[1] - cr(0.6)).norm() < 1e-12);
        assert!(r.fidelity < 1e-12);
        assert!(r.record.fidelity.unwrap() < 1e-12);
        assert!((r.record.outcome_probability - 0.25).abs() < 1e-12);
        assert!(r.real_amplitudes);
    }

    #[test]
    fn basis_input() {
        let r = example1_scenario(cr(1.0), cr(0.0)).unwrap();
        assert!(r.output_state.overlap(&StateVector::basis(DimSpec::single(2), 1).unwrap()) > 1.0 - 1e-12);
        assert!(r.fidelity < 1e-12);
    }

    #[test]
    fn complex_amplitudes_are_not_orthogonal() {
        let alpha = C::new(0.5, 0.5);
        let beta = cr(std::f64::consts::FRAC_1_SQRT_2);
        let r = example1_scenario(alpha, beta).unwrap();
        // |−conj(α)β + conj(β)α|² by direct expansion
        let expected = (-alpha.conj() * beta + beta.conj() * alpha).norm_sqr();
        assert!((r.fidelity - expected).abs() < 1e-12);
        assert!((expected - 0.5).abs() < 1e-12);
        assert!((r.record.fidelity.unwrap() - expected).abs() < 1e-12);
        assert!(!r.real_amplitudes);
    }

    #[test]
    fn unnormalized_input_rejected() {
        assert!(matches!(example1_scenario(cr(1.0), cr(1.0)), Err(Error::Argument(_))));
    }
}
