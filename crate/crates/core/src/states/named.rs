use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::density::DensityMatrix;
use super::vector::StateVector;
use crate::error::{arg, Error, Result};
use crate::linalg::{ComplexMatrix, DimSpec};
use crate::scalar::{cis, Real, C};

/// The four two-qubit Bell states, in the outcome order used by the
/// teleportation tables: `Ψ⁻, Ψ⁺, Φ⁻, Φ⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellKind {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus];

    pub fn label(self) -> &'static str {
        match self {
            BellKind::PsiMinus => "psi_minus",
            BellKind::PsiPlus => "psi_plus",
            BellKind::PhiMinus => "phi_minus",
            BellKind::PhiPlus => "phi_plus",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::Argument(format!("unknown Bell state '{s}'")))
    }
}

/// `Ψ± = (|10⟩ ± |01⟩)/√2`, `Φ± = (|11⟩ ± |00⟩)/√2`.
pub fn bell_state<R: Real>(kind: BellKind) -> StateVector<R> {
    let h = R::FRAC_1_SQRT_2();
    let z = R::zero();
    // basis order |00⟩, |01⟩, |10⟩, |11⟩
    let amps = match kind {
        BellKind::PsiMinus => [z, -h, h, z],
        BellKind::PsiPlus => [z, h, h, z],
        BellKind::PhiMinus => [-h, z, z, h],
        BellKind::PhiPlus => [h, z, z, h],
    };
    StateVector::from_parts_unchecked(amps.iter().map(|&x| C::new(x, z)).collect(), DimSpec::bipartite(2, 2))
}

/// `(1/√N) Σⱼ ωʲⁿ |j⟩|(j+m) mod N⟩`, `ω = e^{2πi/N}`.
pub fn generalized_bell<R: Real>(n_dim: usize, shift: usize, phase: usize) -> Result<StateVector<R>> {
    if n_dim == 0 {
        return arg("dimension must be positive");
    }
    if shift >= n_dim || phase >= n_dim {
        return arg(format!("indices (m={shift}, n={phase}) out of range for N={n_dim}"));
    }
    let d = n_dim * n_dim;
    let norm = R::one() / R::from_usize_lossy(n_dim).sqrt();
    let mut amps = vec![C::zero(); d];
    for j in 0..n_dim {
        amps[j * n_dim + (j + shift) % n_dim] = root_of_unity::<R>(n_dim, j * phase) * norm;
    }
    Ok(StateVector::from_parts_unchecked(amps, DimSpec::bipartite(n_dim, n_dim)))
}

/// `ω^k` with `ω = e^{2πi/N}`; the exponent is reduced mod `N` before evaluation.
pub fn root_of_unity<R: Real>(n_dim: usize, k: usize) -> C<R> {
    let k = k % n_dim;
    cis(R::TAU() * R::from_usize_lossy(k) / R::from_usize_lossy(n_dim))
}

/// `F·|Ψ⁻⟩⟨Ψ⁻| + (1−F)/3 · (|Ψ⁺⟩⟨Ψ⁺| + |Φ⁻⟩⟨Φ⁻| + |Φ⁺⟩⟨Φ⁺|)`
pub fn werner_state<R: Real>(fidelity: R) -> Result<DensityMatrix<R>> {
    if !(fidelity >= R::zero() && fidelity <= R::one()) {
        return arg(format!("Werner fidelity {fidelity} outside [0, 1]"));
    }
    bell_diagonal([fidelity, (R::one() - fidelity) / R::lit(3.0), (R::one() - fidelity) / R::lit(3.0), (R::one() - fidelity) / R::lit(3.0)])
}

/// `Σₖ wₖ|Bₖ⟩⟨Bₖ|` over the Bell states in [`BellKind::ALL`] order.
pub fn bell_diagonal<R: Real>(weights: [R; 4]) -> Result<DensityMatrix<R>> {
    if weights.iter().any(|&w| w < R::zero()) {
        return arg(format!("negative Bell weight in {weights:?}"));
    }
    let sum: R = weights.iter().copied().sum();
    if (sum - R::one()).abs() > R::lit(R::NORM_TOL) {
        return arg(format!("Bell weights sum to {sum}"));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for (kind, &w) in BellKind::ALL.iter().zip(&weights) {
        m = &m + &ComplexMatrix::outer(bell_state::<R>(*kind).amplitudes()).scale_real(w);
    }
    Ok(DensityMatrix::from_parts_unchecked(m, DimSpec::bipartite(2, 2)))
}

/// `√p|00⟩ + √(1−p)|11⟩`
pub fn partially_entangled<R: Real>(p: R) -> Result<StateVector<R>> {
    if !(p >= R::zero() && p <= R::one()) {
        return arg(format!("Schmidt weight {p} outside [0, 1]"));
    }
    let z = C::zero();
    let amps = vec![C::new(p.sqrt(), R::zero()), z, z, C::new((R::one() - p).sqrt(), R::zero())];
    Ok(StateVector::from_parts_unchecked(amps, DimSpec::bipartite(2, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    fn close(a: &[C<f64>], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, &y)| (x - C::new(y, 0.0)).norm() < tol)
    }

    #[test]
    fn bell_sign_conventions() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(bell_state::<f64>(BellKind::PsiMinus).amplitudes(), &[0.0, -h, h, 0.0], 1e-15));
        assert!(close(bell_state::<f64>(BellKind::PhiPlus).amplitudes(), &[h, 0.0, 0.0, h], 1e-15));
        assert!(bell_state::<f64>(BellKind::PsiPlus).inner(&bell_state(BellKind::PsiMinus)).norm() < 1e-15);
    }

    #[test]
    fn bell_gram_matrix_is_identity() {
        let states: Vec<_> = BellKind::ALL.iter().map(|&k| bell_state::<f64>(k)).collect();
        let gram = ComplexMatrix::from_fn(4, 4, |i, j| states[i].inner(&states[j]));
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn labels_round_trip() {
        for k in BellKind::ALL {
            assert_eq!(k.label().parse::<BellKind>().unwrap(), k);
        }
        assert!("phi".parse::<BellKind>().is_err());
    }

    #[test]
    fn generalized_bell_examples() {
        let g = generalized_bell::<f64>(2, 0, 0).unwrap();
        assert!(g.overlap(&bell_state(BellKind::PhiPlus)) > 1.0 - 1e-15);
        // (1/√3)(|01⟩ + |12⟩ + |20⟩)
        let s = 1.0 / 3f64.sqrt();
        let mut expected = [0.0; 9];
        expected[1] = s;
        expected[5] = s;
        expected[6] = s;
        assert!(close(generalized_bell::<f64>(3, 1, 0).unwrap().amplitudes(), &expected, 1e-15));
        assert!(generalized_bell::<f64>(3, 3, 0).is_err());
        assert!(generalized_bell::<f64>(3, 0, 5).is_err());
    }

    #[test]
    fn generalized_bell_n3_gram_brute_force() {
        let states: Vec<_> = (0..9).map(|k| generalized_bell::<f64>(3, k / 3, k % 3).unwrap()).collect();
        let gram = ComplexMatrix::from_fn(9, 9, |i, j| states[i].inner(&states[j]));
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(9)) < 1e-12);
    }

    #[test]
    fn werner_examples() {
        let w1 = werner_state(1.0f64).unwrap();
        assert!(w1.matrix().max_abs_diff(bell_state::<f64>(BellKind::PsiMinus).density().matrix()) < 1e-15);
        let wq = werner_state(0.25f64).unwrap();
        assert!(wq.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
        let f = werner_state(0.75f64).unwrap().fidelity_with_pure(&bell_state(BellKind::PsiMinus)).unwrap();
        assert!((f - 0.75).abs() < 1e-15);
        assert!(werner_state(1.01f64).is_err());
        assert!(werner_state(f64::NAN).is_err());
    }

    #[test]
    fn werner_is_a_state_on_a_grid() {
        for k in 0..=20 {
            let w = werner_state(k as f64 / 20.0).unwrap();
            assert!(DensityMatrix::new(w.matrix().clone(), w.dims().clone()).is_ok());
        }
    }

    #[test]
    fn partially_entangled_examples() {
        let half = partially_entangled(0.5f64).unwrap();
        assert!(half.overlap(&bell_state(BellKind::PhiPlus)) > 1.0 - 1e-15);
        let one = partially_entangled(1.0f64).unwrap();
        assert!(close(one.amplitudes(), &[1.0, 0.0, 0.0, 0.0], 1e-300));
        assert!(partially_entangled(-0.1f64).is_err());
    }
}
