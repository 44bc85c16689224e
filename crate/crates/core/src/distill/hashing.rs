use crate::error::{arg, Result};
use crate::linalg::{inner, shannon_bits};
use crate::scalar::Real;
use crate::states::{bell_state, BellKind, DensityMatrix};

/// Bell-basis populations `⟨Bₖ|ρ|Bₖ⟩` in [`BellKind::ALL`] order. These are
/// the weights of the Bell-diagonal state obtained by twirling `ρ` with
/// random bilateral Pauli rotations.
pub fn bell_weights<R: Real>(rho: &DensityMatrix<R>) -> Result<[R; 4]> {
    if rho.dims().dims() != [2, 2] {
        return arg(format!("Bell weights need a two-qubit state, got dims {:?}", rho.dims().dims()));
    }
    let mut w = [R::zero(); 4];
    for (slot, kind) in w.iter_mut().zip(BellKind::ALL) {
        let b = bell_state::<R>(kind);
        *slot = inner(b.amplitudes(), &rho.matrix().apply(b.amplitudes())?).re.max(R::zero());
    }
    Ok(w)
}

/// One-way hashing rate `max(0, 1 − S)` of the twirled state, in ebits per copy.
pub fn hashing_rate<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    let w = bell_weights(rho)?;
    Ok((R::one() - shannon_bits(&w)).max(R::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DimSpec;
    use crate::states::werner_state;

    #[test]
    fn examples() {
        let singlet = bell_state::<f64>(BellKind::PsiMinus).density();
        assert!((hashing_rate(&singlet).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(hashing_rate(&werner_state(0.25f64).unwrap()).unwrap(), 0.0);
        assert!((hashing_rate(&werner_state(0.9f64).unwrap()).unwrap() - 0.372508156).abs() < 1e-8);
        assert!(hashing_rate(&DensityMatrix::<f64>::maximally_mixed(DimSpec::single(4))).is_err());
    }

    #[test]
    fn werner_grid() {
        for (f, rate) in [(0.8f64, 0.0), (0.85, 0.1524153), (0.95, 0.6343549)] {
            assert!((hashing_rate(&werner_state(f).unwrap()).unwrap() - rate).abs() < 1e-6);
        }
    }

    #[test]
    fn twirl_of_product_state_is_separable() {
        // |00⟩ twirls to equal Φ± weights: rate 0
        let rho = DensityMatrix::new(
            crate::linalg::ComplexMatrix::diagonal(&[num_complex::Complex::new(1.0f64, 0.0), 0.0.into(), 0.0.into(), 0.0.into()]),
            DimSpec::bipartite(2, 2),
        )
        .unwrap();
        let w = bell_weights(&rho).unwrap();
        assert!((w[2] - 0.5).abs() < 1e-12 && (w[3] - 0.5).abs() < 1e-12);
        assert!(hashing_rate(&rho).unwrap() < 1e-12);
    }
}
