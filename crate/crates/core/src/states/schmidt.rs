use num_traits::Zero;

use super::vector::StateVector;
use crate::error::Result;
use crate::linalg::{from_columns, hermitian_eigen, orthonormal_completion, orthonormalize_against, shannon_bits, ComplexMatrix};
use crate::scalar::{Real, C};

/// `|ψ⟩ = Σᵢ cᵢ |uᵢ⟩ ⊗ |vᵢ⟩` with descending `cᵢ ≥ 0` and orthonormal `uᵢ`, `vᵢ`.
#[derive(Clone, Debug)]
pub struct SchmidtForm<R: Real> {
    pub coefficients: Vec<R>,
    /// `d_A × r`, one Schmidt vector per column.
    pub left_vectors: ComplexMatrix<R>,
    /// `d_B × r`, one Schmidt vector per column.
    pub right_vectors: ComplexMatrix<R>,
}

impl<R: Real> SchmidtForm<R> {
    pub fn rank(&self, tol: R) -> usize {
        self.coefficients.iter().filter(|&&c| c > tol).count()
    }

    /// Entanglement entropy `−Σ cᵢ² log₂ cᵢ²`.
    pub fn entropy(&self) -> R {
        let p: Vec<R> = self.coefficients.iter().map(|&c| c * c).collect();
        shannon_bits(&p)
    }

    pub fn reconstruct(&self) -> Vec<C<R>> {
        let (da, db) = (self.left_vectors.rows(), self.right_vectors.rows());
        let mut out = vec![C::zero(); da * db];
        for (k, &c) in self.coefficients.iter().enumerate() {
            for a in 0..da {
                let ua = self.left_vectors.get(a, k) * c;
                for b in 0..db {
                    out[a * db + b] = out[a * db + b] + ua * self.right_vectors.get(b, k);
                }
            }
        }
        out
    }
}

/// Schmidt decomposition of a bipartite pure state.
pub fn schmidt_decompose<R: Real>(psi: &StateVector<R>) -> Result<SchmidtForm<R>> {
    let (da, db) = psi.dims().as_bipartite()?;
    // coefficient matrix C[a][b] = ⟨a b|ψ⟩
    let coeff = ComplexMatrix::from_vec(da, db, psi.amplitudes().to_vec())?;
    if da <= db {
        decompose_wide(&coeff)
    } else {
        let t = decompose_wide(&coeff.transpose())?;
        Ok(SchmidtForm { coefficients: t.coefficients, left_vectors: t.right_vectors, right_vectors: t.left_vectors })
    }
}

/// `rows ≤ cols`: eigenvectors of `C C†` give the left vectors, `vᵢ = Cᵀ conj(uᵢ) / cᵢ` the right ones.
fn decompose_wide<R: Real>(coeff: &ComplexMatrix<R>) -> Result<SchmidtForm<R>> {
    let (da, db) = (coeff.rows(), coeff.cols());
    let gram = coeff.try_mul(&coeff.adjoint())?;
    let spec = hermitian_eigen(&gram)?;
    let coefficients: Vec<R> = spec.eigenvalues.iter().map(|&l| l.max(R::zero()).sqrt()).collect();
    let left: Vec<Vec<C<R>>> = (0..da).map(|k| spec.eigenvector(k)).collect();

    let cutoff = R::epsilon().sqrt();
    let mut right: Vec<Vec<C<R>>> = Vec::with_capacity(da);
    for (k, u) in left.iter().enumerate() {
        if coefficients[k] <= cutoff {
            break;
        }
        let mut v: Vec<C<R>> = (0..db)
            .map(|b| (0..da).fold(C::zero(), |acc, a| acc + u[a].conj() * coeff.get(a, b)))
            .collect();
        if !orthonormalize_against(&mut v, &right) {
            break;
        }
        right.push(v);
    }
    // vanishing coefficients: any orthonormal completion will do
    let right = orthonormal_completion(&right, db);
    Ok(SchmidtForm {
        coefficients,
        left_vectors: from_columns(&left),
        right_vectors: from_columns(&right[..da]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DimSpec;
    use crate::rng::child_seed;
    use crate::states::{bell_state, haar_random_ket, partially_entangled, BellKind};

    #[test]
    fn examples() {
        let s = schmidt_decompose(&bell_state::<f64>(BellKind::PhiPlus)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(s.coefficients.iter().all(|&c| (c - h).abs() < 1e-12));

        let prod = StateVector::<f64>::basis(DimSpec::bipartite(2, 2), 1).unwrap();
        let s = schmidt_decompose(&prod).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12 && s.coefficients[1].abs() < 1e-12);

        let s = schmidt_decompose(&partially_entangled(0.25f64).unwrap()).unwrap();
        assert!((s.coefficients[0] - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((s.coefficients[1] - 0.25f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_bipartite() {
        let psi = StateVector::<f64>::basis(DimSpec::new(vec![2, 2, 2]).unwrap(), 0).unwrap();
        assert!(schmidt_decompose(&psi).is_err());
    }

    #[test]
    fn reconstruction_on_random_states() {
        let shapes = [(2, 2), (2, 3), (3, 2), (4, 4), (1, 3), (4, 2)];
        for i in 0..500u64 {
            let (a, b) = shapes[(i as usize) % shapes.len()];
            let raw = haar_random_ket::<f64>(a * b, child_seed(99, i));
            let psi = StateVector::new(raw.into_amplitudes(), DimSpec::bipartite(a, b)).unwrap();
            let s = schmidt_decompose(&psi).unwrap();
            let sum: f64 = s.coefficients.iter().map(|c| c * c).sum();
            assert!((sum - 1.0).abs() < 1e-9);
            let rec = s.reconstruct();
            let err = rec.iter().zip(psi.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            assert!(err < 1e-9, "shape {a}x{b}, err {err}");
            assert!(s.left_vectors.adjoint().try_mul(&s.left_vectors).unwrap().max_abs_diff(&ComplexMatrix::identity(a.min(b))) < 1e-9);
            assert!(s.right_vectors.adjoint().try_mul(&s.right_vectors).unwrap().max_abs_diff(&ComplexMatrix::identity(a.min(b))) < 1e-9);
        }
    }
}
