use super::eigen::hermitian_eigen;
use super::matrix::ComplexMatrix;
use super::ortho::{from_columns, orthonormal_completion, orthonormalize_against};
use crate::error::{arg, Result};
use crate::scalar::{Real, C};

/// Unitary factor `W` of the polar decomposition `G = W·P` of a square matrix,
/// i.e. the unitary maximizing `Re Tr(G†W)`. Rank-deficient directions are
/// completed with an arbitrary orthonormal set.
pub fn polar_unitary<R: Real>(g: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    if !g.is_square() {
        return arg("polar factor of a non-square matrix");
    }
    let n = g.rows();
    let spec = hermitian_eigen(&g.adjoint().try_mul(g)?)?;
    let top = spec.eigenvalues.first().copied().unwrap_or(R::zero()).max(R::zero());
    let cutoff = top * R::epsilon().sqrt() * R::lit(1e2);

    let mut left: Vec<Vec<C<R>>> = Vec::with_capacity(n);
    let mut right: Vec<Vec<C<R>>> = Vec::with_capacity(n);
    for (k, &lam) in spec.eigenvalues.iter().enumerate() {
        if lam <= cutoff || !(lam > R::zero()) {
            break;
        }
        let v = spec.eigenvector(k);
        let mut w = g.apply(&v)?;
        if !orthonormalize_against(&mut w, &left) {
            break;
        }
        left.push(w);
        right.push(v);
    }
    let kept = left.len();
    let left = orthonormal_completion(&left, n);
    let right: Vec<Vec<C<R>>> = right.into_iter().chain((kept..n).map(|k| spec.eigenvector(k))).collect();
    from_columns(&left).try_mul(&from_columns(&right).adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_normal, rng_from_seed};

    #[test]
    fn polar_of_full_rank() {
        let mut rng = rng_from_seed(4);
        let g = ComplexMatrix::<f64>::from_fn(4, 4, |_, _| complex_normal(&mut rng));
        let w = polar_unitary(&g).unwrap();
        assert!(w.is_unitary(1e-10));
        // W†G is Hermitian positive semidefinite
        let p = w.adjoint().try_mul(&g).unwrap();
        assert!(p.is_hermitian(1e-10));
        assert!(hermitian_eigen(&p).unwrap().eigenvalues.iter().all(|&x| x > -1e-10));
    }

    #[test]
    fn polar_of_rank_deficient() {
        let g = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 2.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]).unwrap();
        let w = polar_unitary(&g).unwrap();
        assert!(w.is_unitary(1e-12));
        assert!((w.adjoint().try_mul(&g).unwrap().trace().re - 2.0).abs() < 1e-12);
        assert!(polar_unitary(&ComplexMatrix::<f64>::zeros(3, 3)).unwrap().is_unitary(1e-12));
    }
}
