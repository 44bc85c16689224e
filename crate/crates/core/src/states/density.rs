use super::vector::StateVector;
use crate::error::{mismatch, Error, Result};
use crate::linalg::{
    partial_trace, permute_subsystems, pure_fidelity, state_spectrum, tensor_product, uhlmann_fidelity,
    von_neumann_entropy, ComplexMatrix, DimSpec,
};
use crate::scalar::{Real, C};

/// Hermitian, positive semidefinite, unit-trace operator with subsystem dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<R: Real> {
    matrix: ComplexMatrix<R>,
    dims: DimSpec,
}

impl<R: Real> DensityMatrix<R> {
    /// Validating constructor: checks Hermiticity, trace and the spectrum.
    pub fn new(matrix: ComplexMatrix<R>, dims: DimSpec) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != dims.total() {
            return mismatch(format!("{}x{} matrix for dims {:?}", matrix.rows(), matrix.cols(), dims.dims()));
        }
        state_spectrum(&matrix)?;
        Ok(Self { matrix, dims })
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix<R>, dims: DimSpec) -> Self {
        debug_assert_eq!(matrix.rows(), dims.total());
        Self { matrix, dims }
    }

    /// `I/d` on the given dims.
    pub fn maximally_mixed(dims: DimSpec) -> Self {
        let d = dims.total();
        Self { matrix: ComplexMatrix::identity(d).scale_real(R::one() / R::from_usize_lossy(d)), dims }
    }

    /// `Σ pᵢ|ψᵢ⟩⟨ψᵢ|`; weights must be non-negative and sum to one.
    pub fn mixture(members: &[(R, StateVector<R>)]) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::Argument("empty mixture".into()))?;
        let dims = first.1.dims().clone();
        let n = dims.total();
        let mut m = ComplexMatrix::zeros(n, n);
        let mut total = R::zero();
        for (p, psi) in members {
            if psi.dims() != &dims {
                return mismatch("mixture members have different dims");
            }
            if *p < R::zero() {
                return Err(Error::Argument(format!("negative mixture weight {p}")));
            }
            total = total + *p;
            m = &m + &ComplexMatrix::outer(psi.amplitudes()).scale_real(*p);
        }
        if (total - R::one()).abs() > R::lit(R::NORM_TOL) {
            return Err(Error::Argument(format!("mixture weights sum to {total}")));
        }
        Ok(Self { matrix: m, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.matrix
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix<R> {
        self.matrix
    }

    pub fn trace(&self) -> C<R> {
        self.matrix.trace()
    }

    pub fn purity(&self) -> R {
        self.matrix.try_mul(&self.matrix).expect("square").trace().re
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: tensor_product(&self.matrix, &other.matrix)?,
            dims: self.dims.concat(&other.dims)?,
        })
    }

    /// Reduced state on the subsystems in `keep` (ascending order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let (matrix, dims) = partial_trace(&self.matrix, &self.dims, keep)?;
        Ok(Self { matrix, dims })
    }

    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let (matrix, dims) = permute_subsystems(&self.matrix, &self.dims, perm)?;
        Ok(Self { matrix, dims })
    }

    /// `UρU†`
    pub fn conjugate_by(&self, u: &ComplexMatrix<R>) -> Result<Self> {
        if u.rows() != self.dim() {
            return mismatch(format!("{}x{} unitary on dimension {}", u.rows(), u.cols(), self.dim()));
        }
        Ok(Self { matrix: self.matrix.conjugate_by(u)?, dims: self.dims.clone() })
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<R> {
        von_neumann_entropy(&self.matrix)
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn fidelity_with_pure(&self, psi: &StateVector<R>) -> Result<R> {
        pure_fidelity(psi.amplitudes(), &self.matrix)
    }

    /// Uhlmann fidelity.
    pub fn fidelity(&self, other: &Self) -> Result<R> {
        uhlmann_fidelity(&self.matrix, &other.matrix)
    }

    /// Embeds into a single subsystem of dimension `dim` by zero padding.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        let n = self.dim();
        if dim < n {
            return mismatch(format!("cannot embed dimension {n} into {dim}"));
        }
        let m = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if i < n && j < n {
                self.matrix.get(i, j)
            } else {
                C::new(R::zero(), R::zero())
            }
        });
        Ok(Self { matrix: m, dims: DimSpec::single(dim) })
    }
}

/// `⟨ψ|ρ|ψ⟩` for a pure state against a density matrix.
pub fn state_fidelity<R: Real>(psi: &StateVector<R>, rho: &DensityMatrix<R>) -> Result<R> {
    rho.fidelity_with_pure(psi)
}
