use num_traits::{One, Zero};

use super::density::DensityMatrix;
use crate::error::{arg, mismatch, Result};
use crate::linalg::{inner, norm_sqr, permute_vector, tensor_vec, ComplexMatrix, DimSpec};
use crate::scalar::{Real, C};

/// Normalized pure state over a composite Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<R: Real> {
    amplitudes: Vec<C<R>>,
    dims: DimSpec,
}

impl<R: Real> StateVector<R> {
    /// Validating constructor: the squared norm must be 1 within `NORM_TOL`.
    pub fn new(amplitudes: Vec<C<R>>, dims: DimSpec) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return mismatch(format!("{} amplitudes for dims {:?}", amplitudes.len(), dims.dims()));
        }
        let n = norm_sqr(&amplitudes);
        if (n - R::one()).abs() > R::lit(R::NORM_TOL) {
            return arg(format!("state is not normalized (squared norm {n})"));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C<R>>, dims: DimSpec) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return mismatch(format!("{} amplitudes for dims {:?}", amplitudes.len(), dims.dims()));
        }
        let n = norm_sqr(&amplitudes).sqrt();
        if !(n > R::zero()) || !n.is_finite() {
            return arg("cannot normalize a zero or non-finite vector");
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / n).collect(), dims })
    }

    pub fn from_real(amplitudes: &[f64], dims: DimSpec) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C::new(R::lit(x), R::zero())).collect(), dims)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dims: DimSpec, index: usize) -> Result<Self> {
        let n = dims.total();
        if index >= n {
            return arg(format!("basis index {index} out of range for dimension {n}"));
        }
        let mut amplitudes = vec![C::zero(); n];
        amplitudes[index] = C::one();
        Ok(Self { amplitudes, dims })
    }

    pub(crate) fn from_parts_unchecked(amplitudes: Vec<C<R>>, dims: DimSpec) -> Self {
        debug_assert_eq!(amplitudes.len(), dims.total());
        Self { amplitudes, dims }
    }

    pub fn amplitudes(&self) -> &[C<R>] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn into_amplitudes(self) -> Vec<C<R>> {
        self.amplitudes
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C<R> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Phase-insensitive overlap `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &Self) -> R {
        self.inner(other).norm_sqr()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            amplitudes: tensor_vec(&self.amplitudes, &other.amplitudes)?,
            dims: self.dims.concat(&other.dims)?,
        })
    }

    /// `U|ψ⟩` for a unitary on the whole space. Norm is re-checked.
    pub fn apply(&self, u: &ComplexMatrix<R>) -> Result<Self> {
        Self::new(u.apply(&self.amplitudes)?, self.dims.clone())
    }

    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let (amplitudes, dims) = permute_vector(&self.amplitudes, &self.dims, perm)?;
        Ok(Self { amplitudes, dims })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn density(&self) -> DensityMatrix<R> {
        DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&self.amplitudes), self.dims.clone())
    }

    /// Global-phase-fixed copy: the first amplitude with modulus above `1e-6`
    /// of the largest modulus is made real and positive.
    pub fn canonical_phase(&self) -> Self {
        let max = self.amplitudes.iter().map(|z| z.norm()).fold(R::zero(), R::max);
        let pivot = self.amplitudes.iter().find(|z| z.norm() > max * R::lit(1e-6));
        match pivot {
            Some(&p) => {
                let phase = p.conj() / p.norm();
                Self {
                    amplitudes: self.amplitudes.iter().map(|&z| z * phase).collect(),
                    dims: self.dims.clone(),
                }
            }
            None => self.clone(),
        }
    }

    /// Embeds the state into a larger space by zero padding (`|j⟩ ↦ |j⟩` for `j < dim`).
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return arg(format!("cannot embed dimension {} into {dim}", self.dim()));
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(dim, C::zero());
        Ok(Self { amplitudes, dims: DimSpec::single(dim) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_and_mismatched() {
        assert!(StateVector::<f64>::from_real(&[1.0, 1.0], DimSpec::single(2)).is_err());
        assert!(StateVector::<f64>::from_real(&[1.0], DimSpec::single(2)).is_err());
        assert!(StateVector::<f64>::normalized(vec![C::zero(); 2], DimSpec::single(2)).is_err());
    }

    #[test]
    fn canonical_phase_removes_global_phase() {
        let i = C::new(0.0, 1.0);
        let a = StateVector::<f64>::from_real(&[0.6, 0.8], DimSpec::single(2)).unwrap();
        let b = StateVector::new(a.amplitudes().iter().map(|&z| z * i).collect(), DimSpec::single(2)).unwrap();
        let (ca, cb) = (a.canonical_phase(), b.canonical_phase());
        for (x, y) in ca.amplitudes().iter().zip(cb.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn permute_swaps_tensor_factors() {
        let zero = StateVector::<f64>::basis(DimSpec::single(2), 0).unwrap();
        let two = StateVector::<f64>::basis(DimSpec::single(3), 2).unwrap();
        let swapped = zero.tensor(&two).unwrap().permute(&[1, 0]).unwrap();
        assert_eq!(swapped, two.tensor(&zero).unwrap());
    }
}
