use crate::error::{arg, Result};
use crate::linalg::{hermitian_eigen, pauli, shannon_bits, tensor_product};
use crate::scalar::Real;
use crate::states::DensityMatrix;

/// Two-qubit concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, where `λᵢ` are the
/// descending square roots of the eigenvalues of `ρ·(σ₂⊗σ₂)ρ*(σ₂⊗σ₂)`.
pub fn concurrence_2q<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    if rho.dims().dims() != [2, 2] {
        return arg(format!("concurrence needs a two-qubit state, got dims {:?}", rho.dims().dims()));
    }
    let yy = tensor_product(&pauli::sigma2::<R>(), &pauli::sigma2::<R>())?;
    let m = rho.matrix();
    let flipped = yy.try_mul(&m.conj())?.try_mul(&yy)?;
    // √ρ ρ̃ √ρ is Hermitian and shares its spectrum with ρ ρ̃
    let sqrt_rho = hermitian_eigen(m)?.map_eigenvalues(|x| x.max(R::zero()).sqrt());
    let h = sqrt_rho.try_mul(&flipped)?.try_mul(&sqrt_rho)?.hermitian_part();
    let lam: Vec<R> = hermitian_eigen(&h)?.eigenvalues.iter().map(|&x| x.max(R::zero()).sqrt()).collect();
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(R::zero()).min(R::one()))
}

/// Closed-form two-qubit entanglement of formation in bits: `h((1 + √(1 − C²))/2)`.
pub fn concurrence_oracle_2q<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    let c = concurrence_2q(rho)?;
    let x = (R::one() + (R::one() - c * c).max(R::zero()).sqrt()) * R::lit(0.5);
    Ok(shannon_bits(&[x, R::one() - x]))
}
