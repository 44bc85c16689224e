use crate::error::{arg, Result};
use crate::linalg::{pauli, ComplexMatrix};
use crate::scalar::{Real, C};
use crate::states::root_of_unity;

/// Bob's outcome-indexed correction unitaries.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionTable<R: Real> {
    entries: Vec<ComplexMatrix<R>>,
}

impl<R: Real> CorrectionTable<R> {
    /// Every entry must be unitary and all entries must share one dimension.
    pub fn new(entries: Vec<ComplexMatrix<R>>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return arg("correction table is empty");
        };
        let d = first.rows();
        let tol = R::lit(R::HERM_TOL);
        for (k, u) in entries.iter().enumerate() {
            if u.rows() != d || !u.is_unitary(tol) {
                return arg(format!("correction {k} is not a {d}x{d} unitary"));
            }
        }
        Ok(Self { entries })
    }

    /// Qubit table for a shared `Ψ⁻`: `Ψ⁻ → −I`, `Ψ⁺ → −σ₃`, `Φ⁻ → σ₁`, `Φ⁺ → iσ₂`.
    pub fn singlet() -> Self {
        let i = C::new(R::zero(), R::one());
        let minus = C::new(-R::one(), R::zero());
        Self {
            entries: vec![
                pauli::identity::<R>().scale(minus),
                pauli::sigma3::<R>().scale(minus),
                pauli::sigma1::<R>(),
                pauli::sigma2::<R>().scale(i),
            ],
        }
    }

    /// `k` copies of the identity on dimension `d` (no correction).
    pub fn identity(d: usize, k: usize) -> Self {
        Self { entries: vec![ComplexMatrix::identity(d); k] }
    }

    /// Corrections for `generalized_bell(N, 0, 0)` measured in the generalized
    /// Bell basis: outcome `(m, n)` at index `m·N + n` maps to `Zⁿ·X⁻ᵐ`.
    pub fn qudit(n_dim: usize) -> Self {
        let mut entries = Vec::with_capacity(n_dim * n_dim);
        for m in 0..n_dim {
            let x_inv = shift_power::<R>(n_dim, n_dim - m % n_dim);
            for n in 0..n_dim {
                entries.push(clock_power::<R>(n_dim, n).try_mul(&x_inv).expect("square"));
            }
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries[0].rows()
    }

    pub fn entry(&self, k: usize) -> &ComplexMatrix<R> {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[ComplexMatrix<R>] {
        &self.entries
    }
}

/// `Xᵏ` with `X|j⟩ = |(j+1) mod N⟩`.
pub fn shift_power<R: Real>(n_dim: usize, k: usize) -> ComplexMatrix<R> {
    let mut m = ComplexMatrix::zeros(n_dim, n_dim);
    for j in 0..n_dim {
        m.set((j + k) % n_dim, j, C::new(R::one(), R::zero()));
    }
    m
}

/// `Zᵏ` with `Z|j⟩ = ωʲ|j⟩`.
pub fn clock_power<R: Real>(n_dim: usize, k: usize) -> ComplexMatrix<R> {
    let diag: Vec<C<R>> = (0..n_dim).map(|j| root_of_unity(n_dim, j * k)).collect();
    ComplexMatrix::diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singlet_entries() {
        let t = CorrectionTable::<f64>::singlet();
        let minus_i = ComplexMatrix::<f64>::identity(2).scale_real(-1.0);
        assert_eq!(t.entry(0), &minus_i);
        let i_sigma2 = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
        assert!(t.entry(3).max_abs_diff(&i_sigma2) < 1e-15);
        for u in t.entries() {
            assert!(u.adjoint().try_mul(u).unwrap().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        }
    }

    #[test]
    fn clock_and_shift() {
        let x = shift_power::<f64>(3, 1);
        let z = clock_power::<f64>(3, 1);
        // Z X = ω X Z
        let zx = z.try_mul(&x).unwrap();
        let xz = x.try_mul(&z).unwrap().scale(root_of_unity(3, 1));
        assert!(zx.max_abs_diff(&xz) < 1e-14);
        assert!(shift_power::<f64>(3, 3).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert!(CorrectionTable::new(CorrectionTable::<f64>::qudit(4).entries().to_vec()).is_ok());
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = ComplexMatrix::<f64>::identity(2).scale_real(2.0);
        assert!(CorrectionTable::new(vec![bad]).is_err());
        assert!(CorrectionTable::new(vec![ComplexMatrix::<f64>::identity(2), ComplexMatrix::identity(3)]).is_err());
    }
}
