use num_traits::Zero;

use crate::error::{arg, mismatch, Result};
use crate::linalg::{hermitian_eigen, shannon_bits, ComplexMatrix, DimSpec};
use crate::scalar::{Real, C};
use crate::states::{DensityMatrix, StateVector};

/// Weighted collection of pure states `{pᵢ, |ψᵢ⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble<R: Real> {
    members: Vec<(R, StateVector<R>)>,
    dims: DimSpec,
}

impl<R: Real> Ensemble<R> {
    /// Probabilities must lie in `(0, 1]` and sum to one; all members share one `DimSpec`.
    pub fn new(members: Vec<(R, StateVector<R>)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return arg("ensemble is empty");
        };
        let dims = first.dims().clone();
        let mut total = R::zero();
        for (p, psi) in &members {
            if !(*p > R::zero() && *p <= R::one()) {
                return arg(format!("ensemble probability {p} outside (0, 1]"));
            }
            if psi.dims() != &dims {
                return mismatch("ensemble members have different dims");
            }
            total = total + *p;
        }
        if (total - R::one()).abs() > R::lit(R::NORM_TOL) {
            return arg(format!("ensemble probabilities sum to {total}"));
        }
        Ok(Self { members, dims })
    }

    pub fn members(&self) -> &[(R, StateVector<R>)] {
        &self.members
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The mixed state `Σ pᵢ|ψᵢ⟩⟨ψᵢ|` the ensemble realizes.
    pub fn mixture(&self) -> Result<DensityMatrix<R>> {
        DensityMatrix::mixture(&self.members)
    }
}

/// Entropy of either reduced state of a bipartite pure state, in bits.
pub fn pure_entanglement<R: Real>(psi: &StateVector<R>) -> Result<R> {
    let (da, db) = psi.dims().as_bipartite()?;
    Ok(weighted_entropy(psi.amplitudes(), da, db).1)
}

/// `Σ pᵢ E(ψᵢ)`
pub fn ensemble_entanglement<R: Real>(e: &Ensemble<R>) -> Result<R> {
    let mut total = R::zero();
    for (p, psi) in &e.members {
        total = total + *p * pure_entanglement(psi)?;
    }
    Ok(total)
}

/// For an unnormalized bipartite vector `w`: `(‖w‖², E(w/‖w‖))`.
pub(crate) fn weighted_entropy<R: Real>(w: &[C<R>], da: usize, db: usize) -> (R, R) {
    // Gram matrix of the coefficient matrix on the smaller side
    let (small, large, transposed) = if da <= db { (da, db, false) } else { (db, da, true) };
    let at = |s: usize, l: usize| if transposed { w[l * db + s] } else { w[s * db + l] };
    let mut gram = ComplexMatrix::<R>::zeros(small, small);
    for i in 0..small {
        for j in i..small {
            let mut acc = C::<R>::zero();
            for l in 0..large {
                acc = acc + at(i, l) * at(j, l).conj();
            }
            gram.set(i, j, acc);
            gram.set(j, i, acc.conj());
        }
    }
    let weight = gram.trace().re;
    if !(weight > R::min_positive_value()) {
        return (R::zero(), R::zero());
    }
    let eigenvalues = if small == 2 {
        let (a, d, b) = (gram.get(0, 0).re, gram.get(1, 1).re, gram.get(0, 1));
        let disc = ((a - d) * (a - d) + R::lit(4.0) * b.norm_sqr()).sqrt();
        let half = R::lit(0.5);
        vec![(a + d + disc) * half, (a + d - disc) * half]
    } else if small == 1 {
        vec![weight]
    } else {
        hermitian_eigen(&gram).map(|s| s.eigenvalues).unwrap_or_else(|_| vec![weight])
    };
    let clip = R::lit(R::EIG_CLIP);
    let probs: Vec<R> = eigenvalues
        .into_iter()
        .map(|lam| {
            let p = lam / weight;
            if p < clip { R::zero() } else { p }
        })
        .collect();
    (weight, shannon_bits(&probs))
}
