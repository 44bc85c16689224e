//! Composite-system operations: Kronecker products, partial traces,
//! subsystem permutations, entropies and fidelities.

use num_traits::Zero;

use super::dims::{checked_product, DimSpec};
use super::eigen::hermitian_eigen;
use super::matrix::{inner, ComplexMatrix};
use crate::error::{arg, mismatch, Error, Result};
use crate::scalar::{Real, C};

/// Kronecker product, `a`-major block ordering.
pub fn tensor_product<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    let rows = checked_product(&[a.rows(), b.rows()])?;
    let cols = checked_product(&[a.cols(), b.cols()])?;
    checked_product(&[rows, cols])?;
    let (br, bc) = (b.rows(), b.cols());
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| a.get(i / br, j / bc) * b.get(i % br, j % bc)))
}

/// Kronecker product of two vectors.
pub fn tensor_vec<R: Real>(a: &[C<R>], b: &[C<R>]) -> Result<Vec<C<R>>> {
    checked_product(&[a.len(), b.len()])?;
    Ok(a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect())
}

fn check_square_dims<R: Real>(rho: &ComplexMatrix<R>, dims: &DimSpec) -> Result<()> {
    if !rho.is_square() || rho.rows() != dims.total() {
        return mismatch(format!(
            "{}x{} matrix does not match dims {:?}",
            rho.rows(),
            rho.cols(),
            dims.dims()
        ));
    }
    Ok(())
}

fn normalize_keep(dims: &DimSpec, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return arg("partial trace must keep at least one subsystem");
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return arg(format!("subsystem index {bad} out of range for {} subsystems", dims.len()));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    Ok(keep)
}

/// Traces out every subsystem not listed in `keep`. Kept subsystems appear in ascending order.
pub fn partial_trace<R: Real>(rho: &ComplexMatrix<R>, dims: &DimSpec, keep: &[usize]) -> Result<(ComplexMatrix<R>, DimSpec)> {
    check_square_dims(rho, dims)?;
    let keep = normalize_keep(dims, keep)?;
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let strides = dims.strides();
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims.dims()[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims.dims()[k]).collect();

    // Flat offsets contributed by every kept / traced multi-index.
    let offsets = |subs: &[usize], sub_dims: &[usize]| -> Vec<usize> {
        let total: usize = sub_dims.iter().product();
        (0..total)
            .map(|mut flat| {
                let mut off = 0;
                for (pos, &k) in subs.iter().enumerate().rev() {
                    let d = sub_dims[pos];
                    off += (flat % d) * strides[k];
                    flat /= d;
                }
                off
            })
            .collect()
    };
    let kept_off = offsets(&keep, &kept_dims);
    let traced_off = offsets(&traced, &traced_dims);

    let n = kept_off.len();
    let out = ComplexMatrix::from_fn(n, n, |i, j| {
        traced_off
            .iter()
            .fold(C::zero(), |acc, &t| acc + rho.get(kept_off[i] + t, kept_off[j] + t))
    });
    Ok((out, DimSpec::new(kept_dims)?))
}

/// Reorders subsystems: output subsystem `k` is input subsystem `perm[k]`.
pub fn permute_subsystems<R: Real>(rho: &ComplexMatrix<R>, dims: &DimSpec, perm: &[usize]) -> Result<(ComplexMatrix<R>, DimSpec)> {
    check_square_dims(rho, dims)?;
    let map = permutation_map(dims, perm)?;
    let n = map.len();
    let out = ComplexMatrix::from_fn(n, n, |i, j| rho.get(map[i], map[j]));
    let new_dims = DimSpec::new(perm.iter().map(|&p| dims.dims()[p]).collect())?;
    Ok((out, new_dims))
}

/// Vector version of [`permute_subsystems`].
pub fn permute_vector<R: Real>(v: &[C<R>], dims: &DimSpec, perm: &[usize]) -> Result<(Vec<C<R>>, DimSpec)> {
    if v.len() != dims.total() {
        return mismatch(format!("vector of length {} for dims {:?}", v.len(), dims.dims()));
    }
    let map = permutation_map(dims, perm)?;
    let new_dims = DimSpec::new(perm.iter().map(|&p| dims.dims()[p]).collect())?;
    Ok((map.iter().map(|&src| v[src]).collect(), new_dims))
}

/// `map[new_index] = old_index`
fn permutation_map(dims: &DimSpec, perm: &[usize]) -> Result<Vec<usize>> {
    let k = dims.len();
    let mut seen = vec![false; k];
    if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
        return arg(format!("{perm:?} is not a permutation of {k} subsystems"));
    }
    let old_strides = dims.strides();
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims.dims()[p]).collect();
    let total = dims.total();
    Ok((0..total)
        .map(|mut flat| {
            let mut old = 0;
            for pos in (0..k).rev() {
                let d = new_dims[pos];
                old += (flat % d) * old_strides[perm[pos]];
                flat /= d;
            }
            old
        })
        .collect())
}

/// Checks the density-operator preconditions shared by entropy routines:
/// Hermitian, unit trace and no eigenvalue below `-EIG_CLIP`. Returns the clipped spectrum.
pub fn state_spectrum<R: Real>(rho: &ComplexMatrix<R>) -> Result<Vec<R>> {
    if !rho.is_square() {
        return arg("density matrix must be square");
    }
    let herm_tol = R::lit(R::HERM_TOL) * R::from_usize_lossy(rho.rows()).max(R::one());
    if !rho.is_hermitian(herm_tol) {
        return Err(Error::NotAState("matrix is not Hermitian".into()));
    }
    let tr = rho.trace().re;
    if (tr - R::one()).abs() > R::lit(R::NORM_TOL) {
        return Err(Error::NotAState(format!("trace {tr} differs from 1")));
    }
    let spec = hermitian_eigen(rho)?;
    let clip = R::lit(R::EIG_CLIP);
    spec.eigenvalues
        .into_iter()
        .map(|lam| {
            if lam < -clip {
                Err(Error::NotAState(format!("negative eigenvalue {lam}")))
            } else {
                Ok(lam.max(R::zero()))
            }
        })
        .collect()
}

/// `−Σ p log₂ p` with `0·log₂0 = 0`.
pub fn shannon_bits<R: Real>(probs: &[R]) -> R {
    let h = probs
        .iter()
        .filter(|&&p| p > R::zero())
        .map(|&p| -p * p.log2())
        .sum::<R>();
    h.max(R::zero())
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy<R: Real>(rho: &ComplexMatrix<R>) -> Result<R> {
    Ok(shannon_bits(&state_spectrum(rho)?))
}

/// `⟨ψ|ρ|ψ⟩`, clipped to `[0, 1]`.
pub fn pure_fidelity<R: Real>(psi: &[C<R>], rho: &ComplexMatrix<R>) -> Result<R> {
    if !rho.is_square() || rho.rows() != psi.len() {
        return arg(format!("state of dimension {} against {}x{} matrix", psi.len(), rho.rows(), rho.cols()));
    }
    let f = inner(psi, &rho.apply(psi)?).re;
    Ok(f.max(R::zero()).min(R::one()))
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`, clipped to `[0, 1]`.
pub fn uhlmann_fidelity<R: Real>(rho: &ComplexMatrix<R>, sigma: &ComplexMatrix<R>) -> Result<R> {
    if !rho.is_square() || rho.rows() != sigma.rows() || !sigma.is_square() {
        return arg("fidelity between matrices of different shapes");
    }
    let sqrt_rho = hermitian_eigen(rho)?.map_eigenvalues(|x| x.max(R::zero()).sqrt());
    let inner = sqrt_rho.try_mul(sigma)?.try_mul(&sqrt_rho)?;
    let root_trace: R = hermitian_eigen(&inner)?
        .eigenvalues
        .iter()
        .map(|&x| x.max(R::zero()).sqrt())
        .sum();
    Ok((root_trace * root_trace).max(R::zero()).min(R::one()))
}
