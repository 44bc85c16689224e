use num_traits::{One, Zero};

use super::matrix::{inner, norm_sqr, ComplexMatrix};
use crate::scalar::{Real, C};

/// Modified Gram-Schmidt: orthonormalizes `v` against `basis` in place.
/// Returns `false` when `v` has (numerically) no component outside `basis`.
pub(crate) fn orthonormalize_against<R: Real>(v: &mut [C<R>], basis: &[Vec<C<R>>]) -> bool {
    let before = norm_sqr(v).sqrt();
    // two passes keep orthogonality at rounding level
    for _ in 0..2 {
        for b in basis {
            let proj = inner(b, v);
            for (x, &y) in v.iter_mut().zip(b) {
                *x = *x - proj * y;
            }
        }
    }
    let n = norm_sqr(v).sqrt();
    if n <= before * R::lit(1e-8) || n.is_zero() {
        return false;
    }
    for x in v.iter_mut() {
        *x = *x / n;
    }
    true
}

/// Extends an orthonormal family to an orthonormal basis of `C^dim` using
/// computational basis vectors in ascending order.
pub fn orthonormal_completion<R: Real>(family: &[Vec<C<R>>], dim: usize) -> Vec<Vec<C<R>>> {
    let mut basis: Vec<Vec<C<R>>> = family.to_vec();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = vec![C::zero(); dim];
        e[k] = C::one();
        if orthonormalize_against(&mut e, &basis) {
            basis.push(e);
        }
    }
    basis
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<R: Real>(cols: &[Vec<C<R>>]) -> ComplexMatrix<R> {
    let rows = cols.first().map_or(0, Vec::len);
    ComplexMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}
