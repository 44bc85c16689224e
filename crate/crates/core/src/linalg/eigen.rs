//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{arg, Result};
use crate::scalar::{Real, C};

/// Eigenvalues (descending) and matching eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct Spectrum<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: ComplexMatrix<R>,
}

impl<R: Real> Spectrum<R> {
    pub fn eigenvector(&self, k: usize) -> Vec<C<R>> {
        self.eigenvectors.column(k)
    }

    /// `Σ f(λ_k)|v_k⟩⟨v_k|`
    pub fn map_eigenvalues(&self, f: impl Fn(R) -> R) -> ComplexMatrix<R> {
        let n = self.eigenvectors.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            if w.is_zero() {
                continue;
            }
            let v = self.eigenvector(k);
            for i in 0..n {
                let vi = v[i] * w;
                for (j, vj) in v.iter().enumerate().take(n) {
                    *out.at_mut(i, j) = out.get(i, j) + vi * vj.conj();
                }
            }
        }
        out
    }
}

const MAX_SWEEPS: usize = 100;

/// Diagonalizes a Hermitian matrix. Only the upper triangle's Hermitian part is trusted:
/// the input is symmetrized as `(A + A†)/2` first.
pub fn hermitian_eigen<R: Real>(a: &ComplexMatrix<R>) -> Result<Spectrum<R>> {
    if !a.is_square() {
        return arg(format!("eigendecomposition of non-square {}x{} matrix", a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::<R>::identity(n);

    let scale = m.frobenius_norm();
    let threshold = scale * R::epsilon() * R::from_usize_lossy(n.max(1));

    for _ in 0..MAX_SWEEPS {
        let off: R = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m.get(p, q).norm_sqr())
            .sum::<R>()
            .sqrt();
        if off <= threshold || scale.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<R> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v.get(i, order[k]));
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Annihilates `m[p][q]` with `m ← J†·m·J`, `v ← v·J`.
fn rotate<R: Real>(m: &mut ComplexMatrix<R>, v: &mut ComplexMatrix<R>, p: usize, q: usize) {
    let g = m.get(p, q);
    let r = g.norm();
    if r <= R::min_positive_value() {
        return;
    }
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    // Tiny relative to the diagonal: rotating would only add rounding noise.
    if r <= R::epsilon() * R::lit(1e-3) * (app.abs() + aqq.abs()) {
        m.set(p, q, C::zero());
        m.set(q, p, C::zero());
        return;
    }
    // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let phase = g / r;
    let theta = R::lit(0.5) * (r + r).atan2(aqq - app);
    let (s, c) = theta.sin_cos();
    let jpp = C::new(c, R::zero());
    let jpq = C::new(s, R::zero());
    let jqp = phase.conj() * (-s);
    let jqq = phase.conj() * c;

    let n = m.rows();
    // columns: m ← m·J
    for i in 0..n {
        let mp = m.get(i, p);
        let mq = m.get(i, q);
        m.set(i, p, mp * jpp + mq * jqp);
        m.set(i, q, mp * jpq + mq * jqq);
        let vp = v.get(i, p);
        let vq = v.get(i, q);
        v.set(i, p, vp * jpp + vq * jqp);
        v.set(i, q, vp * jpq + vq * jqq);
    }
    // rows: m ← J†·m
    for j in 0..n {
        let mp = m.get(p, j);
        let mq = m.get(q, j);
        m.set(p, j, jpp.conj() * mp + jqp.conj() * mq);
        m.set(q, j, jpq.conj() * mp + jqq.conj() * mq);
    }
    m.set(p, q, C::zero());
    m.set(q, p, C::zero());
    let dp = m.get(p, p).re;
    let dq = m.get(q, q).re;
    m.set(p, p, C::new(dp, R::zero()));
    m.set(q, q, C::new(dq, R::zero()));
}
