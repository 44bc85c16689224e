use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{mismatch, Error, Result};
use crate::scalar::{Real, C};

/// Dense row-major complex matrix. Column vectors are `n × 1` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<R>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return mismatch(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| C::new(R::lit(x), R::zero())))
            .collect();
        Self::from_vec(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[C<R>]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { C::zero() })
    }

    pub fn column_vector(v: &[C<R>]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &[C<R>]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn entries(&self) -> &[C<R>] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<C<R>> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C<R> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C<R>) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, i: usize, j: usize) -> &mut C<R> {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<C<R>> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<R>]) {
        for (i, &x) in v.iter().enumerate() {
            self.set(i, j, x);
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C<R>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: R) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C<R>]) -> Result<Vec<C<R>>> {
        if v.len() != self.cols {
            return mismatch(format!("vector of length {} for {} columns", v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(C::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// `U·self·U†`
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.try_mul(self)?.try_mul(&u.adjoint())
    }

    pub fn trace(&self) -> C<R> {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn frobenius_norm(&self) -> R {
        self.data.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), R::max)
    }

    pub fn is_hermitian(&self, tol: R) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: R) -> bool {
        self.is_square()
            && self.adjoint().try_mul(self).is_ok_and(|p| p.max_abs_diff(&Self::identity(self.rows)) <= tol)
    }

    /// `(M + M†)/2`
    pub fn hermitian_part(&self) -> Self {
        let half = R::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self.get(i, j) + self.get(j, i).conj()) * half)
    }
}

impl<R: Real> Add for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn add(self, rhs: Self) -> ComplexMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<R: Real> Sub for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn sub(self, rhs: Self) -> ComplexMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<R: Real> Mul for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    /// Panics on shape mismatch; use [`ComplexMatrix::try_mul`] for fallible products.
    fn mul(self, rhs: Self) -> ComplexMatrix<R> {
        self.try_mul(rhs).expect("shape mismatch")
    }
}

pub fn inner<R: Real>(a: &[C<R>], b: &[C<R>]) -> C<R> {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn norm_sqr<R: Real>(v: &[C<R>]) -> R {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Pauli matrices and identity on one qubit.
pub mod pauli {
    use super::ComplexMatrix;
    use crate::scalar::{c, Real};

    pub fn identity<R: Real>() -> ComplexMatrix<R> {
        ComplexMatrix::identity(2)
    }

    pub fn sigma1<R: Real>() -> ComplexMatrix<R> {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn sigma2<R: Real>() -> ComplexMatrix<R> {
        let (o, i) = (R::zero(), R::one());
        ComplexMatrix::from_vec(2, 2, vec![c(o, o), c(o, -i), c(o, i), c(o, o)]).unwrap()
    }

    pub fn sigma3<R: Real>() -> ComplexMatrix<R> {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

}
