use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};

/// Per-subsystem Hilbert space dimensions of a composite system.
///
/// Basis ordering is subsystem-major: the leftmost subsystem is the most
/// significant digit of a flat basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimSpec {
    dims: Vec<usize>,
}

impl DimSpec {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return arg("dimension list is empty");
        }
        if dims.contains(&0) {
            return arg(format!("zero subsystem dimension in {dims:?}"));
        }
        checked_product(&dims)?;
        Ok(Self { dims })
    }

    pub fn single(d: usize) -> Self {
        Self { dims: vec![d] }
    }

    pub fn bipartite(a: usize, b: usize) -> Self {
        Self { dims: vec![a, b] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of the whole space.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &DimSpec) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::new(dims)
    }

    /// `(left, right)` dimensions of a two-party split; errors unless there are exactly two entries.
    pub fn as_bipartite(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            [a, b] => Ok((*a, *b)),
            other => arg(format!("expected bipartite dims, got {other:?}")),
        }
    }

    /// Row-major strides of each subsystem digit.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }
}

pub(crate) fn checked_product(dims: &[usize]) -> Result<usize> {
    dims.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d)
            .ok_or_else(|| Error::DimensionTooLarge(format!("product of {dims:?} overflows")))
    })
}
