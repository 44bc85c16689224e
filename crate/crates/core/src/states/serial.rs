//! JSON interchange for states.
//!
//! Vectors: `{"dims": [...], "re": [...], "im": [...]}`.
//! Matrices: the same plus `"rows"`, entries flattened row-major.
//! Flat indices follow the subsystem-major basis ordering.

use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::vector::StateVector;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DimSpec};
use crate::scalar::{Real, C};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dims: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dims: Vec<usize>,
    pub rows: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

fn split<R: Real>(z: &[C<R>]) -> (Vec<f64>, Vec<f64>) {
    z.iter().map(|c| (c.re.as_f64(), c.im.as_f64())).unzip()
}

fn join<R: Real>(re: &[f64], im: &[f64]) -> Result<Vec<C<R>>> {
    if re.len() != im.len() {
        return Err(Error::Argument(format!("re has {} entries but im has {}", re.len(), im.len())));
    }
    Ok(re.iter().zip(im).map(|(&a, &b)| C::new(R::lit(a), R::lit(b))).collect())
}

impl VectorJson {
    pub fn from_state<R: Real>(psi: &StateVector<R>) -> Self {
        let (re, im) = split(psi.amplitudes());
        Self { dims: psi.dims().dims().to_vec(), re, im }
    }

    pub fn to_state<R: Real>(&self) -> Result<StateVector<R>> {
        StateVector::new(join(&self.re, &self.im)?, DimSpec::new(self.dims.clone())?)
    }
}

impl MatrixJson {
    pub fn from_density<R: Real>(rho: &DensityMatrix<R>) -> Self {
        let (re, im) = split(rho.matrix().entries());
        Self { dims: rho.dims().dims().to_vec(), rows: rho.dim(), re, im }
    }

    pub fn to_density<R: Real>(&self) -> Result<DensityMatrix<R>> {
        let dims = DimSpec::new(self.dims.clone())?;
        let m = ComplexMatrix::from_vec(self.rows, self.rows, join(&self.re, &self.im)?)?;
        DensityMatrix::new(m, dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{haar_random_ket, werner_state};
    use proptest::prelude::*;

    #[test]
    fn vector_field_names() {
        let psi = StateVector::<f64>::from_real(&[0.6, 0.8], DimSpec::single(2)).unwrap();
        let json = serde_json::to_string(&VectorJson::from_state(&psi)).unwrap();
        assert_eq!(json, r#"{"dims":[2],"re":[0.6,0.8],"im":[0.0,0.0]}"#);
    }

    #[test]
    fn matrix_round_trip() {
        let w = werner_state(0.8f64).unwrap();
        let json = serde_json::to_string(&MatrixJson::from_density(&w)).unwrap();
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_density::<f64>().unwrap(), w);
    }

    #[test]
    fn rejects_mismatched_lengths() {
        let j = VectorJson { dims: vec![2], re: vec![1.0, 0.0], im: vec![0.0] };
        assert!(j.to_state::<f64>().is_err());
    }

    proptest! {
        #[test]
        fn vector_round_trip(seed in any::<u64>(), n in 1usize..9) {
            let psi = haar_random_ket::<f64>(n, seed);
            let json = serde_json::to_string(&VectorJson::from_state(&psi)).unwrap();
            let back: VectorJson = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back.to_state::<f64>().unwrap(), psi);
        }
    }
}
