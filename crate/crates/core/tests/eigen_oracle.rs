//! Cross-checks the hand-written Jacobi eigensolver and entropy against nalgebra.

use nalgebra::{Complex as NaComplex, DMatrix};
use rand::Rng;

use qtele_core::linalg::{hermitian_eigen, von_neumann_entropy, ComplexMatrix};
use qtele_core::rng::rng_from_seed;
use qtele_core::Matrix;

fn random_hermitian(n: usize, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    let g = ComplexMatrix::from_fn(n, n, |_, _| qtele_core::Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&g + &g.adjoint()).scale_real(0.5)
}

fn to_nalgebra(m: &Matrix) -> DMatrix<NaComplex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let z = m.get(i, j);
        NaComplex::new(z.re, z.im)
    })
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

#[test]
fn eigenvalues_match_nalgebra() {
    for (k, n) in [2usize, 3, 4, 7, 9, 16, 27].iter().enumerate() {
        let m = random_hermitian(*n, 100 + k as u64);
        let ours = hermitian_eigen(&m).unwrap().eigenvalues;
        let theirs = sorted_desc(to_nalgebra(&m).symmetric_eigen().eigenvalues.iter().copied().collect());
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-10, "n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn entropy_matches_nalgebra_spectrum() {
    for seed in 0..10u64 {
        let g = random_hermitian(6, 500 + seed);
        let rho = g.try_mul(&g.adjoint()).unwrap();
        let tr = rho.trace().re;
        let rho = rho.scale_real(1.0 / tr);
        let eig = to_nalgebra(&rho).symmetric_eigen().eigenvalues;
        let h: f64 = eig.iter().filter(|&&x| x > 1e-10).map(|&x| -x * x.log2()).sum();
        assert!((von_neumann_entropy(&rho).unwrap() - h).abs() < 1e-9);
    }
}
