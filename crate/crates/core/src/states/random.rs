use super::vector::StateVector;
use crate::linalg::{orthonormalize_against, ComplexMatrix, DimSpec};
use crate::rng::{complex_normal, rng_from_seed, Rng};
use crate::scalar::{Real, C};

/// Haar-random pure state of dimension `n`, deterministic per seed.
pub fn haar_random_ket<R: Real>(n: usize, seed: u64) -> StateVector<R> {
    haar_random_ket_with(n, &mut rng_from_seed(seed))
}

/// Haar-random pure state drawn from an existing stream: a normalized
/// standard complex Gaussian vector.
pub fn haar_random_ket_with<R: Real>(n: usize, rng: &mut Rng) -> StateVector<R> {
    let n = n.max(1);
    loop {
        let v: Vec<C<R>> = (0..n).map(|_| complex_normal(rng)).collect();
        if let Ok(s) = StateVector::normalized(v, DimSpec::single(n)) {
            return s;
        }
    }
}

/// Haar-random unitary: Gram-Schmidt (QR with positive diagonal) of a Ginibre matrix.
pub fn haar_random_unitary<R: Real>(n: usize, rng: &mut Rng) -> ComplexMatrix<R> {
    let mut cols: Vec<Vec<C<R>>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C<R>> = (0..n).map(|_| complex_normal(rng)).collect();
        if orthonormalize_against(&mut v, &cols) {
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::child_seed;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(haar_random_ket::<f64>(5, 42), haar_random_ket::<f64>(5, 42));
        assert_ne!(haar_random_ket::<f64>(5, 42), haar_random_ket::<f64>(5, 43));
    }

    #[test]
    fn normalized() {
        for s in 0..20 {
            let k = haar_random_ket::<f64>(7, s);
            let n: f64 = k.amplitudes().iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = rng_from_seed(3);
        for n in [1, 2, 4, 9] {
            assert!(haar_random_unitary::<f64>(n, &mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn first_moment_matches_haar() {
        // E|⟨0|ψ⟩|² = 1/N; 10⁵ samples, N = 2.
        let samples = 100_000;
        let mean: f64 = (0..samples)
            .map(|i| haar_random_ket::<f64>(2, child_seed(11, i)).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }
}
