use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{arg, Result};
use crate::linalg::{inner, orthonormal_completion};
use crate::scalar::{Real, C};
use crate::states::{bell_state, generalized_bell, BellKind};

/// One outcome of Alice's joint measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub label: String,
    /// Bits needed to announce the index: `⌈log₂K⌉` for `K` outcomes.
    pub classical_bits: u32,
}

/// `⌈log₂ k⌉`, exact in integer arithmetic.
pub fn classical_bits_for(outcomes: usize) -> u32 {
    outcomes.max(1).next_power_of_two().trailing_zeros()
}

/// Complete orthonormal basis of a pair of subsystems (`d₁ ⊗ d₂`) measured jointly.
#[derive(Clone, Debug)]
pub struct MeasurementBasis<R: Real> {
    states: Vec<Vec<C<R>>>,
    labels: Vec<String>,
    pair_dims: (usize, usize),
    description: String,
}

impl<R: Real> MeasurementBasis<R> {
    /// Errors unless the states form an orthonormal basis of the pair space.
    pub fn new(states: Vec<Vec<C<R>>>, labels: Vec<String>, pair_dims: (usize, usize), description: impl Into<String>) -> Result<Self> {
        let d = pair_dims.0 * pair_dims.1;
        if states.len() != labels.len() {
            return arg("one label per basis state is required");
        }
        if states.len() != d {
            return arg(format!("incomplete basis: {} states for a {d}-dimensional pair", states.len()));
        }
        if let Some(bad) = states.iter().position(|s| s.len() != d) {
            return arg(format!("basis state {bad} has length {} (expected {d})", states[bad].len()));
        }
        let tol = R::lit(R::HERM_TOL) * R::lit(10.0);
        for i in 0..d {
            for j in i..d {
                let g = inner(&states[i], &states[j]);
                let target = if i == j { C::one() } else { C::zero() };
                if (g - target).norm() > tol {
                    return arg(format!("basis states {i} and {j} are not orthonormal (overlap {g})"));
                }
            }
        }
        Ok(Self { states, labels, pair_dims, description: description.into() })
    }

    /// The qubit Bell basis in `Ψ⁻, Ψ⁺, Φ⁻, Φ⁺` order.
    pub fn bell() -> Self {
        let states = BellKind::ALL.iter().map(|&k| bell_state::<R>(k).into_amplitudes()).collect();
        let labels = BellKind::ALL.iter().map(|k| k.label().to_string()).collect();
        Self { states, labels, pair_dims: (2, 2), description: "bell".into() }
    }

    /// `generalized_bell(N, m, n)` at outcome index `m·N + n`.
    pub fn generalized_bell(n_dim: usize) -> Result<Self> {
        let mut states = Vec::with_capacity(n_dim * n_dim);
        let mut labels = Vec::with_capacity(n_dim * n_dim);
        for m in 0..n_dim {
            for n in 0..n_dim {
                states.push(generalized_bell::<R>(n_dim, m, n)?.into_amplitudes());
                labels.push(format!("bell_{m}_{n}"));
            }
        }
        Ok(Self { states, labels, pair_dims: (n_dim, n_dim), description: format!("generalized_bell({n_dim})") })
    }

    /// Basis for an `N × M` pair: the generalized Bell states of the
    /// `min(N, M)`-dimensional overlap (embedded by index), completed by
    /// Gram-Schmidt over the computational basis in ascending order.
    pub fn padded_generalized_bell(n_dim: usize, m_dim: usize) -> Result<Self> {
        if n_dim == 0 || m_dim == 0 {
            return arg("dimensions must be positive");
        }
        let d = n_dim.min(m_dim);
        let total = n_dim * m_dim;
        let mut family = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        for m in 0..d {
            for n in 0..d {
                let g = generalized_bell::<R>(d, m, n)?;
                let mut v = vec![C::zero(); total];
                for a in 0..d {
                    for b in 0..d {
                        v[a * m_dim + b] = g.amplitudes()[a * d + b];
                    }
                }
                family.push(v);
                labels.push(format!("bell_{m}_{n}"));
            }
        }
        let states = orthonormal_completion(&family, total);
        labels.extend((d * d..total).map(|k| format!("completion_{}", k - d * d)));
        Self::new(
            states,
            labels,
            (n_dim, m_dim),
            format!("generalized_bell({d}) on the overlap of {n_dim}x{m_dim}, completed by Gram-Schmidt over computational basis vectors in ascending order"),
        )
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn pair_dims(&self) -> (usize, usize) {
        self.pair_dims
    }

    pub fn state(&self, k: usize) -> &[C<R>] {
        &self.states[k]
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn outcome(&self, k: usize) -> MeasurementOutcome {
        MeasurementOutcome { index: k, label: self.labels[k].clone(), classical_bits: classical_bits_for(self.len()) }
    }
}
