use num_traits::Zero;
use rayon::prelude::*;

use super::ensemble::{weighted_entropy, Ensemble};
use crate::error::{arg, Result};
use crate::linalg::{hermitian_eigen, state_spectrum};
use crate::rng::{child_seed, rng_from_seed};
use crate::scalar::{cis, Real, C};
use crate::states::{haar_random_unitary, DensityMatrix, StateVector};

#[derive(Clone, Debug)]
pub struct EofConfig {
    /// Ensemble size `k`; `None` uses `rank²`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    /// Cap on refinement sweeps per restart.
    pub max_iters: usize,
    /// Refinement stops once the rotation step falls below this angle.
    pub tol: f64,
    pub seed: u64,
}

impl Default for EofConfig {
    fn default() -> Self {
        Self { ensemble_size: None, restarts: 16, max_iters: 2000, tol: 1e-6, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct EofResult<R: Real> {
    /// Lowest ensemble entanglement found, in bits. An upper bound on the true minimum.
    pub value: R,
    pub best_ensemble: Ensemble<R>,
    pub restarts_used: usize,
    /// Restart that produced `best_ensemble`.
    pub best_restart: usize,
    /// Whether that restart reached the step tolerance within `max_iters`.
    pub converged: bool,
}

/// Minimizes `Σ pⱼ E(ψⱼ)` over size-`k` decompositions `ρ = Σ |wⱼ⟩⟨wⱼ|`.
///
/// Every decomposition has the form `wⱼ = Σᵢ Uⱼᵢ √λᵢ |eᵢ⟩` for the eigenpairs
/// of `ρ` and a `k × rank` isometry `U`. Restart 0 starts from the
/// eigen-ensemble, later restarts from Haar-random isometries. Refinement is
/// gradient-free: Givens rotations between pairs of members, which keep the
/// mixture fixed and change only two terms of the objective.
pub fn entanglement_of_formation<R: Real>(rho: &DensityMatrix<R>, config: &EofConfig) -> Result<EofResult<R>> {
    let (da, db) = rho.dims().as_bipartite()?;
    state_spectrum(rho.matrix())?;
    if config.restarts == 0 {
        return arg("at least one restart is required");
    }
    if !(config.tol > 0.0) {
        return arg(format!("tolerance {} must be positive", config.tol));
    }
    let spec = hermitian_eigen(rho.matrix())?;
    let clip = R::lit(R::EIG_CLIP);
    let rank = spec.eigenvalues.iter().filter(|&&l| l > clip).count().max(1);
    let k = config.ensemble_size.unwrap_or(rank * rank);
    if k < rank {
        return arg(format!("ensemble size {k} is below the rank {rank}"));
    }
    let dim = da * db;
    // √λᵢ |eᵢ⟩
    let scaled: Vec<Vec<C<R>>> = (0..rank)
        .map(|i| {
            let s = spec.eigenvalues[i].max(R::zero()).sqrt();
            spec.eigenvector(i).into_iter().map(|z| z * s).collect()
        })
        .collect();

    let runs: Vec<Run<R>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let members: Vec<Vec<C<R>>> = if r == 0 {
                (0..k).map(|j| if j < rank { scaled[j].clone() } else { vec![C::zero(); dim] }).collect()
            } else {
                let u = haar_random_unitary::<R>(k, &mut rng_from_seed(child_seed(config.seed, r as u64)));
                (0..k)
                    .map(|j| {
                        let mut w = vec![C::<R>::zero(); dim];
                        for (i, e) in scaled.iter().enumerate() {
                            let c = u.get(j, i);
                            for (x, &y) in w.iter_mut().zip(e) {
                                *x = *x + c * y;
                            }
                        }
                        w
                    })
                    .collect()
            };
            refine(members, da, db, config)
        })
        .collect();

    // lowest value wins, earliest restart on ties
    let (best_restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value < a.1.value { b } else { a })
        .expect("at least one restart");

    let cutoff = R::lit(1e-12);
    let mut members = Vec::new();
    let mut kept_weight = R::zero();
    for w in best.members {
        let p: R = w.iter().map(|z| z.norm_sqr()).sum();
        if p >= cutoff {
            kept_weight = kept_weight + p;
            members.push((p, w));
        }
    }
    let members = members
        .into_iter()
        .map(|(p, w)| Ok((p / kept_weight, StateVector::normalized(w, rho.dims().clone())?)))
        .collect::<Result<Vec<_>>>()?;
    let best_ensemble = Ensemble::new(members)?;
    let value = super::ensemble::ensemble_entanglement(&best_ensemble)?;
    Ok(EofResult { value, best_ensemble, restarts_used: config.restarts, best_restart, converged: best.converged })
}

struct Run<R: Real> {
    value: R,
    members: Vec<Vec<C<R>>>,
    converged: bool,
}

fn refine<R: Real>(mut ws: Vec<Vec<C<R>>>, da: usize, db: usize, config: &EofConfig) -> Run<R> {
    let k = ws.len();
    let term = |w: &[C<R>]| {
        let (p, e) = weighted_entropy(w, da, db);
        p * e
    };
    let mut terms: Vec<R> = ws.iter().map(|w| term(w)).collect();
    let weights = |w: &[C<R>]| w.iter().map(|z| z.norm_sqr()).sum::<R>();
    let accept = R::epsilon() * R::lit(16.0);
    let tol = R::lit(config.tol);
    let mut delta = R::FRAC_PI_4();
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < config.max_iters {
        if delta < tol {
            converged = true;
            break;
        }
        sweeps += 1;
        let mut improved = false;
        for i in 0..k {
            for j in i + 1..k {
                if weights(&ws[i]).is_zero() && weights(&ws[j]).is_zero() {
                    continue;
                }
                for (theta, phi) in [(delta, R::zero()), (-delta, R::zero()), (delta, R::FRAC_PI_2()), (-delta, R::FRAC_PI_2())] {
                    // keep applying a successful move while it helps
                    loop {
                        let (wi, wj) = rotate(&ws[i], &ws[j], theta, phi);
                        let (ti, tj) = (term(&wi), term(&wj));
                        if ti + tj < terms[i] + terms[j] - accept {
                            ws[i] = wi;
                            ws[j] = wj;
                            terms[i] = ti;
                            terms[j] = tj;
                            improved = true;
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        if !improved {
            delta = delta * R::lit(0.5);
        }
    }
    if delta < tol {
        converged = true;
    }
    let value = terms.iter().copied().sum();
    Run { value, members: ws, converged }
}

/// `(c·a + s·e^{iφ}·b, −s·e^{−iφ}·a + c·b)`, which preserves `|a⟩⟨a| + |b⟩⟨b|`.
fn rotate<R: Real>(a: &[C<R>], b: &[C<R>], theta: R, phi: R) -> (Vec<C<R>>, Vec<C<R>>) {
    let (s, c) = theta.sin_cos();
    let e = cis(phi) * s;
    let ec = e.conj();
    let na = a.iter().zip(b).map(|(&x, &y)| x * c + y * e).collect();
    let nb = a.iter().zip(b).map(|(&x, &y)| y * c - x * ec).collect();
    (na, nb)
}
