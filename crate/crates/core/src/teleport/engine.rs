//! Exact branch enumeration of the measure / announce / correct protocol.

use num_traits::Zero;

use super::basis::{MeasurementBasis, MeasurementOutcome};
use super::correction::CorrectionTable;
use crate::error::{arg, mismatch, Result};
use crate::linalg::{hermitian_eigen, inner, pure_fidelity, tensor_product, uhlmann_fidelity, ComplexMatrix, DimSpec};
use crate::scalar::{Real, C};
use crate::states::{DensityMatrix, StateVector};

/// One branch of a joint measurement.
#[derive(Clone, Debug)]
pub struct Branch<R: Real> {
    pub outcome: MeasurementOutcome,
    pub probability: R,
    /// Normalized state of the unmeasured subsystems; `None` for zero-probability branches.
    pub state: Option<DensityMatrix<R>>,
}

impl<R: Real> Branch<R> {
    pub fn is_zero_probability(&self) -> bool {
        self.state.is_none()
    }
}

/// Probabilities at or below this are reported as zero-probability branches.
fn zero_probability<R: Real>() -> R {
    R::epsilon() * R::lit(16.0)
}

/// Measures the first two subsystems of `joint` in `basis`, enumerating every branch.
///
/// `pₖ = Tr[(Pₖ⊗I)ρ]`; the conditional state is the normalized partial trace of
/// `(Pₖ⊗I)ρ(Pₖ⊗I)` over the measured pair.
pub fn bell_measure<R: Real>(joint: &DensityMatrix<R>, basis: &MeasurementBasis<R>) -> Result<Vec<Branch<R>>> {
    let dims = joint.dims().dims();
    let (d1, d2) = basis.pair_dims();
    if dims.len() < 3 || dims[0] != d1 || dims[1] != d2 {
        return mismatch(format!("joint dims {dims:?} do not start with the measured pair ({d1}, {d2}) plus a remainder"));
    }
    let rest_dims = DimSpec::new(dims[2..].to_vec())?;
    let pair = d1 * d2;
    let rest = rest_dims.total();
    let rho = joint.matrix();

    let mut branches = Vec::with_capacity(basis.len());
    let mut total = R::zero();
    for k in 0..basis.len() {
        let b = basis.state(k);
        // σ(r, r') = Σ_{x,y} conj(b_x) ρ[(x,r),(y,r')] b_y
        let mut sigma = ComplexMatrix::<R>::zeros(rest, rest);
        for x in 0..pair {
            let bx = b[x].conj();
            if bx.is_zero() {
                continue;
            }
            for (y, &by) in b.iter().enumerate().take(pair) {
                let w = bx * by;
                if w.is_zero() {
                    continue;
                }
                for r in 0..rest {
                    for s in 0..rest {
                        let v = rho.get(x * rest + r, y * rest + s);
                        *sigma.at_mut(r, s) = sigma.get(r, s) + w * v;
                    }
                }
            }
        }
        let p = sigma.trace().re.max(R::zero());
        total = total + p;
        let state = (p > zero_probability::<R>())
            .then(|| DensityMatrix::from_parts_unchecked(sigma.scale_real(R::one() / p).hermitian_part(), rest_dims.clone()));
        branches.push(Branch { outcome: basis.outcome(k), probability: p, state });
    }
    if (total - R::one()).abs() > R::lit(R::NORM_TOL) {
        return arg(format!("branch probabilities sum to {total}; is the basis complete and the state normalized?"));
    }
    Ok(branches)
}

/// Result of one teleportation branch.
#[derive(Clone, Debug)]
pub struct TeleportRecord<R: Real> {
    pub outcome: MeasurementOutcome,
    /// Bob's corrected state; `None` when the branch has zero probability.
    pub output_state: Option<DensityMatrix<R>>,
    /// Fidelity of the output with the (embedded) input; `None` for zero-probability branches.
    pub fidelity: Option<R>,
    pub outcome_probability: R,
}

/// `Σₖ pₖ·fₖ` over non-empty branches.
pub fn average_fidelity<R: Real>(records: &[TeleportRecord<R>]) -> R {
    records
        .iter()
        .filter_map(|r| r.fidelity.map(|f| f * r.outcome_probability))
        .sum()
}

/// Shape bookkeeping shared by the density-matrix and state-vector engines.
struct Layout {
    input: usize,
    alice: usize,
    bob: usize,
    /// Bob's auxiliary dimension, prepared in `|0⟩`, so that `bob·aux` matches the correction size.
    aux: usize,
}

fn layout<R: Real>(input: usize, resource: &DimSpec, table: &CorrectionTable<R>, basis: &MeasurementBasis<R>) -> Result<Layout> {
    let (alice, bob) = resource.as_bipartite()?;
    if basis.pair_dims() != (input, alice) {
        return mismatch(format!(
            "basis measures a {:?} pair but input/Alice dims are ({input}, {alice})",
            basis.pair_dims()
        ));
    }
    if table.len() != basis.len() {
        return arg(format!("correction table has {} entries for {} outcomes", table.len(), basis.len()));
    }
    let out = table.dim();
    if !out.is_multiple_of(bob) || out < input {
        return mismatch(format!(
            "corrections act on dimension {out}, incompatible with Bob's {bob}-dimensional half and a {input}-dimensional input"
        ));
    }
    Ok(Layout { input, alice, bob, aux: out / bob })
}

fn pad_aux<R: Real>(bob_state: &ComplexMatrix<R>, aux: usize) -> ComplexMatrix<R> {
    if aux == 1 {
        return bob_state.clone();
    }
    let mut zero = ComplexMatrix::zeros(aux, aux);
    zero.set(0, 0, C::new(R::one(), R::zero()));
    tensor_product(bob_state, &zero).expect("small dimensions")
}

/// Teleports `input` through `resource`: Alice measures (input, her half) in
/// `basis`, announces the outcome, Bob applies the matching correction.
///
/// When the correction dimension exceeds Bob's half, Bob first appends an
/// auxiliary register in `|0⟩`; the input is compared after zero padding.
pub fn teleport<R: Real>(
    input: &DensityMatrix<R>,
    resource: &DensityMatrix<R>,
    table: &CorrectionTable<R>,
    basis: &MeasurementBasis<R>,
) -> Result<Vec<TeleportRecord<R>>> {
    let lay = layout(input.dim(), resource.dims(), table, basis)?;
    let joint = DensityMatrix::from_parts_unchecked(
        tensor_product(input.matrix(), resource.matrix())?,
        DimSpec::new(vec![lay.input, lay.alice, lay.bob])?,
    );
    let out_dim = lay.bob * lay.aux;
    let reference = PureOrMixed::of(&input.embed(out_dim)?)?;

    bell_measure(&joint, basis)?
        .into_iter()
        .map(|branch| {
            let Branch { outcome, probability, state } = branch;
            let (output_state, fidelity) = match state {
                Some(bob) => {
                    let padded = pad_aux(bob.matrix(), lay.aux);
                    let out = padded.conjugate_by(table.entry(outcome.index))?;
                    let out = DensityMatrix::from_parts_unchecked(out, output_dims(&lay)?);
                    let f = reference.fidelity(&out)?;
                    (Some(out), Some(f))
                }
                None => (None, None),
            };
            Ok(TeleportRecord { outcome, output_state, fidelity, outcome_probability: probability })
        })
        .collect()
}

fn output_dims(lay: &Layout) -> Result<DimSpec> {
    if lay.aux == 1 {
        Ok(DimSpec::single(lay.bob))
    } else {
        DimSpec::new(vec![lay.bob, lay.aux])
    }
}

enum PureOrMixed<R: Real> {
    Pure(Vec<C<R>>),
    Mixed(ComplexMatrix<R>),
}

impl<R: Real> PureOrMixed<R> {
    fn of(rho: &DensityMatrix<R>) -> Result<Self> {
        if (rho.purity() - R::one()).abs() <= R::lit(R::NORM_TOL) {
            let spec = hermitian_eigen(rho.matrix())?;
            Ok(Self::Pure(spec.eigenvector(0)))
        } else {
            Ok(Self::Mixed(rho.matrix().clone()))
        }
    }

    fn fidelity(&self, out: &DensityMatrix<R>) -> Result<R> {
        match self {
            Self::Pure(v) => pure_fidelity(v, out.matrix()),
            Self::Mixed(m) => uhlmann_fidelity(m, out.matrix()),
        }
    }
}

/// One branch of the state-vector engine.
#[derive(Clone, Debug)]
pub struct PureBranch<R: Real> {
    pub outcome: MeasurementOutcome,
    pub probability: R,
    /// Bob's corrected state (including any auxiliary register).
    pub output: Option<StateVector<R>>,
    /// `|⟨ψ|ψ'⟩|²` against the zero-padded input.
    pub fidelity: Option<R>,
    /// Normalized post-measurement state of the whole system before Bob's correction,
    /// ordered (input, Alice, Bob).
    pub post_measurement: Option<StateVector<R>>,
}

/// State-vector version of [`teleport`] for pure inputs and pure resources.
pub fn teleport_pure<R: Real>(
    input: &StateVector<R>,
    resource: &StateVector<R>,
    table: &CorrectionTable<R>,
    basis: &MeasurementBasis<R>,
) -> Result<Vec<PureBranch<R>>> {
    let lay = layout(input.dim(), resource.dims(), table, basis)?;
    let joint = input.tensor(resource)?;
    let pair = lay.input * lay.alice;
    let out_dim = lay.bob * lay.aux;
    let reference = input.embed(out_dim)?;
    let full_dims = DimSpec::new(vec![lay.input, lay.alice, lay.bob])?;

    (0..basis.len())
        .map(|k| {
            let b = basis.state(k);
            let bob: Vec<C<R>> = (0..lay.bob)
                .map(|r| (0..pair).fold(C::zero(), |acc, x| acc + b[x].conj() * joint.amplitudes()[x * lay.bob + r]))
                .collect();
            let p: R = bob.iter().map(|z| z.norm_sqr()).sum();
            let outcome = basis.outcome(k);
            if p <= zero_probability::<R>() {
                return Ok(PureBranch { outcome, probability: p, output: None, fidelity: None, post_measurement: None });
            }
            let scale = R::one() / p.sqrt();
            let bob: Vec<C<R>> = bob.into_iter().map(|z| z * scale).collect();
            let mut padded = vec![C::zero(); out_dim];
            for (r, &z) in bob.iter().enumerate() {
                padded[r * lay.aux] = z;
            }
            let out = StateVector::normalized(table.entry(k).apply(&padded)?, output_dims(&lay)?)?;
            let fidelity = inner(reference.amplitudes(), out.amplitudes()).norm_sqr();
            let post: Vec<C<R>> = b.iter().flat_map(|&bx| bob.iter().map(move |&z| bx * z)).collect();
            Ok(PureBranch {
                outcome,
                probability: p,
                output: Some(out),
                fidelity: Some(fidelity.min(R::one())),
                post_measurement: Some(StateVector::from_parts_unchecked(post, full_dims.clone())),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::child_seed;
    use crate::states::{bell_state, haar_random_ket, BellKind};

    fn qubit(a: f64, b: f64) -> StateVector<f64> {
        StateVector::from_real(&[a, b], DimSpec::single(2)).unwrap()
    }

    #[test]
    fn measuring_with_singlet_resource_is_uniform() {
        let basis = MeasurementBasis::<f64>::bell();
        for s in 0..20 {
            let psi = haar_random_ket::<f64>(2, s);
            let joint = psi.tensor(&bell_state(BellKind::PsiMinus)).unwrap().density();
            let branches = bell_measure(&joint, &basis).unwrap();
            assert_eq!(branches.len(), 4);
            for b in &branches {
                assert!((b.probability - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn measuring_a_product_state() {
        // |00⟩⟨00| ⊗ ρ: only Φ± overlap |00⟩.
        let basis = MeasurementBasis::<f64>::bell();
        let zz = StateVector::<f64>::basis(DimSpec::bipartite(2, 2), 0).unwrap().density();
        let rho = DensityMatrix::maximally_mixed(DimSpec::single(2));
        let branches = bell_measure(&zz.tensor(&rho).unwrap(), &basis).unwrap();
        let p: Vec<f64> = branches.iter().map(|b| b.probability).collect();
        assert!(p[0].abs() < 1e-15 && p[1].abs() < 1e-15);
        assert!((p[2] - 0.5).abs() < 1e-15 && (p[3] - 0.5).abs() < 1e-15);
        assert!(branches[0].is_zero_probability() && !branches[2].is_zero_probability());
        let sum: f64 = p.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn measurement_requires_matching_dims() {
        let basis = MeasurementBasis::<f64>::bell();
        let two = DensityMatrix::<f64>::maximally_mixed(DimSpec::bipartite(2, 2));
        assert!(bell_measure(&two, &basis).is_err());
        let wrong = DensityMatrix::<f64>::maximally_mixed(DimSpec::new(vec![3, 2, 2]).unwrap());
        assert!(bell_measure(&wrong, &basis).is_err());
    }

    #[test]
    fn faithful_qubit_teleportation() {
        let input = qubit(0.6, 0.8).density();
        let records = teleport(
            &input,
            &bell_state(BellKind::PsiMinus).density(),
            &CorrectionTable::singlet(),
            &MeasurementBasis::bell(),
        )
        .unwrap();
        for r in &records {
            assert!((r.fidelity.unwrap() - 1.0).abs() < 1e-12);
            assert_eq!(r.outcome.classical_bits, 2);
        }
        assert!((average_fidelity(&records) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_input_stays_mixed() {
        let input = DensityMatrix::<f64>::maximally_mixed(DimSpec::single(2));
        let records = teleport(
            &input,
            &bell_state(BellKind::PsiMinus).density(),
            &CorrectionTable::singlet(),
            &MeasurementBasis::bell(),
        )
        .unwrap();
        for r in records {
            let out = r.output_state.unwrap();
            assert!(out.matrix().max_abs_diff(input.matrix()) < 1e-12);
        }
    }

    #[test]
    fn unentangled_resource_gives_classical_fidelity() {
        // oracle: independent Monte Carlo gave ≈ 1/3 for this resource/table pairing,
        // below the 2/3 measure-and-prepare limit.
        let resource = StateVector::<f64>::basis(DimSpec::bipartite(2, 2), 0).unwrap().density();
        let (table, basis) = (CorrectionTable::singlet(), MeasurementBasis::bell());
        let trials = 2000;
        let mean: f64 = (0..trials)
            .map(|t| {
                let psi = haar_random_ket::<f64>(2, child_seed(5, t)).density();
                average_fidelity(&teleport(&psi, &resource, &table, &basis).unwrap())
            })
            .sum::<f64>()
            / trials as f64;
        assert!(mean <= 2.0 / 3.0 + 0.02, "mean {mean}");
        assert!((mean - 1.0 / 3.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn table_dimension_mismatch() {
        let input = qubit(1.0, 0.0).density();
        let resource = bell_state::<f64>(BellKind::PsiMinus).density();
        let basis = MeasurementBasis::bell();
        let wrong = CorrectionTable::identity(3, 4);
        assert!(teleport(&input, &resource, &wrong, &basis).is_err());
        let short = CorrectionTable::identity(2, 3);
        assert!(teleport(&input, &resource, &short, &basis).is_err());
    }

    #[test]
    fn pure_engine_agrees_with_density_engine() {
        let (table, basis) = (CorrectionTable::singlet(), MeasurementBasis::bell());
        let resource = bell_state::<f64>(BellKind::PhiPlus);
        let psi = haar_random_ket::<f64>(2, 77);
        let pure = teleport_pure(&psi, &resource, &table, &basis).unwrap();
        let mixed = teleport(&psi.density(), &resource.density(), &table, &basis).unwrap();
        for (a, b) in pure.iter().zip(&mixed) {
            assert!((a.probability - b.outcome_probability).abs() < 1e-12);
            assert!((a.fidelity.unwrap() - b.fidelity.unwrap()).abs() < 1e-12);
            let out = a.output.as_ref().unwrap().density();
            assert!(out.matrix().max_abs_diff(b.output_state.as_ref().unwrap().matrix()) < 1e-12);
        }
    }

    #[test]
    fn auxiliary_register_embeds_input() {
        // 3-dim input through a 2x2 resource; corrections on 2 ⊗ aux(2) = 4 dims.
        let basis = MeasurementBasis::<f64>::padded_generalized_bell(3, 2).unwrap();
        let table = CorrectionTable::identity(4, 6);
        let psi = haar_random_ket::<f64>(3, 9);
        let resource = crate::states::generalized_bell::<f64>(2, 0, 0).unwrap();
        let recs = teleport(&psi.density(), &resource.density(), &table, &basis).unwrap();
        let total: f64 = recs.iter().map(|r| r.outcome_probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for r in recs.iter().filter(|r| r.output_state.is_some()) {
            assert_eq!(r.output_state.as_ref().unwrap().dim(), 4);
        }
    }
}
