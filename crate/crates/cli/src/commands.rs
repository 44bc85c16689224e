//! One function per subcommand, each producing a complete [`Report`].

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use rand::Rng as _;
use rayon::prelude::*;
use serde_json::{json, Value};

use qtele_core::distill::{concentrate_pure, hashing_rate, recurrence_distill, recurrence_round, theorem3_experiment, Direction, MAX_ROUNDS};
use qtele_core::entanglement::{concurrence_oracle_2q, entanglement_of_formation, pure_entanglement, EofConfig};
use qtele_core::linalg::{shannon_bits, DimSpec};
use qtele_core::rng::{child_seed, rng_from_seed};
use qtele_core::states::{
    bell_state, generalized_bell, haar_random_ket, haar_random_ket_with, partially_entangled, werner_state, BellKind,
    StateVector, VectorJson,
};
use qtele_core::teleport::{dimension_audit, example1_scenario, teleport_pure, AuditBudget, AuditConfig};
use qtele_core::{Basis, Complex, Corrections, Density, Ket, Matrix};

use crate::report::{float_json, Cell, Report};
use crate::RunConfig;

fn complex_cells(prefix: &str, amps: &[Complex], cols: &mut Vec<String>, cells: &mut Vec<Cell>) {
    for (j, z) in amps.iter().enumerate() {
        cols.push(format!("re_{prefix}_{j}"));
        cols.push(format!("im_{prefix}_{j}"));
        cells.push(z.re.into());
        cells.push(z.im.into());
    }
}

fn matrix_json(m: &Matrix) -> Value {
    let re: Vec<Vec<f64>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).re).collect()).collect();
    let im: Vec<Vec<f64>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).im).collect()).collect();
    json!({ "re": re, "im": im })
}

fn parse_param<T: std::str::FromStr>(spec: &str, flag: &str) -> Result<T> {
    spec.parse().map_err(|_| anyhow!("{flag}: cannot parse '{spec}'"))
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    /// Shared pair: a Bell label (psi_minus, psi_plus, phi_minus, phi_plus) or generalized_bell:N.
    #[arg(long, default_value = "psi_minus")]
    pub resource: String,
    /// Correction table: singlet, identity or qudit.
    #[arg(long, default_value = "singlet")]
    pub table: String,
    /// Input per trial: random (Haar, seeded per trial), zero, one or plus.
    #[arg(long, default_value = "random")]
    pub input: String,
}

struct Protocol {
    resource: Ket,
    basis: Basis,
    table: Corrections,
    dim: usize,
}

fn protocol(args: &TeleportArgs) -> Result<Protocol> {
    let (resource, basis, dim) = if let Some(n) = args.resource.strip_prefix("generalized_bell:") {
        let n: usize = parse_param(n, "--resource")?;
        if n < 2 {
            bail!("--resource: generalized_bell needs N >= 2");
        }
        (generalized_bell(n, 0, 0).context("--resource")?, Basis::generalized_bell(n).context("--resource")?, n)
    } else {
        let kind: BellKind = args.resource.parse().context("--resource")?;
        (bell_state(kind), Basis::bell(), 2)
    };
    let qudit = args.resource.starts_with("generalized_bell:");
    let table = match args.table.as_str() {
        "singlet" if !qudit => Corrections::singlet(),
        "qudit" if qudit => Corrections::qudit(dim),
        "identity" => Corrections::identity(dim, basis.len()),
        "singlet" | "qudit" => bail!("--table: '{}' does not fit resource '{}'", args.table, args.resource),
        other => bail!("--table: unknown table '{other}' (expected singlet, identity or qudit)"),
    };
    Ok(Protocol { resource, basis, table, dim })
}

fn teleport_input(kind: &str, dim: usize, rng: &mut qtele_core::rng::Rng) -> Result<Ket> {
    let d = DimSpec::single(dim);
    Ok(match kind {
        "random" => haar_random_ket_with(dim, rng),
        "zero" => StateVector::basis(d, 0)?,
        "one" => StateVector::basis(d, 1)?,
        "plus" => StateVector::normalized(vec![Complex::new(1.0, 0.0); dim], d)?,
        other => bail!("--input: unknown input '{other}' (expected random, zero, one or plus)"),
    })
}

/// Echoed fields, cells, outcome, probability, fidelity.
type TrialRow = (Vec<String>, Vec<Cell>, usize, f64, f64);

pub fn teleport(args: &TeleportArgs, cfg: &RunConfig) -> Result<Report> {
    let p = protocol(args)?;
    // validate the input kind before fanning out
    teleport_input(&args.input, p.dim, &mut rng_from_seed(0))?;

    let trials: Vec<TrialRow> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_from_seed(child_seed(cfg.seed, t as u64));
            let psi = teleport_input(&args.input, p.dim, &mut rng)?;
            let branches = teleport_pure(&psi, &p.resource, &p.table, &p.basis)?;
            let exact: f64 = branches.iter().filter_map(|b| b.fidelity.map(|f| f * b.probability)).sum();
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let live: Vec<_> = branches.iter().filter(|b| b.output.is_some()).collect();
            let chosen = live
                .iter()
                .find(|b| {
                    acc += b.probability;
                    u < acc
                })
                .or(live.last())
                .ok_or_else(|| anyhow!("trial {t}: every branch has zero probability"))?;
            let out = chosen.output.as_ref().expect("live branch");
            let fid = chosen.fidelity.expect("live branch");
            let mut cols: Vec<String> =
                ["trial", "outcome_index", "outcome_label", "classical_bits", "probability", "fidelity", "branch_average_fidelity"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            let mut cells: Vec<Cell> = vec![
                t.into(),
                chosen.outcome.index.into(),
                chosen.outcome.label.clone().into(),
                chosen.outcome.classical_bits.into(),
                chosen.probability.into(),
                fid.into(),
                exact.into(),
            ];
            complex_cells("in", psi.amplitudes(), &mut cols, &mut cells);
            complex_cells("out", out.amplitudes(), &mut cols, &mut cells);
            Ok((cols, cells, chosen.outcome.index, chosen.probability, fid))
        })
        .collect::<Result<_>>()?;

    let mut r = Report::new("teleport", &cfg.invocation, cfg.seed);
    r.config("resource", args.resource.as_str());
    r.config("table", args.table.as_str());
    r.config("input", args.input.as_str());
    r.config("trials", cfg.trials);
    r.config("basis", p.basis.description());
    match trials.first() {
        Some((cols, ..)) => r.columns = cols.clone(),
        None => r.columns(&["trial"]),
    }
    let mut fids = Vec::with_capacity(trials.len());
    let mut probs = Vec::with_capacity(trials.len());
    let mut outcomes = Vec::with_capacity(trials.len());
    for (_, cells, k, prob, fid) in trials {
        r.row(cells);
        fids.push(fid);
        probs.push(prob);
        outcomes.push(k);
    }
    r.summarize("fidelity", &fids);
    r.summarize("probability", &probs);
    for k in 0..p.basis.len() {
        let hits: Vec<f64> = outcomes.iter().map(|&o| if o == k { 1.0 } else { 0.0 }).collect();
        r.summarize(&format!("outcome_{}", p.basis.label(k)), &hits);
    }
    Ok(r)
}

#[derive(Debug, Args)]
pub struct Example1Args {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Imaginary part of alpha.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub alpha_im: f64,
    /// Imaginary part of beta.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta_im: f64,
}

pub fn example1(args: &Example1Args, cfg: &RunConfig) -> Result<Report> {
    let alpha = Complex::new(args.alpha, args.alpha_im);
    let beta = Complex::new(args.beta, args.beta_im);
    let rep = example1_scenario(alpha, beta).context("--alpha/--beta")?;
    let mut r = Report::new("example1", &cfg.invocation, cfg.seed);
    r.config("alpha", format!("{}{:+}i", args.alpha, args.alpha_im));
    r.config("beta", format!("{}{:+}i", args.beta, args.beta_im));
    r.config("resource", "phi_plus");
    r.config("table", "singlet");
    let mut cols: Vec<String> = ["outcome_label", "probability", "fidelity", "re_overlap", "im_overlap", "real_amplitudes"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut cells: Vec<Cell> = vec![
        rep.record.outcome.label.clone().into(),
        rep.record.outcome_probability.into(),
        rep.fidelity.into(),
        rep.overlap.re.into(),
        rep.overlap.im.into(),
        rep.real_amplitudes.into(),
    ];
    complex_cells("out", rep.output_state.amplitudes(), &mut cols, &mut cells);
    complex_cells("expected", rep.expected_state.amplitudes(), &mut cols, &mut cells);
    r.columns = cols;
    r.row(cells);
    r.extra.insert("outcome".into(), serde_json::to_value(&rep.record.outcome)?);
    r.extra.insert("outcome_probability".into(), float_json(rep.record.outcome_probability));
    r.extra.insert("output_state".into(), serde_json::to_value(VectorJson::from_state(&rep.output_state))?);
    r.extra.insert("expected_state".into(), serde_json::to_value(VectorJson::from_state(&rep.expected_state))?);
    r.extra.insert("fidelity".into(), float_json(rep.fidelity));
    r.extra.insert("overlap".into(), json!({ "re": rep.overlap.re, "im": rep.overlap.im }));
    r.extra.insert("real_amplitudes".into(), json!(rep.real_amplitudes));
    r.summarize("fidelity", &[rep.fidelity]);
    Ok(r)
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// A Bell label, generalized_bell:N, partially_entangled:p, werner:F or haar:A,B (seeded).
    #[arg(long)]
    pub state: String,
}

enum Named {
    Pure(Ket),
    Mixed(Density),
}

fn named_state(spec: &str, seed: u64) -> Result<Named> {
    let flag = "--state";
    let (head, param) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match head {
        "generalized_bell" => Named::Pure(generalized_bell(parse_param(param, flag)?, 0, 0).context(flag)?),
        "partially_entangled" => Named::Pure(partially_entangled(parse_param(param, flag)?).context(flag)?),
        "werner" => Named::Mixed(werner_state(parse_param(param, flag)?).context(flag)?),
        "haar" => {
            let (a, b) = param.split_once(',').ok_or_else(|| anyhow!("{flag}: expected haar:A,B"))?;
            let (a, b): (usize, usize) = (parse_param(a, flag)?, parse_param(b, flag)?);
            if a == 0 || b == 0 {
                bail!("{flag}: dimensions must be positive");
            }
            let psi = haar_random_ket::<f64>(a * b, seed);
            Named::Pure(StateVector::new(psi.into_amplitudes(), DimSpec::bipartite(a, b))?)
        }
        _ => Named::Pure(bell_state(spec.parse().context(flag)?)),
    })
}

pub fn entropy(args: &EntropyArgs, cfg: &RunConfig) -> Result<Report> {
    let state = named_state(&args.state, cfg.seed)?;
    let (rho, pure_e) = match &state {
        Named::Pure(psi) => (psi.density(), Some(pure_entanglement(psi)?)),
        Named::Mixed(rho) => (rho.clone(), None),
    };
    let total = rho.entropy()?;
    let ea = rho.partial_trace(&[0])?.entropy()?;
    let eb = rho.partial_trace(&[1])?.entropy()?;
    let dims: Vec<String> = rho.dims().dims().iter().map(|d| d.to_string()).collect();

    let mut r = Report::new("entropy", &cfg.invocation, cfg.seed);
    r.config("state", args.state.as_str());
    r.columns(&["state", "dims", "pure", "entanglement_entropy", "von_neumann_entropy", "reduced_entropy_a", "reduced_entropy_b"]);
    r.row(vec![
        args.state.as_str().into(),
        dims.join("x").into(),
        pure_e.is_some().into(),
        pure_e.unwrap_or(f64::NAN).into(),
        total.into(),
        ea.into(),
        eb.into(),
    ]);
    r.extra.insert("entanglement_entropy".into(), pure_e.map_or(Value::Null, float_json));
    if let Some(e) = pure_e {
        r.summarize("entanglement_entropy", &[e]);
    }
    r.summarize("von_neumann_entropy", &[total]);
    Ok(r)
}

#[derive(Debug, Args)]
pub struct EofArgs {
    /// Werner fidelity F.
    #[arg(long)]
    pub werner: f64,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Cap on refinement sweeps per restart.
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    /// Smallest rotation angle tried.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Ensemble size (default rank squared).
    #[arg(long)]
    pub ensemble_size: Option<usize>,
}

pub fn eof(args: &EofArgs, cfg: &RunConfig) -> Result<Report> {
    let rho = werner_state(args.werner).context("--werner")?;
    let config = EofConfig {
        ensemble_size: args.ensemble_size,
        restarts: args.restarts,
        max_iters: args.max_iters,
        tol: args.tol,
        seed: cfg.seed,
    };
    let res = entanglement_of_formation(&rho, &config).context("--restarts/--ensemble-size/--tol")?;
    let oracle = concurrence_oracle_2q(&rho)?;
    let hashing = hashing_rate(&rho)?;

    let mut r = Report::new("eof", &cfg.invocation, cfg.seed);
    r.config("werner", args.werner);
    r.config("restarts", args.restarts);
    r.config("max_iters", args.max_iters);
    r.config("tol", args.tol);
    let mut entropies = Vec::new();
    for (i, (p, psi)) in res.best_ensemble.members().iter().enumerate() {
        let e = pure_entanglement(psi)?;
        entropies.push(e);
        let mut cols: Vec<String> = ["member", "probability", "entanglement_entropy"].iter().map(|s| s.to_string()).collect();
        let mut cells: Vec<Cell> = vec![i.into(), (*p).into(), e.into()];
        complex_cells("amp", psi.amplitudes(), &mut cols, &mut cells);
        r.columns = cols;
        r.row(cells);
    }
    r.summarize("member_entanglement_entropy", &entropies);
    r.summarize("entanglement_of_formation", &[res.value]);
    r.summarize("concurrence_oracle", &[oracle]);
    r.summarize("hashing_rate", &[hashing]);
    r.extra.insert("entanglement_of_formation".into(), float_json(res.value));
    r.extra.insert("concurrence_oracle".into(), float_json(oracle));
    r.extra.insert("hashing_rate".into(), float_json(hashing));
    r.extra.insert("converged".into(), json!(res.converged));
    r.extra.insert("best_restart".into(), json!(res.best_restart));
    r.extra.insert("restarts_used".into(), json!(res.restarts_used));
    Ok(r)
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["werner", "pure"])))]
pub struct DistillArgs {
    /// Werner fidelity F (recurrence protocol).
    #[arg(long)]
    pub werner: Option<f64>,
    /// Target fidelity for the recurrence protocol.
    #[arg(long, default_value_t = 0.99, requires = "werner")]
    pub target: f64,
    /// Schmidt weight p of the pure pairs (concentration).
    #[arg(long)]
    pub pure: Option<f64>,
    /// Input copies.
    #[arg(long, default_value_t = 1 << 20)]
    pub copies: u64,
}

pub fn distill(args: &DistillArgs, cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("distill", &cfg.invocation, cfg.seed);
    r.config("copies", Cell::Int(args.copies as i64));
    let report = if let Some(f) = args.werner {
        r.config("werner", f);
        r.config("target", args.target);
        let report = recurrence_distill(f, args.target, args.copies).context("--werner/--target/--copies")?;
        r.columns(&["round", "fidelity", "success_probability", "cumulative_yield"]);
        let (mut fid, mut y) = (f, 1.0);
        r.row(vec![0usize.into(), fid.into(), 1.0.into(), y.into()]);
        for round in 1..=report.rounds.min(MAX_ROUNDS) {
            let (next, p) = recurrence_round(fid)?;
            fid = next;
            y *= p / 2.0;
            r.row(vec![round.into(), fid.into(), p.into(), y.into()]);
        }
        report
    } else {
        let p = args.pure.expect("clap requires one source");
        r.config("pure", p);
        let report = concentrate_pure(p, args.copies).context("--pure/--copies")?;
        let h = if (0.0..=1.0).contains(&p) { shannon_bits(&[p, 1.0 - p]) } else { f64::NAN };
        r.columns(&["copies", "ebit_yield", "entropy_limit", "gap"]);
        r.row(vec![Cell::Int(args.copies as i64), report.ebit_yield.into(), h.into(), (h - report.ebit_yield).into()]);
        report
    };
    r.summarize("ebit_yield", &[report.ebit_yield]);
    r.summarize("output_fidelity", &[report.output_fidelity]);
    r.extra.insert("report".into(), serde_json::to_value(&report)?);
    Ok(r)
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Dimension of the teleported state.
    #[arg(long)]
    pub n: usize,
    /// Dimension of each half of the resource.
    #[arg(long)]
    pub m: usize,
    /// Optimizer restarts.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    /// Ascent steps per restart.
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,
}

pub fn audit(args: &AuditArgs, cfg: &RunConfig) -> Result<Report> {
    let config = AuditConfig {
        n: args.n,
        m: args.m,
        trials: cfg.trials,
        budget: AuditBudget { restarts: args.budget, iterations: args.iterations },
        seed: cfg.seed,
    };
    let rep = dimension_audit::<f64>(&config).context("--n/--m/--budget")?;
    let mut r = Report::new("audit", &cfg.invocation, cfg.seed);
    r.config("n", args.n);
    r.config("m", args.m);
    r.config("budget", args.budget);
    r.config("iterations", args.iterations);
    r.config("trials", cfg.trials);
    r.config("basis", rep.basis_description.as_str());
    r.columns(&["outcome_index", "contribution", "source_restart"]);
    for (k, (&c, &src)) in rep.per_outcome.iter().zip(&rep.source_restart).enumerate() {
        r.row(vec![k.into(), c.into(), src.into()]);
    }
    r.summarize("contribution", &rep.per_outcome);
    r.summarize("best_average_fidelity", &[rep.best_average_fidelity]);
    r.summarize("sampled_average_fidelity", &[rep.sampled_average_fidelity]);
    r.extra.insert("best_average_fidelity".into(), float_json(rep.best_average_fidelity));
    r.extra.insert("sampled_average_fidelity".into(), float_json(rep.sampled_average_fidelity));
    r.extra.insert("converged".into(), json!(rep.converged));
    r.extra.insert("aux".into(), json!(rep.aux));
    r.extra.insert("corrections".into(), Value::Array(rep.corrections.entries().iter().map(matrix_json).collect()));
    Ok(r)
}

#[derive(Debug, Args)]
pub struct Theorem3Args {
    /// Werner fidelity F.
    #[arg(long)]
    pub werner: f64,
    /// one_way, two_way or both.
    #[arg(long, default_value = "both")]
    pub direction: String,
}

pub fn theorem3(args: &Theorem3Args, cfg: &RunConfig) -> Result<Report> {
    let directions = match args.direction.as_str() {
        "both" => vec![Direction::OneWay, Direction::TwoWay],
        d => vec![d.parse::<Direction>().context("--direction")?],
    };
    let mut r = Report::new("theorem3", &cfg.invocation, cfg.seed);
    r.config("werner", args.werner);
    r.config("direction", args.direction.as_str());
    r.columns(&["direction", "leg", "protocol", "rate", "fidelity", "faithful"]);
    let mut experiments = Vec::new();
    let mut gaps = Vec::new();
    for d in directions {
        let e = theorem3_experiment(args.werner, d).context("--werner")?;
        let faithful = |f: f64| f >= qtele_core::distill::FAITHFUL_THRESHOLD;
        let protocol = e.d_estimate.protocol.to_string();
        r.row(vec![d.to_string().into(), "distill".into(), protocol.clone().into(), e.d_estimate.ebit_yield.into(), e.d_estimate.output_fidelity.into(), faithful(e.d_estimate.output_fidelity).into()]);
        r.row(vec![d.to_string().into(), "teleport".into(), protocol.clone().into(), e.t_estimate.qubits_per_copy.into(), e.t_estimate.achieved_fidelity.into(), faithful(e.t_estimate.achieved_fidelity).into()]);
        r.row(vec![d.to_string().into(), "redistribute".into(), protocol.into(), e.d_from_t.ebit_yield.into(), e.d_from_t.output_fidelity.into(), faithful(e.d_from_t.output_fidelity).into()]);
        gaps.push((e.t_estimate.qubits_per_copy - e.d_estimate.ebit_yield).abs());
        gaps.push((e.d_from_t.ebit_yield - e.t_estimate.qubits_per_copy).abs());
        experiments.push(serde_json::to_value(&e)?);
    }
    r.summarize("rate_gap", &gaps);
    r.extra.insert("experiments".into(), Value::Array(experiments));
    Ok(r)
}
