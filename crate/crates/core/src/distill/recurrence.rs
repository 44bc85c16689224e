use super::report::{DistillReport, Protocol};
use crate::error::{arg, Error, Result};

/// Round cap for [`recurrence_distill`].
pub const MAX_ROUNDS: usize = 1000;

/// One round of the two-way recurrence protocol on Werner pairs: two pairs,
/// bilateral CNOT, measure the target pair, keep the source on agreement,
/// then twirl back to Werner form. Returns `(F', success probability)`.
///
/// With `B = (1 − F)/3`: `p = F² + 2FB + 5B²` and `F' = (F² + B²)/p`.
pub fn recurrence_round(fidelity: f64) -> Result<(f64, f64)> {
    if !(fidelity <= 1.0) {
        return arg(format!("fidelity {fidelity} outside [0, 1]"));
    }
    if !(fidelity > 0.5) {
        return Err(Error::NotDistillable(fidelity));
    }
    let b = (1.0 - fidelity) / 3.0;
    let p = fidelity * fidelity + 2.0 * fidelity * b + 5.0 * b * b;
    let next = (fidelity * fidelity + b * b) / p;
    Ok((next.min(1.0), p))
}

/// Iterates [`recurrence_round`] until the fidelity reaches `target`.
///
/// Each round consumes two pairs per attempt, so the expected yield is
/// `Π pᵢ/2`. The run is `converged` when the target is reached within
/// [`MAX_ROUNDS`] and at least one output pair is expected from `copies`.
pub fn recurrence_distill(initial: f64, target: f64, copies: u64) -> Result<DistillReport> {
    if !(target < 1.0) {
        return arg(format!("target fidelity {target} must be below 1"));
    }
    if copies == 0 {
        return arg("at least one input copy is required");
    }
    let mut fidelity = initial;
    let mut ebit_yield = 1.0;
    let mut rounds = 0;
    if !(initial > 0.5 && initial <= 1.0) {
        recurrence_round(initial)?;
    }
    while fidelity < target && rounds < MAX_ROUNDS {
        let (next, p) = recurrence_round(fidelity)?;
        fidelity = next;
        ebit_yield *= p / 2.0;
        rounds += 1;
    }
    let output_pairs = copies as f64 * ebit_yield;
    Ok(DistillReport {
        protocol: Protocol::RecurrenceTwoWay,
        input_copies: copies,
        output_pairs,
        output_fidelity: fidelity,
        ebit_yield,
        rounds,
        converged: fidelity >= target && output_pairs >= 1.0,
    })
}
