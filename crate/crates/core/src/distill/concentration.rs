use super::report::{DistillReport, Protocol};
use crate::error::{arg, Result};

/// Schmidt-projection concentration of `n` copies of `√p|00⟩ + √(1−p)|11⟩`.
///
/// Measuring the number `k` of `|11⟩` factors leaves a maximally entangled
/// state of Schmidt rank `C(n, k)`, so the expected ebits are
/// `Σₖ C(n,k) pⁿ⁻ᵏ(1−p)ᵏ log₂C(n,k)`. At `p = 1/2` every type class shares
/// one Schmidt coefficient, the classes merge and the yield is exactly 1.
/// Evaluated with log-binomials; no `2ⁿ`-dimensional state is formed.
pub fn concentrate_pure(p: f64, copies: u64) -> Result<DistillReport> {
    if !(0.0..=1.0).contains(&p) {
        return arg(format!("Schmidt weight {p} outside [0, 1]"));
    }
    if copies == 0 {
        return arg("at least one copy is required");
    }
    let n = copies;
    let expected = if p == 0.0 || p == 1.0 {
        0.0
    } else if (p - 0.5).abs() < 1e-12 {
        n as f64
    } else {
        let (lp, lq) = (p.ln(), (1.0 - p).ln());
        let mut ln_binom = 0.0f64;
        let mut total = 0.0;
        for k in 0..=n {
            if k > 0 {
                ln_binom += ((n - k + 1) as f64).ln() - (k as f64).ln();
            }
            let prob = (ln_binom + k as f64 * lp + (n - k) as f64 * lq).exp();
            total += prob * ln_binom / std::f64::consts::LN_2;
        }
        total
    };
    Ok(DistillReport {
        protocol: Protocol::ConcentrationPure,
        input_copies: n,
        output_pairs: expected,
        output_fidelity: 1.0,
        ebit_yield: expected / n as f64,
        rounds: 1,
        converged: true,
    })
}
