use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    RecurrenceTwoWay,
    HashingOneWay,
    ConcentrationPure,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::RecurrenceTwoWay => "recurrence_two_way",
            Protocol::HashingOneWay => "hashing_one_way",
            Protocol::ConcentrationPure => "concentration_pure",
        })
    }
}

/// Expected-value account of a distillation run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistillReport {
    pub protocol: Protocol,
    pub input_copies: u64,
    /// Expected number of output pairs.
    pub output_pairs: f64,
    pub output_fidelity: f64,
    /// Output ebits per input copy.
    pub ebit_yield: f64,
    pub rounds: usize,
    pub converged: bool,
}
