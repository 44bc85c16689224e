//! In-memory report model with CSV and JSON renderers.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_sig(*x),
            Cell::Text(s) => csv_escape(s),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) => float_json(*x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// `mean, min, max, count` of one metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub metric: String,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Summary {
    pub fn of(metric: impl Into<String>, values: &[f64]) -> Self {
        let count = values.len();
        let (mean, min, max) = if count == 0 {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            (
                values.iter().sum::<f64>() / count as f64,
                values.iter().copied().fold(f64::INFINITY, f64::min),
                values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        Self { metric: metric.into(), mean, min, max, count }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub invocation: String,
    pub seed: u64,
    pub config: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<Summary>,
    /// Structured results emitted at the top level of JSON reports.
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, invocation: &str, seed: u64) -> Self {
        Self { command: command.into(), invocation: invocation.into(), seed, ..Self::default() }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Cell>) {
        self.config.push((key.into(), value.into()));
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.columns = names.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn summarize(&mut self, metric: &str, values: &[f64]) {
        self.summary.push(Summary::of(metric, values));
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {} (seed {})\n", self.invocation, self.seed);
        if !self.config.is_empty() {
            let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={}", v.csv())).collect();
            out.push_str(&format!("# config: {}\n", cfg.join(" ")));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        if !self.summary.is_empty() {
            out.push('\n');
            out.push_str("metric,mean,min,max,count\n");
            for s in &self.summary {
                out.push_str(&format!("{},{},{},{},{}\n", csv_escape(&s.metric), fmt_sig(s.mean), fmt_sig(s.min), fmt_sig(s.max), s.count));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("invocation".into(), json!(self.invocation));
        top.insert("seed".into(), json!(self.seed));
        top.insert("config".into(), Value::Object(self.config.iter().map(|(k, v)| (k.clone(), v.json())).collect()));
        for (k, v) in &self.extra {
            top.insert(k.clone(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        let summary: Vec<Value> = self
            .summary
            .iter()
            .map(|s| json!({"metric": s.metric, "mean": float_json(s.mean), "min": float_json(s.min), "max": float_json(s.max), "count": s.count}))
            .collect();
        top.insert("summary".into(), Value::Array(summary));
        let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        text.push('\n');
        text
    }
}

/// JSON has no NaN or infinity; those become `null`.
pub fn float_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `%.12g`: twelve significant digits, trailing zeros removed.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.811278124459133), "0.811278124459");
        assert_eq!(fmt_sig(-0.8), "-0.8");
        assert_eq!(fmt_sig(1e-20), "1e-20");
        assert_eq!(fmt_sig(1.5e15), "1.5e+15");
        assert_eq!(fmt_sig(9.9999999999999e-6), "1e-05");
        assert_eq!(fmt_sig(0.0001), "0.0001");
        assert_eq!(fmt_sig(123456789012.4), "123456789012");
        assert_eq!(fmt_sig(f64::NAN), "nan");
    }

    #[test]
    fn twelve_digits_round_trip_within_tolerance() {
        for x in [0.1234567890123456, 3.0f64.sqrt(), -2.0f64.ln(), 1.0 / 3.0] {
            let y: f64 = fmt_sig(x).parse().unwrap();
            assert!((x - y).abs() < 1e-11 * x.abs());
        }
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new("demo", "qtele demo --seed 3", 3);
        r.config("n", 2usize);
        r.columns(&["a", "b"]);
        r.row(vec![Cell::from(1usize), Cell::from("x,y")]);
        r.summarize("a", &[1.0, 3.0]);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# qtele demo --seed 3 (seed 3)");
        assert_eq!(lines[1], "# config: n=2");
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], "1,\"x,y\"");
        assert_eq!(lines[5], "metric,mean,min,max,count");
        assert_eq!(lines[6], "a,2,1,3,2");
    }

    #[test]
    fn json_layout() {
        let mut r = Report::new("demo", "qtele demo", 0);
        r.columns(&["f"]);
        r.row(vec![Cell::from(0.5)]);
        r.extra.insert("fidelity".into(), json!(0.0));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["rows"][0]["f"], json!(0.5));
        assert_eq!(v["fidelity"], json!(0.0));
        assert_eq!(v["seed"], json!(0));
    }
}
