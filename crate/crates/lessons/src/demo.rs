use qana_core::algorithms::{
    compare_factor, compare_search, eavesdrop_demo, grover_search, linear_search, qft_period_demo, shor_factor,
    trial_division, AlgorithmResult, ShorMode,
};
use qana_core::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// A named algorithm operation plus its parameters, as written in lesson
/// files. Kept loosely typed so unknown operations surface as catalog
/// violations instead of load failures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoRef {
    pub operation: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "operation", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum DemoCall {
    #[serde(rename_all = "snake_case")]
    Grover { n: u64, marked: u64, #[serde(default)] iterations: Option<u64> },
    Shor { n: u64, mode: ShorMode },
    QftPeriod { num_qubits: usize, period: u64 },
    Eavesdrop { qubits: u64, intercept: bool },
    CompareSearch { n: u64 },
    CompareFactor { n: u64 },
    LinearSearch { n: u64, target: u64 },
    TrialDivision { n: u64 },
}

pub const DEMO_OPERATIONS: &[&str] = &[
    "grover",
    "shor",
    "qft_period",
    "eavesdrop",
    "compare_search",
    "compare_factor",
    "linear_search",
    "trial_division",
];

impl DemoRef {
    pub fn resolve(&self) -> Result<DemoCall, String> {
        if !DEMO_OPERATIONS.contains(&self.operation.as_str()) {
            return Err(format!("unknown demo operation `{}`", self.operation));
        }
        let value = serde_json::json!({ "operation": self.operation, "params": self.params });
        serde_json::from_value(value).map_err(|e| format!("bad parameters for `{}`: {e}", self.operation))
    }
}

impl DemoCall {
    /// Runs the operation and returns its report as JSON.
    pub fn run(&self, seed: u64) -> AlgorithmResult<Value> {
        let mut rng = Rng::seeded(seed);
        let v = match *self {
            DemoCall::Grover { n, marked, iterations } => to_json(grover_search(n, marked, iterations)?),
            DemoCall::Shor { n, mode } => to_json(shor_factor(n, mode, &mut rng)?),
            DemoCall::QftPeriod { num_qubits, period } => to_json(qft_period_demo(num_qubits, period)?),
            DemoCall::Eavesdrop { qubits, intercept } => to_json(eavesdrop_demo(qubits, intercept, &mut rng)?),
            DemoCall::CompareSearch { n } => to_json(compare_search(n)?),
            DemoCall::CompareFactor { n } => to_json(compare_factor(n, &mut rng)?),
            DemoCall::LinearSearch { n, target } => to_json(linear_search(n, target, &mut rng)?),
            DemoCall::TrialDivision { n } => to_json(trial_division(n)?),
        };
        Ok(v)
    }
}

fn to_json<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn demo(v: Value) -> DemoRef {
        serde_json::from_value(v).unwrap()
    }

    #[test]
    fn resolves_known_operations() {
        let d = demo(json!({"operation": "shor", "params": {"n": 143, "mode": "hybrid"}}));
        assert_eq!(d.resolve().unwrap(), DemoCall::Shor { n: 143, mode: ShorMode::Hybrid });
        let g = demo(json!({"operation": "grover", "params": {"n": 4, "marked": 3}}));
        assert_eq!(g.resolve().unwrap(), DemoCall::Grover { n: 4, marked: 3, iterations: None });
    }

    #[test]
    fn rejects_unknown_operation_and_bad_shapes() {
        let d = demo(json!({"operation": "deutsch_jozsa"}));
        assert!(d.resolve().unwrap_err().contains("unknown demo operation"));
        let d = demo(json!({"operation": "grover", "params": {"n": "four", "marked": 3}}));
        assert!(d.resolve().unwrap_err().contains("bad parameters"));
        let d = demo(json!({"operation": "trial_division", "params": {"n": 143, "extra": 1}}));
        assert!(d.resolve().is_err());
        let d = demo(json!({"operation": "shor", "params": {"n": 15, "mode": "magic"}}));
        assert!(d.resolve().is_err());
    }

    #[test]
    fn runs_reports() {
        let r = DemoCall::TrialDivision { n: 143 }.run(0).unwrap();
        assert_eq!(r["factors"], json!([11, 13]));
        let r = DemoCall::Grover { n: 4, marked: 3, iterations: None }.run(0).unwrap();
        assert!((r["final_success_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}
