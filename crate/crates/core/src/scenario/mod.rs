//! Game scenarios: state preparation, measurement and relation checks over
//! any registered algebra kind.

pub mod algebra;
pub mod kinds;
pub mod measure;
pub mod params;
pub mod registry;
pub mod verify;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{GameError, Result};
use crate::space::{prepare_state, GameState};

pub use algebra::{canonical_operator_name, PayoffAlgebra, RelationSet, Signature};
pub use measure::{measure, MeasurementReport, OperatorStats, PairStats, ReportContext, SpectralWeight};
pub use params::{AlgebraParams, KappaValue, NmaxValue, PayoffSpec};
pub use registry::{AlgebraKind, AlgebraRegistry};
pub use verify::{verify_algebra, NamedOperator, Relation, RelationCheck, Term, VerificationReport};

/// Tolerance used when a scenario does not set one.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Report fields that may be requested in `outputs`.
pub const OUTPUT_FIELDS: [&str; 8] = [
    "expectation",
    "variance",
    "distribution",
    "covariance",
    "correlation",
    "commutator_expectation",
    "uncertainty_product",
    "robertson_bound",
];

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeSpec {
    pub label: String,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub algebra: String,
    #[serde(default)]
    pub params: AlgebraParams,
    pub state: Vec<AmplitudeSpec>,
    /// Report fields to emit; empty means all.
    #[serde(default)]
    pub outputs: Vec<String>,
    /// Relation-set names to verify.
    #[serde(default)]
    pub checks: Vec<String>,
    /// Operators to measure; defaults to the algebra's payoffs.
    #[serde(default)]
    pub operators: Option<Vec<String>>,
    #[serde(default)]
    pub tol: Option<f64>,
}

impl Scenario {
    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    /// Requested output fields, or every field when none were named.
    pub fn output_fields(&self) -> Vec<&str> {
        if self.outputs.is_empty() {
            OUTPUT_FIELDS.to_vec()
        } else {
            self.outputs.iter().map(String::as_str).collect()
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(bad) = self.outputs.iter().find(|o| !OUTPUT_FIELDS.contains(&o.as_str())) {
            return Err(GameError::Params(format!(
                "unknown output field '{bad}' (known: {})",
                OUTPUT_FIELDS.join(", ")
            )));
        }
        let tol = self.tolerance();
        if !(tol.is_finite() && tol > 0.0) {
            return Err(GameError::Params(format!("tol must be positive and finite, got {tol}")));
        }
        if let Some(bad) = self.state.iter().find(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(GameError::Params(format!("amplitude for '{}' is not finite", bad.label)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub algebra: PayoffAlgebra,
    pub state: GameState,
    pub report: MeasurementReport,
    pub checks: Vec<(String, VerificationReport)>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.passed())
    }
}

/// Builds the algebra, prepares the state, measures and runs the requested checks.
///
/// States with weight outside the exact interior are rejected.
pub fn run_scenario(registry: &AlgebraRegistry, scenario: &Scenario) -> Result<ScenarioOutcome> {
    scenario.validate()?;
    let tol = scenario.tolerance();
    let algebra = registry.build(&scenario.algebra, &scenario.params)?;
    let spec: Vec<(String, Complex64)> = scenario
        .state
        .iter()
        .map(|a| (a.label.clone(), Complex64::new(a.re, a.im)))
        .collect();
    let state = prepare_state(&algebra.space, &spec)?;
    state.check_interior(algebra.space.interior())?;

    let names: Vec<String> = match &scenario.operators {
        Some(list) => list.iter().map(|n| canonical_operator_name(n)).collect(),
        None => algebra.payoffs.clone(),
    };
    let mut selected = Vec::with_capacity(names.len());
    for name in &names {
        selected.push((name.as_str(), algebra.operator(name)?));
    }
    let report = measure(&algebra.space, &state, &selected, tol)?;

    let mut checks = Vec::with_capacity(scenario.checks.len());
    for name in &scenario.checks {
        let set = algebra.relation_set(name)?;
        checks.push((name.clone(), algebra.verify(set, tol)?));
    }
    Ok(ScenarioOutcome {
        algebra,
        state,
        report,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(json: &str) -> Result<ScenarioOutcome> {
        let scenario: Scenario = serde_json::from_str(json).unwrap();
        run_scenario(&AlgebraRegistry::builtin(), &scenario)
    }

    #[test]
    fn vacuum_decay_game() {
        let out = run(r#"{"algebra": "fock", "params": {"nmax": 4}, "state": [{"label": "n=0", "re": 1}],
                          "checks": ["commutators"]}"#)
        .unwrap();
        let pair = out.report.pair("pi1", "pi2").unwrap();
        assert!(out.report.operator("pi1").unwrap().expectation.abs() < 1e-15);
        assert!((pair.uncertainty_product - 0.5).abs() < 1e-12);
        assert!((pair.robertson_bound - 0.5).abs() < 1e-12);
        assert!(out.passed());
    }

    #[test]
    fn doublet_eigenstate() {
        let out = run(r#"{"algebra": "su2", "params": {"kappa": "1/2"},
                          "state": [{"label": "κ=1/2,μ=1/2", "re": 1}], "operators": ["π₃"]}"#)
        .unwrap();
        let s = out.report.operator("pi3").unwrap();
        assert!((s.expectation - 0.5).abs() < 1e-15);
        assert!(s.variance < 1e-15);
    }

    #[test]
    fn leakage_is_truncation_error() {
        let err = run(r#"{"algebra": "fock", "params": {"nmax": 2}, "state": [{"label": "n=2", "re": 1}]}"#).unwrap_err();
        assert!(matches!(err, GameError::Truncation { .. }));
    }

    #[test]
    fn unknown_keys_and_fields() {
        assert!(serde_json::from_str::<Scenario>(r#"{"algbra": "fock", "state": []}"#).is_err());
        let err = run(r#"{"algebra": "fock", "params": {"nmax": 2}, "state": [{"label": "n=0", "re": 1}],
                          "outputs": ["mean"]}"#)
        .unwrap_err();
        assert!(matches!(err, GameError::Params(_)));
        let err = run(r#"{"algebra": "fock", "params": {"nmax": 2}, "state": [{"label": "n=0", "re": 1}],
                          "checks": ["jacobi"]}"#)
        .unwrap_err();
        assert!(matches!(err, GameError::Label(_)));
    }
}
