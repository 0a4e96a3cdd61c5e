//! Scenario runner behind the `nullstrat` binary. Each scenario recomputes a
//! family of exact claims and emits one certificate per claim.

mod certificate;
mod module_spec;
mod scenarios;

use serde::Serialize;
use thiserror::Error;

pub use certificate::{input_hash, Certificate, Recorder, RunReport, Summary};
pub use module_spec::{parse_group, parse_module};
pub use nullstrat_core::Verdict;
pub use scenarios::{registry, ScenarioInfo};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown scenario `{0}` (see `nullstrat list`)")]
    UnknownScenario(String),
    #[error("malformed parameter: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] nullstrat_core::Error),
}

/// Scenario inputs. Every scenario reads the fields it needs and ignores the
/// rest; all of them enter the input hash.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub seed: u64,
    pub prime: u64,
    pub max_degree: usize,
    pub group: Option<String>,
    pub module: Option<String>,
    pub degree: Option<u32>,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 1, prime: 10007, max_degree: nullstrat_core::strata::DEFAULT_MAX_DEGREE, group: None, module: None, degree: None }
    }
}

/// Runs one registered scenario.
pub fn run(name: &str, params: &Params) -> Result<RunReport, CliError> {
    let info = registry().iter().find(|s| s.name == name).ok_or_else(|| CliError::UnknownScenario(name.to_string()))?;
    let hash = input_hash(info.name, params);
    let mut rec = Recorder::new(hash.clone(), info.randomized.then_some(params.seed));
    (info.run)(params, &mut rec)?;
    Ok(RunReport::new(info.name, params, hash, rec.finish()))
}

/// 0 when everything passes, 1 on any failure, 2 when something is
/// undetermined and nothing failed.
pub fn exit_code(certs: &[Certificate]) -> i32 {
    if certs.iter().any(|c| c.verdict == Verdict::Fail) {
        1
    } else if certs.iter().any(|c| c.verdict == Verdict::Undetermined) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario_is_an_error() {
        assert!(matches!(run("nope", &Params::default()), Err(CliError::UnknownScenario(_))));
    }

    #[test]
    fn exit_codes() {
        let mut rec = Recorder::new("h".into(), None);
        rec.check("a", "x", 1, 1);
        rec.info("b", "x", 2);
        assert_eq!(exit_code(&rec.finish()), 0);
        let mut rec = Recorder::new("h".into(), None);
        rec.check("a", "x", 1, 1);
        rec.probe("b", "x", 1, 2);
        assert_eq!(exit_code(&rec.finish()), 2);
        let mut rec = Recorder::new("h".into(), None);
        rec.probe("a", "x", 1, 2);
        rec.check("b", "x", 1, 2);
        assert_eq!(exit_code(&rec.finish()), 1);
    }
}
