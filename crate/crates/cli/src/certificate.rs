use std::time::Instant;

use nullstrat_core::methods::LedgerReport;
use nullstrat_core::Verdict;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Params, SCHEMA};

/// One named claim with its exact expected and computed values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub schema: u32,
    pub claim: String,
    pub anchor: String,
    pub expected: Value,
    pub computed: Value,
    pub verdict: Verdict,
    pub runtime_ms: u64,
    pub input_hash: String,
    pub seed: Option<u64>,
}

/// sha256 of the canonical JSON of the scenario name and parameters.
pub fn input_hash(scenario: &str, params: &Params) -> String {
    let canonical = json!({ "scenario": scenario, "params": params }).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("certificate values serialize")
}

/// Collects certificates; each one is charged the time elapsed since the
/// previous one was recorded.
#[derive(Debug)]
pub struct Recorder {
    input_hash: String,
    seed: Option<u64>,
    clock: Instant,
    certs: Vec<Certificate>,
}

impl Recorder {
    pub fn new(input_hash: String, seed: Option<u64>) -> Self {
        Recorder { input_hash, seed, clock: Instant::now(), certs: Vec::new() }
    }

    fn push(&mut self, claim: String, anchor: &str, expected: Value, computed: Value, verdict: Verdict) -> &mut Certificate {
        let runtime_ms = self.clock.elapsed().as_millis() as u64;
        self.certs.push(Certificate {
            schema: SCHEMA,
            claim,
            anchor: anchor.to_string(),
            expected,
            computed,
            verdict,
            runtime_ms,
            input_hash: self.input_hash.clone(),
            seed: None,
        });
        self.clock = Instant::now();
        self.certs.last_mut().expect("just pushed")
    }

    /// Pass iff `computed == expected`, fail otherwise.
    pub fn check<T: Serialize + PartialEq>(&mut self, claim: impl Into<String>, anchor: &str, expected: T, computed: T) -> &mut Certificate {
        let verdict = Verdict::from_bool(expected == computed);
        self.push(claim.into(), anchor, value(expected), value(computed), verdict)
    }

    /// For values read off at a random point or modulo a prime: agreement
    /// passes, disagreement is undetermined.
    pub fn probe<T: Serialize + PartialEq>(&mut self, claim: impl Into<String>, anchor: &str, expected: T, computed: T) -> &mut Certificate {
        let verdict = if expected == computed { Verdict::Pass } else { Verdict::Undetermined };
        let seed = self.seed;
        let cert = self.push(claim.into(), anchor, value(expected), value(computed), verdict);
        cert.seed = seed;
        cert
    }

    /// A value recorded without a claim.
    pub fn info<T: Serialize>(&mut self, claim: impl Into<String>, anchor: &str, computed: T) -> &mut Certificate {
        self.push(claim.into(), anchor, Value::Null, value(computed), Verdict::Info)
    }

    /// One certificate per ledger entry, claims prefixed by `prefix`.
    pub fn ledger(&mut self, prefix: &str, report: &LedgerReport) {
        for e in &report.entries {
            let claim = format!("{prefix}{}", e.name);
            self.push(claim, &e.anchor, Value::String(e.expected.clone()), Value::String(e.computed.clone()), e.verdict);
        }
    }

    /// The seed used by this scenario, attached to certificates built from
    /// seeded computations.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn finish(self) -> Vec<Certificate> {
        self.certs
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undetermined: usize,
    pub info: usize,
}

/// Everything one `run` produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub scenario: String,
    pub params: Params,
    pub input_hash: String,
    pub summary: Summary,
    pub exit_code: i32,
    pub certificates: Vec<Certificate>,
}

impl RunReport {
    pub fn new(scenario: &str, params: &Params, input_hash: String, certificates: Vec<Certificate>) -> Self {
        let mut summary = Summary::default();
        for c in &certificates {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Undetermined => summary.undetermined += 1,
                Verdict::Info => summary.info += 1,
            }
        }
        RunReport {
            schema: SCHEMA,
            scenario: scenario.to_string(),
            params: params.clone(),
            input_hash,
            summary,
            exit_code: crate::exit_code(&certificates),
            certificates,
        }
    }

    /// JSON with every `runtime_ms` zeroed, for reproducibility comparisons.
    pub fn without_runtimes(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.certificates {
            c.runtime_ms = 0;
        }
        r
    }

    pub fn certificate(&self, claim: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.claim == claim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_depends_on_inputs() {
        let p = Params::default();
        let q = Params { seed: 2, ..Params::default() };
        assert_eq!(input_hash("v34", &p), input_hash("v34", &p));
        assert_ne!(input_hash("v34", &p), input_hash("v34", &q));
        assert_ne!(input_hash("v34", &p), input_hash("dims", &p));
        assert_eq!(input_hash("v34", &p).len(), 64);
    }

    #[test]
    fn verdicts() {
        let mut rec = Recorder::new("h".into(), Some(7));
        assert_eq!(rec.check("a", "x", vec![1, 7, 4], vec![1, 7, 4]).verdict, Verdict::Pass);
        assert_eq!(rec.check("b", "x", "0", "1").verdict, Verdict::Fail);
        let c = rec.probe("c", "x", 253, 252);
        assert_eq!((c.verdict, c.seed), (Verdict::Undetermined, Some(7)));
        assert_eq!(rec.info("d", "x", 3).expected, Value::Null);
        let certs = rec.finish();
        let json = serde_json::to_value(&certs[0]).unwrap();
        assert_eq!(json["verdict"], "pass");
        assert_eq!(json["schema"], 1);
    }
}
