mod geometry;
mod ledgers;
mod operators;
mod rationality;

use serde::Serialize;

use crate::certificate::Recorder;
use crate::{CliError, Params};

pub type RunFn = fn(&Params, &mut Recorder) -> Result<(), CliError>;

#[derive(Clone, Copy, Serialize)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Whether the seed enters any computation.
    pub randomized: bool,
    #[serde(skip)]
    pub run: RunFn,
}

impl std::fmt::Debug for ScenarioInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScenarioInfo").field("name", &self.name).field("randomized", &self.randomized).finish()
    }
}

const REGISTRY: &[ScenarioInfo] = &[
    ScenarioInfo { name: "dims", summary: "Weyl dimensions behind the degree-34 construction and the seven-point space", randomized: false, run: rationality::dims },
    ScenarioInfo { name: "v34", summary: "rank of mu(., f) over F_p, the linear fiber system and the Grassmannian clauses", randomized: true, run: rationality::v34 },
    ScenarioInfo { name: "seven-points", summary: "psi, beta and the kernel dimensions (1, 7, 4) at the special point", randomized: true, run: operators::seven_points },
    ScenarioInfo { name: "nullcone", summary: "stratifying-candidate sweep (--group, --module; default SL3 on V(0,4))", randomized: false, run: geometry::nullcone },
    ScenarioInfo { name: "strata-examples", summary: "parabolic data of the two-form and double-bundle strata", randomized: false, run: geometry::strata_examples },
    ScenarioInfo { name: "two-form-theta", summary: "ranks and kernels of the two-form witnesses", randomized: false, run: ledgers::two_form_theta },
    ScenarioInfo { name: "theta-ledger", summary: "dimension identities of the theta reduction for odd d in 5..99 (or --degree)", randomized: false, run: ledgers::theta },
    ScenarioInfo { name: "double-bundle-search", summary: "double bundle candidates for V(0,34) (or --module) with w_max 2, dim cap 640", randomized: false, run: rationality::double_bundle },
    ScenarioInfo { name: "binary-forms", summary: "instability of binary forms and the SL2 strata of Sym^d for d <= 8", randomized: false, run: geometry::binary_forms },
    ScenarioInfo { name: "torbit", summary: "face lattices and min-norm points of small weight sets", randomized: false, run: geometry::torbit },
    ScenarioInfo { name: "zero-loci", summary: "c2 of twisted tangent bundles of P2 (k = 0..3 or --degree)", randomized: false, run: ledgers::zero_loci },
    ScenarioInfo { name: "covariants", summary: "covariant method dimension ledger (--degree, default 37, 40, 65, 68)", randomized: false, run: ledgers::covariants },
];

/// Registered scenarios in a fixed order.
pub fn registry() -> &'static [ScenarioInfo] {
    REGISTRY
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_include_builtins() {
        let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for n in ["v34", "seven-points", "nullcone", "two-form-theta", "double-bundle-search", "binary-forms", "theta-ledger", "torbit"] {
            assert!(names.contains(&n), "{n}");
        }
    }
}
