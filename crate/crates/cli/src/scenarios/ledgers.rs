use std::collections::BTreeMap;

use nullstrat_core::methods::{covariant_ledger, theta_ledger, two_form_check, zero_loci_ledger};
use nullstrat_core::tensorcalc::{iota, maximal_rank_kernel_vector, witness_d5, witness_kappa};
use nullstrat_core::{Field, IrrLabel, Rationals, Verdict};

use crate::certificate::Recorder;
use crate::{CliError, Params};

const TWO_FORM: &str = "two-form witnesses for the theta reduction";
const THETA: &str = "theta characteristics reduction";

/// `E = C^d (x) C^3` and `V = Sym^2(C^d)* (x) C^3` for `SL_d x SL_3`.
fn two_form_labels(d: usize) -> Result<(IrrLabel, IrrLabel), CliError> {
    let mut std = vec![0; d - 1];
    std[0] = 1;
    let mut sym2_dual = vec![0; d - 1];
    sym2_dual[d - 2] = 2;
    Ok((IrrLabel::from_factors(vec![std, vec![1, 0]])?, IrrLabel::from_factors(vec![sym2_dual, vec![1, 0]])?))
}

pub fn two_form_theta(_: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let form = iota(&Rationals, &witness_d5())?;
    rec.check("rank of iota(omega), d = 5", TWO_FORM, 14, form.rank());
    for d in [5, 7, 9, 11] {
        let form = iota(&Rationals, &witness_kappa(d)?)?;
        rec.check(format!("rank of iota(kappa), d = {d}"), TWO_FORM, 3 * d - 1, form.rank());
        let m: Vec<_> = maximal_rank_kernel_vector(d).into_iter().map(|x| Rationals.from_i64(x)).collect();
        let annihilated = form.to_matrix().mul_vec(&m).iter().all(|c| Rationals.is_zero(c));
        rec.check(format!("kernel of iota(kappa) is spanned by m, d = {d}"), TWO_FORM, (1, true), (form.kernel().len(), annihilated));
    }
    for d in [5, 7] {
        let (e, v) = two_form_labels(d)?;
        let r = two_form_check(&e, &v, Some(&witness_kappa(d)?))?;
        rec.check(format!("V occurs once in Ext^2 E*, d = {d}"), TWO_FORM, 1, r.multiplicity);
        rec.check(format!("two-form preconditions, d = {d}"), TWO_FORM, Verdict::Pass, r.verdict);
    }
    let r = theta_ledger(5)?;
    let get = |name: &str| r.entry(name).map(|e| e.computed.clone()).unwrap_or_default();
    rec.check("dim L, d = 5", THETA, "31".to_string(), get("dim L from Sym^3(C^d) / Sym^3(F)"));
    rec.check("summand selection of dimension dim L, d = 5", THETA, "[[9, 12, 10]]".to_string(), get("subsets of summands of dimension dim L"));
    Ok(())
}

/// One certificate per `d`: the ledger entries as name -> value maps.
pub fn theta(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let degrees: Vec<u32> = match p.degree {
        Some(d) => vec![d],
        None => (5..=99).step_by(2).collect(),
    };
    for d in degrees {
        let r = theta_ledger(d)?;
        let expected: BTreeMap<&str, &str> = r.entries.iter().map(|e| (e.name.as_str(), e.expected.as_str())).collect();
        let computed: BTreeMap<&str, &str> = r.entries.iter().map(|e| (e.name.as_str(), e.computed.as_str())).collect();
        rec.check(format!("theta ledger, d = {d}"), THETA, expected, computed);
    }
    Ok(())
}

pub fn zero_loci(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let ks: Vec<u32> = p.degree.map_or_else(|| (0..=3).collect(), |k| vec![k]);
    for k in ks {
        rec.ledger(&format!("k = {k}: "), &zero_loci_ledger(k)?);
    }
    Ok(())
}

pub fn covariants(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let ds: Vec<u32> = p.degree.map_or_else(|| vec![37, 40, 65, 68], |d| vec![d]);
    for d in ds {
        let r = covariant_ledger(d)?;
        rec.ledger(&format!("d = {d}: "), &r);
        for note in &r.notes {
            rec.info(format!("d = {d}: note"), &r.title, note);
        }
    }
    Ok(())
}
