use nullstrat_core::methods::{double_bundle_search, grassmannian_check};
use nullstrat_core::repchar::{tensor_multiplicity, weyl_dim};
use nullstrat_core::tensorcalc::v34_check;
use nullstrat_core::{IrrLabel, Verdict};

use crate::certificate::Recorder;
use crate::{CliError, Params};

const V34: &str = "rationality of P(V(0,34))/SL3";
const SEVEN: &str = "seven points in the plane";
const DOUBLE: &str = "double bundle method for V(0,34)";
const GRASS: &str = "stable rationality of Grassmannian quotients";

fn dim(a: u32, b: u32) -> u64 {
    weyl_dim(&IrrLabel::sl3(a, b))
}

pub fn dims(_: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    rec.check("dim V(14,1)", V34, 255, dim(14, 1));
    rec.check("dim V(0,21)", V34, 253, dim(0, 21));
    rec.check("dim V(1,2)", SEVEN, 15, dim(1, 2));
    rec.check("dim V(30,0) - dim V(0,4) - dim V(5,9)", DOUBLE, 1, dim(30, 0) as i64 - dim(0, 4) as i64 - dim(5, 9) as i64);
    rec.check("dim P(V(0,34))", V34, 629, dim(0, 34) - 1);
    rec.check("dim Grass(2, V(14,1))", V34, 506, 2 * (dim(14, 1) - 2));
    Ok(())
}

pub fn v34(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let (e, f, v) = (IrrLabel::sl3(14, 1), IrrLabel::sl3(0, 21), IrrLabel::sl3(0, 34));
    let (dim_e, dim_f, dim_pv) = (weyl_dim(&e), weyl_dim(&f), weyl_dim(&v) - 1);
    rec.check("dim V(14,1)", V34, 255, dim_e);
    rec.check("dim V(0,21)", V34, 253, dim_f);
    rec.check("dim P(V(0,34))", V34, 629, dim_pv);
    let grass = 2 * (dim_e - 2);
    rec.check("dim Grass(2, V(14,1))", V34, 506, grass);
    // Hom(E, F) = E* (x) F
    let mult = tensor_multiplicity(&v, &e.dual(), &f)?;
    rec.check("V(0,34) occurs in Hom(V(14,1), V(0,21))", V34, true, mult >= 1);

    let r = v34_check(p.prime, p.seed)?;
    rec.check("mu(., f) maps V(14,1) to V(0,21)", V34, (255, 253), (r.domain_dim, r.codomain_dim));
    rec.probe(format!("rank of mu(., f) over F_{}", p.prime), V34, 253, r.mu_rank);
    rec.probe("dim ker mu(., f)", V34, 2, r.kernel_dim);
    rec.probe("projective dimension of the linear fiber system", V34, 123, r.fiber_projective_dim);
    rec.check("dim P(V(0,34)) - dim Grass(2, V(14,1))", V34, 123, dim_pv as i64 - grass as i64);

    let g = grassmannian_check(&e, 2, 3, p.seed)?;
    let holds = |v: Verdict| v == Verdict::Pass;
    rec.check("center of SL3 acts non-trivially on V(14,1)", GRASS, true, holds(g.center_generates));
    rec.check("k + dim SL3 < dim V(14,1) for k = 2", GRASS, true, holds(g.k_in_range));
    rec.check("3 does not divide k = 2", GRASS, true, holds(g.p_does_not_divide_k));
    rec.probe(
        format!("Lie stabilizers (affine, projective) at a random point over F_{}", g.probe_prime),
        GRASS,
        (Some(0), Some(0)),
        (g.affine_stabilizer, g.projective_stabilizer),
    );
    rec.info("trivial generic finite stabilizer", GRASS, g.finite_stabilizer);
    Ok(())
}

pub fn double_bundle(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let v: IrrLabel = match &p.module {
        Some(m) => m.parse().map_err(|e| CliError::Malformed(format!("module `{m}`: {e}")))?,
        None => IrrLabel::sl3(0, 34),
    };
    let found = double_bundle_search(&v, 2, 640)?;
    if v != IrrLabel::sl3(0, 34) {
        rec.info(format!("double bundle candidates for {v}"), DOUBLE, &found);
        return Ok(());
    }
    rec.check("number of candidates", DOUBLE, 1, found.len());
    let Some(c) = found.first() else { return Ok(()) };
    rec.check("U", DOUBLE, "V(30,0)".to_string(), c.u.to_string());
    rec.check("W", DOUBLE, vec!["V(0,4)".to_string(), "V(5,9)".to_string()], c.w.iter().map(ToString::to_string).collect());
    rec.check("dim U = dim W + 1", DOUBLE, c.dim_u, c.dim_w.iter().sum::<u64>() + 1);
    rec.check("V(0,34) occurs in U* (x) W_i for every i", DOUBLE, true, c.hom_multiplicities.iter().all(|&m| m >= 1));
    rec.check("center classes of V and U", DOUBLE, (2, 0), (c.linearization.class_v, c.linearization.class_u));
    rec.check("linearization obstructed", DOUBLE, true, c.linearization.obstructed);
    Ok(())
}
