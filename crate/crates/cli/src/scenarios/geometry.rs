use std::collections::BTreeMap;

use nullstrat_core::field::{int, rat};
use nullstrat_core::lattice::epsilon;
use nullstrat_core::methods::binary_instability;
use nullstrat_core::polytope::{faces, is_t_unstable, min_norm_point, WeightVector};
use nullstrat_core::repchar::irr_character;
use nullstrat_core::strata::{enumerate_candidates, is_stratifying, nullcone_report, parabolic_data, Stratifying};
use nullstrat_core::{AmbientWeight, CharacterMultiset, FaceMode, GroupShape, IrrLabel, Root, StratumCandidate, SupportSet};
use num_rational::BigRational;

use crate::certificate::Recorder;
use crate::module_spec::{parse_group, parse_module};
use crate::{CliError, Params};

const QUARTIC: &str = "nullcone of ternary quartics";
const TWO_FORMS: &str = "stratum of two-forms of maximal rank";
const DOUBLE: &str = "stratum of homomorphisms of maximal rank";
const BINARY: &str = "instability of binary forms";
const FACES: &str = "face lattices of weight polytopes";

pub fn nullcone(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let shape = parse_group(p.group.as_deref().unwrap_or("SL3"))?;
    let module = parse_module(&shape, p.module.as_deref().unwrap_or("0,4"))?;
    let report = nullcone_report(&module, p.max_degree)?;
    let undetermined = report.verdicts.iter().filter(|v| v.stratifying == Stratifying::Undetermined).count();
    rec.info("module dimension", QUARTIC, report.module_dim);
    rec.info("candidates", QUARTIC, report.verdicts.len());
    rec.info(format!("candidates without an invariant up to degree {}", p.max_degree), QUARTIC, undetermined);
    let quartic = shape == GroupShape::sl(3)
        && [IrrLabel::sl3(0, 4), IrrLabel::sl3(4, 0)].iter().any(|l| irr_character(l) == module);
    if quartic {
        rec.check("maximal closure dimensions", QUARTIC, vec![10u64, 11], report.component_dims.clone());
    } else {
        rec.info("maximal closure dimensions", QUARTIC, &report.component_dims);
    }
    rec.info("maximal candidates", QUARTIC, report.maximal.iter().map(|&i| report.verdicts[i].candidate.c.to_string()).collect::<Vec<_>>());
    Ok(())
}

/// Index pairs of the weights of `weighted` in `table`; unknown weights show
/// up as `None`.
fn index_set(weighted: &[(AmbientWeight, i64)], table: &BTreeMap<AmbientWeight, (usize, usize)>) -> Vec<Option<(usize, usize)>> {
    let mut out: Vec<_> = weighted.iter().map(|(w, _)| table.get(w).copied()).collect();
    out.sort();
    out
}

fn root_set(roots: &[Root]) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<_> = roots.iter().map(|r| (r.factor, r.i, r.j)).collect();
    out.sort();
    out
}

/// Records the weight and root characterizations of one stratum and its
/// witness degree.
#[allow(clippy::too_many_arguments)]
fn stratum_example(
    rec: &mut Recorder,
    anchor: &str,
    tag: &str,
    cand: &StratumCandidate,
    table: &BTreeMap<AmbientWeight, (usize, usize)>,
    plus: Vec<(usize, usize)>,
    levi: Vec<(usize, usize, usize)>,
    unipotent: Vec<(usize, usize, usize)>,
    witness: usize,
    max_degree: usize,
) -> Result<(), CliError> {
    let plus: Vec<Option<(usize, usize)>> = plus.into_iter().map(Some).collect();
    rec.check(format!("{tag}: plus weights"), anchor, plus.clone(), index_set(&cand.plus_weights, table));
    rec.check(format!("{tag}: zero weights"), anchor, plus, index_set(&cand.zero_weights, table));
    rec.check(format!("{tag}: Levi roots"), anchor, levi, root_set(&cand.roots_l));
    rec.check(format!("{tag}: unipotent roots"), anchor, unipotent, root_set(&cand.roots_u));
    let mnp = min_norm_point(&cand.plus_support())?;
    rec.check(format!("{tag}: c is the min-norm point of the plus weights"), anchor, cand.c.to_string(), mnp.point.to_string());
    let v = is_stratifying(cand, max_degree)?;
    rec.check(format!("{tag}: stratifying with witness degree"), anchor, (Stratifying::Yes, Some(witness)), (v.stratifying, v.witness_degree));
    Ok(())
}

pub fn strata_examples(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    for n in [5usize, 7] {
        let shape = GroupShape::sl(n);
        let module = CharacterMultiset::standard(&shape, 0)?.ext_power(2);
        let mut table = BTreeMap::new();
        for k in 0..n {
            for l in k + 1..n {
                table.insert(&epsilon(&shape, 0, k)? + &epsilon(&shape, 0, l)?, (k, l));
            }
        }
        let s = rat(2, n as i64 - 1);
        let mut block = vec![s; n - 1];
        block.push(int(-2));
        let c = AmbientWeight::from_blocks(vec![block])?;
        let cand = parabolic_data(&module, &c)?;
        let last = n - 1;
        let plus = (0..last).flat_map(|k| (k + 1..last).map(move |l| (k, l))).collect();
        let levi = (0..last).flat_map(|i| (0..last).filter(move |&j| j != i).map(move |j| (0, i, j))).collect();
        let unipotent = (0..last).map(|i| (0, i, last)).collect();
        let tag = format!("Ext^2 C^{n}");
        stratum_example(rec, TWO_FORMS, &tag, &cand, &table, plus, levi, unipotent, (n - 1) / 2, p.max_degree)?;
    }
    for n in 4usize..=6 {
        for m in 2..n {
            let shape = GroupShape::new(vec![n, m])?;
            let module = CharacterMultiset::standard(&shape, 0)?.dual().tensor(&CharacterMultiset::standard(&shape, 1)?)?;
            let mut table = BTreeMap::new();
            for k in 0..n {
                for l in 0..m {
                    table.insert(&-&epsilon(&shape, 0, k)? + &epsilon(&shape, 1, l)?, (k, l));
                }
            }
            let e_block: Vec<BigRational> = (0..n).map(|i| if i < m { rat(-(n as i64 - m as i64), m as i64) } else { int(1) }).collect();
            let c = AmbientWeight::from_blocks(vec![e_block, vec![int(0); m]])?;
            let cand = parabolic_data(&module, &c)?;
            let plus = (0..m).flat_map(|k| (0..m).map(move |l| (k, l))).collect();
            let mut levi: Vec<(usize, usize, usize)> = (0..n)
                .flat_map(|p| (0..n).filter(move |&q| q != p && (p < m) == (q < m)).map(move |q| (0, p, q)))
                .chain((0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (1, i, j))))
                .collect();
            levi.sort();
            let unipotent = (m..n).flat_map(|p| (0..m).map(move |q| (0, p, q))).collect();
            let tag = format!("Hom(C^{n}, C^{m})");
            stratum_example(rec, DOUBLE, &tag, &cand, &table, plus, levi, unipotent, m, p.max_degree)?;
        }
    }
    Ok(())
}

/// Coefficients of `prod (a x + b y)^k`, indexed by the power of `x`.
fn planted(factors: &[(i64, i64, usize)]) -> Vec<BigRational> {
    let mut coeffs = vec![int(1)];
    for &(a, b, k) in factors {
        for _ in 0..k {
            let mut next = vec![int(0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c * int(b);
                next[i + 1] += c * int(a);
            }
            coeffs = next;
        }
    }
    coeffs
}

/// Name and linear factors `a x + b y` with multiplicities.
type Planted = (&'static str, &'static [(i64, i64, usize)]);

pub fn binary_forms(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let examples: [Planted; 8] = [
        ("x^2 y^2", &[(1, 0, 2), (0, 1, 2)]),
        ("x^3 y", &[(1, 0, 3), (0, 1, 1)]),
        ("x y (x - y) (x + y)", &[(1, 0, 1), (0, 1, 1), (1, -1, 1), (1, 1, 1)]),
        ("x^2 y^2 (x + y)", &[(1, 0, 2), (0, 1, 2), (1, 1, 1)]),
        ("(x + 2y)^3 x y", &[(1, 2, 3), (1, 0, 1), (0, 1, 1)]),
        ("x^3 y^3", &[(1, 0, 3), (0, 1, 3)]),
        ("(x - y)^4 (x + y)^2", &[(1, -1, 4), (1, 1, 2)]),
        ("(2x - 3y)^5 y^3", &[(2, -3, 5), (0, 1, 3)]),
    ];
    for (name, factors) in examples {
        let d: usize = factors.iter().map(|f| f.2).sum();
        let max_mult = factors.iter().map(|f| f.2).max().unwrap_or(0);
        let r = binary_instability(&planted(factors))?;
        rec.check(format!("{name}: (max root multiplicity, unstable)"), BINARY, (max_mult, max_mult > d / 2), (r.max_multiplicity, r.unstable));
    }
    for d in 1..=8usize {
        let agree = (0..=d).all(|k| {
            let mut coeffs = vec![int(0); d + 1];
            coeffs[k] = int(1);
            let t = WeightVector::binary_form(&coeffs).and_then(|v| is_t_unstable(&v));
            let g = binary_instability(&coeffs);
            matches!((t, g), (Ok(a), Ok(b)) if a == b.unstable)
        });
        rec.check(format!("monomials of degree {d}: torus and SL2 instability agree"), BINARY, true, agree);
    }
    let sl2 = GroupShape::sl(2);
    for d in 2..=8usize {
        let module = CharacterMultiset::standard(&sl2, 0)?.sym_power(d);
        let cands = enumerate_candidates(&module)?;
        let mut classes = Vec::new();
        let mut dims = BTreeMap::new();
        let mut stratifying = true;
        for c in &cands {
            let plus: i64 = c.plus_weights.iter().map(|(_, k)| k).sum();
            let m = d as i64 + 1 - plus;
            classes.push(m);
            dims.insert(m, c.closure_dim() as i64);
            stratifying &= is_stratifying(c, p.max_degree)?.stratifying == Stratifying::Yes;
        }
        classes.sort();
        let expected: Vec<i64> = (d as i64 / 2 + 1..=d as i64).collect();
        let expected_dims: BTreeMap<i64, i64> = expected.iter().map(|&m| (m, d as i64 - m + 2)).collect();
        rec.check(format!("Sym^{d}: root multiplicity classes of the candidates"), BINARY, expected, classes);
        rec.check(format!("Sym^{d}: closure dimension per class"), BINARY, expected_dims, dims);
        rec.check(format!("Sym^{d}: every candidate is stratifying"), BINARY, true, stratifying);
    }
    Ok(())
}

fn lattice_checks(rec: &mut Recorder, tag: &str, s: &SupportSet, mode: FaceMode, f_vector: Vec<usize>, euler: i64) -> Result<(), CliError> {
    let lat = faces(s, mode)?;
    rec.check(format!("{tag}: f-vector"), FACES, f_vector, lat.f_vector());
    rec.check(format!("{tag}: Euler characteristic"), FACES, euler, lat.euler_characteristic());
    rec.check(format!("{tag}: face equations and strict inequalities"), FACES, true, lat.verify());
    let nested = lat.edges.iter().all(|&(a, b)| {
        let (small, big) = (&lat.faces[a], &lat.faces[b]);
        small.dim + 1 == big.dim && small.members.iter().all(|i| big.members.contains(i))
    });
    rec.check(format!("{tag}: covers are member-set inclusions of consecutive dimension"), FACES, true, nested);
    Ok(())
}

pub fn torbit(_: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    let sl3 = GroupShape::sl(3);
    let eps = |i| epsilon(&sl3, 0, i);
    let triangle = SupportSet::new([eps(0)?, eps(1)?, eps(2)?])?;
    lattice_checks(rec, "weights of C^3", &triangle, FaceMode::Polytope, vec![3, 3, 1], 1)?;
    let adjoint = SupportSet::new(irr_character(&IrrLabel::sl3(1, 1)).weights().cloned())?;
    lattice_checks(rec, "weights of sl3", &adjoint, FaceMode::Polytope, vec![6, 6, 1], 1)?;
    let square_shape = GroupShape::new(vec![2, 2])?;
    let square = CharacterMultiset::standard(&square_shape, 0)?.tensor(&CharacterMultiset::standard(&square_shape, 1)?)?;
    lattice_checks(rec, "weights of C^2 (x) C^2", &SupportSet::new(square.weights().cloned())?, FaceMode::Polytope, vec![4, 4, 1], 1)?;
    let ray = SupportSet::new([eps(0)?])?;
    lattice_checks(rec, "cone over one weight", &ray, FaceMode::Cone, vec![1, 1], 0)?;
    let quadrant = SupportSet::new([eps(0)?, -&eps(2)?])?;
    lattice_checks(rec, "cone over two weights", &quadrant, FaceMode::Cone, vec![1, 2, 1], 0)?;

    let mnp = min_norm_point(&triangle)?;
    rec.check("min-norm point of the weights of C^3", FACES, AmbientWeight::zero(&sl3).to_string(), mnp.point.to_string());
    let edge = SupportSet::new([eps(0)?, eps(1)?])?;
    let mnp = min_norm_point(&edge)?;
    let half = (-&eps(2)?).scale(&rat(1, 2));
    rec.check("min-norm point of {eps_1, eps_2}", FACES, half.to_string(), mnp.point.to_string());
    rec.check("min-norm certificate of {eps_1, eps_2}", FACES, true, mnp.verify(&edge));
    Ok(())
}
