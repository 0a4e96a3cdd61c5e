//! Hesselink strata of the nullcone: candidate directions `c`, their
//! parabolic data, the stratifying test and component extraction.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{roots, weyl_canonical, AmbientWeight, GroupShape, Root, WeylElement};
use crate::polytope::{affine_min_point, min_norm_point, SupportSet};
use crate::repchar::{alternating_count, CharacterMultiset};

pub const DEFAULT_MAX_DEGREE: usize = 6;

fn ser_weighted<S: Serializer>(v: &[(AmbientWeight, i64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (w, m) in v {
        seq.serialize_element(&(w.to_string(), m))?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumCandidate {
    pub c: AmbientWeight,
    /// Weights with `<x, c> >= <c, c>`, with module multiplicities.
    #[serde(serialize_with = "ser_weighted")]
    pub plus_weights: Vec<(AmbientWeight, i64)>,
    /// Weights with `<x, c> = <c, c>`.
    #[serde(serialize_with = "ser_weighted")]
    pub zero_weights: Vec<(AmbientWeight, i64)>,
    pub roots_p: Vec<Root>,
    pub roots_l: Vec<Root>,
    pub roots_u: Vec<Root>,
    /// Least positive `n` with `n*c` integral.
    pub n_min: u64,
    /// Rank of the maximal torus of the kernel group `Z_c`.
    pub tprime_rank: usize,
}

impl StratumCandidate {
    /// Roots of the Levi factor, which are the roots of `Z_c`.
    pub fn zc_root_system(&self) -> &[Root] {
        &self.roots_l
    }

    /// `|roots_U| + dim V_{H+(c)}`.
    pub fn closure_dim(&self) -> u64 {
        self.roots_u.len() as u64 + self.plus_weights.iter().map(|(_, m)| *m as u64).sum::<u64>()
    }

    pub fn plus_support(&self) -> SupportSet {
        SupportSet::new(self.plus_weights.iter().map(|(w, _)| w.clone())).expect("one shape")
    }

    pub fn zero_support(&self) -> SupportSet {
        SupportSet::new(self.zero_weights.iter().map(|(w, _)| w.clone())).expect("one shape")
    }

    /// Positions of each block permuted by the Levi Weyl group: equal
    /// coordinates of `c`, as flat indices.
    pub fn levi_groups(&self) -> Vec<Vec<usize>> {
        let mut groups = Vec::new();
        let mut at = 0;
        for b in self.c.blocks() {
            let mut seen: Vec<&BigRational> = Vec::new();
            for x in b {
                if !seen.contains(&x) {
                    seen.push(x);
                }
            }
            for v in seen {
                groups.push((0..b.len()).filter(|&i| &b[i] == v).map(|i| at + i).collect());
            }
            at += b.len();
        }
        groups
    }

    /// The zero-weight module as a module for `Z_c`: weights projected to the
    /// orthogonal complement of `c`, i.e. shifted by `-c`.
    pub fn restricted_zero_module(&self) -> CharacterMultiset {
        let shape = self.c.shape();
        CharacterMultiset::from_entries(&shape, self.zero_weights.iter().map(|(w, m)| (w - &self.c, *m)))
            .expect("zero weights share the shape of c")
    }
}

/// Root and weight data of the parabolic subgroup attached to `c`.
pub fn parabolic_data(module: &CharacterMultiset, c: &AmbientWeight) -> Result<StratumCandidate> {
    if c.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let shape = module.shape();
    if c.shape() != *shape {
        return Err(Error::ShapeMismatch(format!("{c} for a {shape} module")));
    }
    let cc = c.norm2();
    let mut plus = Vec::new();
    let mut zero = Vec::new();
    for (w, m) in module.iter() {
        let v = w.dot(c);
        if v >= cc {
            plus.push((w.clone(), m));
            if v == cc {
                zero.push((w.clone(), m));
            }
        }
    }
    let (mut roots_p, mut roots_l, mut roots_u) = (Vec::new(), Vec::new(), Vec::new());
    for r in roots(shape) {
        let v = r.pair_with(c);
        if v.is_zero() {
            roots_l.push(r);
            roots_p.push(r);
        } else if v > BigRational::zero() {
            roots_u.push(r);
            roots_p.push(r);
        }
    }
    Ok(StratumCandidate {
        c: c.clone(),
        plus_weights: plus,
        zero_weights: zero,
        roots_p,
        roots_l,
        roots_u,
        n_min: c.integrality_index(),
        tprime_rank: shape.rank() - 1,
    })
}

/// All strata candidates: closest points to the origin of affine hulls of
/// affinely independent weight subsets that lie in their convex hull,
/// canonicalized, deduplicated and confirmed as min-norm points of their
/// plus sets. Sorted by `c`.
pub fn enumerate_candidates(module: &CharacterMultiset) -> Result<Vec<StratumCandidate>> {
    let weights: Vec<AmbientWeight> = SupportSet::new(module.weights().cloned())?.weights().to_vec();
    let max_size = (module.shape().rank() + 1).min(weights.len());
    let subsets: Vec<Vec<usize>> = (1..=max_size).flat_map(|k| (0..weights.len()).combinations(k)).collect();
    let raw: BTreeSet<AmbientWeight> = subsets
        .par_iter()
        .filter_map(|idx| {
            let pts: Vec<AmbientWeight> = idx.iter().map(|&i| weights[i].clone()).collect();
            let (p, mu) = affine_min_point(&pts)?;
            if p.is_zero() || mu.iter().any(|t| t < &BigRational::zero()) {
                return None;
            }
            Some(weyl_canonical(&p))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let raw: Vec<AmbientWeight> = raw.into_iter().collect();
    let checked: Vec<Option<StratumCandidate>> = raw
        .par_iter()
        .map(|c| {
            let cand = parabolic_data(module, c).ok()?;
            let mnp = min_norm_point(&cand.plus_support()).ok()?;
            (mnp.point == *c).then_some(cand)
        })
        .collect();
    Ok(checked.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratifying {
    Yes,
    /// No invariant found up to the degree bound; a "no" is never certified.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumVerdict {
    pub candidate: StratumCandidate,
    pub stratifying: Stratifying,
    pub witness_degree: Option<usize>,
    pub closure_dim: u64,
    pub flag: Option<String>,
}

/// Dimension of degree-`d` invariants of `Z_c` on the zero-weight module.
pub fn levi_invariant_dim(cand: &StratumCandidate, d: usize) -> u64 {
    let restricted = cand.restricted_zero_module();
    let groups = cand.levi_groups();
    let sym = restricted.sym_power(d);
    let scale = sym.denominator();
    let entries = sym.scaled_int_entries(scale).expect("denominators cleared");
    let blocks = cand.c.blocks();
    let mut rho = vec![0i64; blocks.iter().map(Vec::len).sum()];
    let mut block_size = Vec::with_capacity(rho.len());
    for b in blocks {
        block_size.extend(std::iter::repeat_n(b.len() as i64, b.len()));
    }
    for g in &groups {
        let k = g.len() as i64;
        for (t, &p) in g.iter().enumerate() {
            rho[p] = block_size[p] * (k - 1 - t as i64) * scale;
        }
    }
    let count = alternating_count(&entries, &rho, &rho, &groups);
    u64::try_from(count).expect("invariant dimensions are non-negative")
}

/// Searches degrees `1..=max_degree` for a non-zero `Z_c`-invariant on the
/// zero-weight module.
pub fn is_stratifying(cand: &StratumCandidate, max_degree: usize) -> Result<StratumVerdict> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    let closure_dim = cand.closure_dim();
    if cand.zero_weights.is_empty() {
        return Ok(StratumVerdict {
            candidate: cand.clone(),
            stratifying: Stratifying::Undetermined,
            witness_degree: None,
            closure_dim,
            flag: Some("degenerate: empty zero-weight set".into()),
        });
    }
    let mut flag = None;
    let mut witness = (1..=max_degree).find(|&d| levi_invariant_dim(cand, d) >= 1);
    if witness.is_none() && cand.roots_l.is_empty() {
        // Z_c is a torus: the barycentric coordinates of c on the zero
        // weights are the exponents of an invariant monomial.
        let (d, weight_zero) = torus_monomial(cand)?;
        if weight_zero {
            witness = Some(d);
            flag = Some(format!("torus monomial of degree {d} beyond the search bound {max_degree}"));
        }
    }
    if witness.is_none() {
        flag = Some(format!("no invariant up to degree {max_degree}"));
    }
    Ok(StratumVerdict {
        candidate: cand.clone(),
        stratifying: if witness.is_some() { Stratifying::Yes } else { Stratifying::Undetermined },
        witness_degree: witness,
        closure_dim,
        flag,
    })
}

/// Degree of the monomial read off from the convex combination expressing
/// `c` through the zero weights, and whether its `Z_c`-weight
/// `sum a_w (w - c)` vanishes. Checking the weight directly avoids expanding
/// `Sym^d` when `d` is in the hundreds.
fn torus_monomial(cand: &StratumCandidate) -> Result<(usize, bool)> {
    let mnp = min_norm_point(&cand.zero_support())?;
    debug_assert_eq!(mnp.point, cand.c);
    let den = mnp.combination.iter().fold(BigInt::one(), |acc, (_, t)| acc.lcm(t.denom()));
    let ints: Vec<BigInt> = mnp.combination.iter().map(|(_, t)| (t * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let exps: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    let total: BigInt = exps.iter().sum();
    let d = total.to_usize().ok_or_else(|| Error::InvalidArgument("monomial degree overflow".into()))?;
    let weight = mnp
        .combination
        .iter()
        .zip(&exps)
        .map(|((w, _), a)| (w - &cand.c).scale(&BigRational::from_integer(a.clone())))
        .reduce(|acc, x| &acc + &x);
    let zero = exps.iter().all(|a| a > &BigInt::zero()) && weight.is_some_and(|w| w.is_zero());
    Ok((d, zero))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullconeReport {
    pub shape: String,
    pub module_dim: u64,
    pub verdicts: Vec<StratumVerdict>,
    /// Indices of stratifying candidates whose closure is not contained in a
    /// larger one.
    pub maximal: Vec<usize>,
    /// Sorted distinct closure dimensions of the maximal candidates.
    pub component_dims: Vec<u64>,
}

impl NullconeReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// Whether some Weyl translate of `small` is contained in `big`.
fn contained_up_to_weyl(small: &SupportSet, big: &SupportSet, group: &[WeylElement]) -> bool {
    group.iter().any(|g| small.act(g).map(|s| s.is_subset(big)).unwrap_or(false))
}

/// Full candidate sweep with verdicts. A stratifying candidate is maximal
/// unless a Weyl translate of its plus set lies in the plus set of another
/// stratifying candidate of larger closure dimension.
pub fn nullcone_report(module: &CharacterMultiset, max_degree: usize) -> Result<NullconeReport> {
    let shape: GroupShape = module.shape().clone();
    let has_nonzero = module.weights().any(|w| !w.is_zero());
    let candidates = if has_nonzero { enumerate_candidates(module)? } else { Vec::new() };
    let verdicts: Vec<StratumVerdict> =
        candidates.par_iter().map(|c| is_stratifying(c, max_degree)).collect::<Result<Vec<_>>>()?;
    let group = if verdicts.is_empty() { Vec::new() } else { WeylElement::all(&shape) };
    let supports: Vec<SupportSet> = verdicts.iter().map(|v| v.candidate.plus_support()).collect();
    let strat: Vec<usize> = (0..verdicts.len()).filter(|&i| verdicts[i].stratifying == Stratifying::Yes).collect();
    let maximal: Vec<usize> = strat
        .iter()
        .copied()
        .filter(|&i| {
            !strat.iter().any(|&j| {
                verdicts[j].closure_dim > verdicts[i].closure_dim
                    && contained_up_to_weyl(&supports[i], &supports[j], &group)
            })
        })
        .collect();
    let component_dims: Vec<u64> =
        maximal.iter().map(|&i| verdicts[i].closure_dim).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(NullconeReport { shape: shape.to_string(), module_dim: module.dim(), verdicts, maximal, component_dims })
}
