use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Verdict;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, PrimeField, Rationals};
use crate::repchar::{center_character, ext_power, irr_character, mult_in, weyl_dim, IrrLabel};
use crate::tensorcalc::{iota, maximal_rank_kernel_vector, realize_irreducible, stabilizer_dim, PolyTensor, SymWedge};

/// Preconditions of the two-form trick: a 2-form of maximal rank on an
/// odd-dimensional `E` has a one-dimensional kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFormReport {
    pub dim_e: u64,
    pub dim_v: u64,
    /// Multiplicity of `V` in `Ext^2 E*`.
    pub multiplicity: u64,
    pub witness_rank: Option<usize>,
    pub witness_kernel_dim: Option<usize>,
    /// The kernel is spanned by `e_1 (x) f_1 + e_2 (x) f_2 + e_3 (x) f_3`.
    pub kernel_is_diagonal: Option<bool>,
    pub slack: i64,
    pub verdict: Verdict,
}

pub fn two_form_check(e: &IrrLabel, v: &IrrLabel, witness: Option<&SymWedge>) -> Result<TwoFormReport> {
    if e.shape() != v.shape() {
        return Err(Error::ShapeMismatch(format!("{e} and {v}")));
    }
    let dim_e = weyl_dim(e);
    if dim_e % 2 == 0 {
        return Err(Error::Inapplicable(format!("dim {e} = {dim_e} is even")));
    }
    let dim_v = weyl_dim(v);
    let multiplicity = mult_in(v, &ext_power(&irr_character(e).dual(), 2))?;
    let (mut witness_rank, mut witness_kernel_dim, mut kernel_is_diagonal) = (None, None, None);
    let mut witness_ok = true;
    if let Some(w) = witness {
        if 3 * w.d() as u64 != dim_e {
            return Err(Error::ShapeMismatch(format!("witness acts on C^{} (x) C^3, dim E = {dim_e}", w.d())));
        }
        let form = iota(&Rationals, w)?;
        let rank = form.rank();
        let kernel = form.kernel();
        let m: Vec<_> = maximal_rank_kernel_vector(w.d()).into_iter().map(|x| Rationals.from_i64(x)).collect();
        let annihilates = form.to_matrix().mul_vec(&m).iter().all(|c| Rationals.is_zero(c));
        witness_ok = rank as u64 == dim_e - 1;
        witness_rank = Some(rank);
        witness_kernel_dim = Some(kernel.len());
        kernel_is_diagonal = Some(kernel.len() == 1 && annihilates);
    }
    let verdict = Verdict::from_bool(multiplicity >= 1 && witness_ok && kernel_is_diagonal != Some(false));
    Ok(TwoFormReport {
        dim_e,
        dim_v,
        multiplicity,
        witness_rank,
        witness_kernel_dim,
        kernel_is_diagonal,
        slack: dim_v as i64 - dim_e as i64,
        verdict,
    })
}

/// Clause-by-clause check for stable rationality of `Grass(k, E)/SL_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrassmannianReport {
    pub dim_e: u64,
    pub dim_group: u64,
    pub grassmannian_dim: u64,
    pub center_class: u32,
    pub center_generates: Verdict,
    pub k_in_range: Verdict,
    pub p_does_not_divide_k: Verdict,
    /// Lie algebra stabilizer of a random point of `E` and of `P(E)`.
    pub affine_stabilizer: Option<usize>,
    pub projective_stabilizer: Option<usize>,
    pub almost_free: Verdict,
    /// Triviality of generic finite stabilizers is outside what one linear
    /// probe can decide.
    pub finite_stabilizer: &'static str,
    pub probe_prime: u64,
    pub seed: u64,
    pub verdict: Verdict,
}

/// Modulus for the random stabilizer probe.
pub const PROBE_PRIME: u64 = 1_000_003;

pub fn grassmannian_check(e: &IrrLabel, k: u64, p: u64, seed: u64) -> Result<GrassmannianReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e.shape().factors() != [p as usize] {
        return Err(Error::Inapplicable(format!("{e} is not a label for SL{p}")));
    }
    let dim_e = weyl_dim(e);
    let dim_group = p * p - 1;
    let center_class = center_character(e)[0];
    let center_generates = Verdict::from_bool(center_class != 0);
    let k_in_range = Verdict::from_bool(k >= 1 && k + dim_group < dim_e);
    let p_does_not_divide_k = Verdict::from_bool(k % p != 0);

    // Labels (a, 0, ..., 0, b) are realized as ker Delta in Sym^a (x) Sym^b*.
    let l = &e.labels()[0];
    let hook = l.len() < 2 || l[1..l.len() - 1].iter().all(|&x| x == 0);
    let (mut affine_stabilizer, mut projective_stabilizer) = (None, None);
    let almost_free = if hook {
        let (a, b) = (l[0], if l.len() > 1 { l[l.len() - 1] } else { 0 });
        let field = PrimeField::new(PROBE_PRIME)?;
        let basis = realize_irreducible(&field, p as usize, a, b)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = basis
            .iter()
            .try_fold(PolyTensor::zero(field, p as usize, a, b), |acc, g| acc.add(&g.scale(&field.sample(&mut rng, 0))))?;
        if point.is_zero() {
            Verdict::Undetermined
        } else {
            let aff = stabilizer_dim(&point, false)?;
            let proj = stabilizer_dim(&point, true)?;
            affine_stabilizer = Some(aff);
            projective_stabilizer = Some(proj);
            // a positive value at one random point does not disprove generic freeness
            if aff == 0 && proj == 0 {
                Verdict::Pass
            } else {
                Verdict::Undetermined
            }
        }
    } else {
        Verdict::Undetermined
    };
    let clauses = [center_generates, k_in_range, p_does_not_divide_k, almost_free];
    let verdict = if clauses.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if clauses.contains(&Verdict::Undetermined) {
        Verdict::Undetermined
    } else {
        Verdict::Pass
    };
    Ok(GrassmannianReport {
        dim_e,
        dim_group,
        grassmannian_dim: k.saturating_mul(dim_e.saturating_sub(k)),
        center_class,
        center_generates,
        k_in_range,
        p_does_not_divide_k,
        affine_stabilizer,
        projective_stabilizer,
        almost_free,
        finite_stabilizer: "not certified",
        probe_prime: PROBE_PRIME,
        seed,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorcalc::witness_kappa;

    fn two_form_labels(d: usize) -> (IrrLabel, IrrLabel) {
        let mut std = vec![0; d - 1];
        std[0] = 1;
        let mut sym2_dual = vec![0; d - 1];
        sym2_dual[d - 2] = 2;
        (
            IrrLabel::from_factors(vec![std, vec![1, 0]]).unwrap(),
            IrrLabel::from_factors(vec![sym2_dual, vec![1, 0]]).unwrap(),
        )
    }

    #[test]
    fn two_form_with_witness() {
        for d in [5, 7] {
            let (e, v) = two_form_labels(d);
            let r = two_form_check(&e, &v, Some(&witness_kappa(d).unwrap())).unwrap();
            assert_eq!(r.multiplicity, 1);
            assert_eq!(r.witness_rank, Some(3 * d - 1));
            assert_eq!(r.kernel_is_diagonal, Some(true));
            assert_eq!(r.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn two_form_failures() {
        let (e, _) = two_form_labels(5);
        let wrong = IrrLabel::from_factors(vec![vec![0, 0, 0, 0], vec![3, 0]]).unwrap();
        let r = two_form_check(&e, &wrong, None).unwrap();
        assert_eq!((r.multiplicity, r.verdict), (0, Verdict::Fail));
        let even = IrrLabel::sl3(1, 1);
        assert!(matches!(two_form_check(&even, &even, None), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn grassmannian_clauses() {
        let e = IrrLabel::sl3(14, 1);
        let r = grassmannian_check(&e, 2, 3, 1).unwrap();
        assert_eq!(r.grassmannian_dim, 506);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!((r.affine_stabilizer, r.projective_stabilizer), (Some(0), Some(0)));
        let r = grassmannian_check(&e, 3, 3, 1).unwrap();
        assert_eq!(r.p_does_not_divide_k, Verdict::Fail);
        let r = grassmannian_check(&e, 255 - 8, 3, 1).unwrap();
        assert_eq!(r.k_in_range, Verdict::Fail);
        assert!(matches!(grassmannian_check(&e, 2, 4, 1), Err(Error::NotPrime(4))));
    }
}
