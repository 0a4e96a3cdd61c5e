use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::realize::{realize_irreducible, LinearMapMatrix};
use super::{bimonomials, monomials, Monomial, PolyTensor};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;

/// A dense form of bidegree `(0, b)` with independent uniform coefficients.
pub fn random_form<F: Field, R: Rng + ?Sized>(field: &F, n: usize, b: u32, rng: &mut R, bound: u64) -> PolyTensor<F> {
    let coords: Vec<F::Elem> = bimonomials(n, 0, b).iter().map(|_| field.sample(rng, bound)).collect();
    PolyTensor::from_coords(field.clone(), n, 0, b, &coords)
}

/// `mu(g, f) = Delta^a(g f)` for `g` of bidegree `(a, b)` and `f` of `(0, c)`;
/// lands in `(0, b + c - a)`.
pub fn mu_pairing<F: Field>(g: &PolyTensor<F>, f: &PolyTensor<F>) -> Result<PolyTensor<F>> {
    let (a, b) = g.bidegree();
    let (fa, c) = f.bidegree();
    if fa != 0 {
        return Err(Error::DegreeMismatch(format!("f must have e-degree 0, got {fa}")));
    }
    if b + c < a {
        return Err(Error::DegreeUnderflow(format!("Delta^{a} on x-degree {}", b + c)));
    }
    g.mul(f)?.delta_pow(a)
}

fn common_bidegree<F: Field>(basis: &[PolyTensor<F>]) -> Result<(usize, u32, u32)> {
    let first = basis.first().ok_or_else(|| Error::InvalidArgument("empty basis".into()))?;
    let (a, b) = first.bidegree();
    if basis.iter().any(|g| g.bidegree() != (a, b) || g.n() != first.n()) {
        return Err(Error::DegreeMismatch("basis elements of different bidegree".into()));
    }
    Ok((first.n(), a, b))
}

/// The matrix of `g -> mu(g, f)` on the span of `basis`, written against the
/// monomial basis of the target. Built on the full monomial space first, then
/// multiplied by the coordinate matrix of `basis`.
pub fn mu_matrix<F: Field>(basis: &[PolyTensor<F>], f: &PolyTensor<F>) -> Result<LinearMapMatrix<F>> {
    let (n, a, b) = common_bidegree(basis)?;
    let c = f.bidegree().1;
    if b + c < a {
        return Err(Error::DegreeUnderflow(format!("Delta^{a} on x-degree {}", b + c)));
    }
    let field = f.field().clone();
    let target = (0, b + c - a);
    let full = LinearMapMatrix::assemble(field.clone(), n, target, &bimonomials(n, a, b), |(e, x)| {
        mu_pairing(&PolyTensor::monomial(field.clone(), e.clone(), x.clone()), f)
    })?;
    let coords: Vec<Vec<F::Elem>> = basis.iter().map(|g| g.coords()).collect();
    let change = Matrix::from_columns(field, full.domain_dim(), &coords);
    Ok(LinearMapMatrix::from_matrix(n, target, full.matrix().mul(&change)))
}

/// Rank of `f -> (mu(g_1, f), ..., mu(g_k, f))` on forms of bidegree `(0, c)`.
pub fn fiber_system_rank<F: Field>(gs: &[PolyTensor<F>], c: u32) -> Result<(usize, usize, usize)> {
    let (n, a, b) = common_bidegree(gs)?;
    if b + c < a {
        return Err(Error::DegreeUnderflow(format!("Delta^{a} on x-degree {}", b + c)));
    }
    let field = gs[0].field().clone();
    let domain: Vec<Monomial> = monomials(n, c);
    let mut stacked: Option<Matrix<F>> = None;
    for g in gs {
        let m = LinearMapMatrix::assemble(field.clone(), n, (0, b + c - a), &domain, |x| {
            mu_pairing(g, &PolyTensor::monomial(field.clone(), Monomial::one(n), x.clone()))
        })?;
        stacked = Some(match stacked {
            None => m.matrix().clone(),
            Some(s) => s.stack(m.matrix()),
        });
    }
    let m = stacked.expect("non-empty");
    Ok((m.rows(), m.cols(), m.rank()))
}

/// The rank and fiber computation for `V(0,34)` inside `Hom(V(14,1), V(0,21))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct V34Report {
    pub prime: u64,
    pub seed: u64,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub mu_rank: usize,
    pub kernel_dim: usize,
    pub fiber_rows: usize,
    pub fiber_cols: usize,
    pub fiber_rank: usize,
    /// `fiber_cols - fiber_rank - 1`.
    pub fiber_projective_dim: i64,
}

/// Draws `f` from `Sym^34` over `F_prime` with a seeded ChaCha8 stream, ranks
/// `mu(., f)` on `V(14,1)`, and ranks the linear system
/// `mu(g_1, .) = mu(g_2, .) = 0` for a basis `g_1, g_2` of its kernel.
pub fn v34_check(prime: u64, seed: u64) -> Result<V34Report> {
    let field = PrimeField::new(prime)?;
    let basis = realize_irreducible(&field, 3, 14, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_form(&field, 3, 34, &mut rng, 0);
    let mu = mu_matrix(&basis, &f)?;
    let mu_rank = mu.rank();
    let kernel = mu.kernel();
    let gs: Vec<PolyTensor<PrimeField>> = kernel
        .iter()
        .map(|v| {
            basis.iter().zip(v).try_fold(PolyTensor::zero(field, 3, 14, 1), |acc, (g, c)| acc.add(&g.scale(c)))
        })
        .collect::<Result<_>>()?;
    let (fiber_rows, fiber_cols, fiber_rank) = if gs.is_empty() { (0, monomials(3, 34).len(), 0) } else { fiber_system_rank(&gs, 34)? };
    Ok(V34Report {
        prime,
        seed,
        domain_dim: basis.len(),
        codomain_dim: mu.codomain_dim(),
        mu_rank,
        kernel_dim: kernel.len(),
        fiber_rows,
        fiber_cols,
        fiber_rank,
        fiber_projective_dim: fiber_cols as i64 - fiber_rank as i64 - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn mu_of_zero_is_zero() {
        let g = PolyTensor::from_int_terms(Rationals, 3, 2, 1, &[(1, &[2, 0, 0], &[0, 1, 0])]).unwrap();
        let z = PolyTensor::zero(Rationals, 3, 0, 4);
        assert!(mu_pairing(&g, &z).unwrap().is_zero());
        assert!(mu_pairing(&g, &PolyTensor::e(Rationals, 3, 0)).is_err());
    }

    #[test]
    fn small_mu_matrix_matches_pairing() {
        // V(2,1) against Sym^5*, a scaled-down version of the large case.
        let f = PrimeField::new(10007).unwrap();
        let basis = realize_irreducible(&f, 3, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let form = random_form(&f, 3, 5, &mut rng, 0);
        let m = mu_matrix(&basis, &form).unwrap();
        assert_eq!(m.domain_dim(), 15);
        assert_eq!(m.codomain_dim(), 15);
        for (col, g) in basis.iter().enumerate() {
            let mut unit = vec![0u64; basis.len()];
            unit[col] = 1;
            assert_eq!(m.apply(&unit), mu_pairing(g, &form).unwrap());
        }
    }

    #[test]
    fn full_v34_check() {
        let r = v34_check(10007, 1).unwrap();
        assert_eq!((r.domain_dim, r.codomain_dim), (255, 253));
        assert_eq!(r.mu_rank, 253);
        assert_eq!(r.kernel_dim, 2);
        assert_eq!((r.fiber_rows, r.fiber_cols), (506, 630));
        assert_eq!(r.fiber_projective_dim, 123);
    }
}
