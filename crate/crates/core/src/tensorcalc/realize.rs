use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{bimonomials, PolyTensor, Term};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A linear map written in bases: columns are images of the domain basis,
/// rows are the monomial basis of the codomain bidegree.
#[derive(Debug, Clone)]
pub struct LinearMapMatrix<F: Field> {
    n: usize,
    bidegree: (u32, u32),
    codomain: Vec<Term>,
    matrix: Matrix<F>,
}

impl<F: Field> LinearMapMatrix<F> {
    /// Evaluates `map` on every domain element (in parallel) and collects the
    /// images as columns.
    pub fn assemble<D, M>(field: F, n: usize, bidegree: (u32, u32), domain: &[D], map: M) -> Result<Self>
    where
        D: Sync,
        M: Fn(&D) -> Result<PolyTensor<F>> + Sync,
    {
        let images: Vec<PolyTensor<F>> = domain.par_iter().map(&map).collect::<Result<_>>()?;
        Self::from_images(field, n, bidegree, &images)
    }

    pub fn from_images(field: F, n: usize, bidegree: (u32, u32), images: &[PolyTensor<F>]) -> Result<Self> {
        let codomain = bimonomials(n, bidegree.0, bidegree.1);
        let mut columns = Vec::with_capacity(images.len());
        for t in images {
            if t.n() != n || t.bidegree() != bidegree {
                return Err(Error::DegreeMismatch(format!(
                    "image of bidegree {:?} on C^{} in a map to {:?} on C^{}",
                    t.bidegree(),
                    t.n(),
                    bidegree,
                    n
                )));
            }
            columns.push(t.coords());
        }
        let matrix = Matrix::from_columns(field, codomain.len(), &columns);
        Ok(LinearMapMatrix { n, bidegree, codomain, matrix })
    }

    pub(crate) fn from_matrix(n: usize, bidegree: (u32, u32), matrix: Matrix<F>) -> Self {
        let codomain = bimonomials(n, bidegree.0, bidegree.1);
        assert_eq!(codomain.len(), matrix.rows(), "row count must match the codomain basis");
        LinearMapMatrix { n, bidegree, codomain, matrix }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }
    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }
    pub fn codomain(&self) -> &[Term] {
        &self.codomain
    }
    pub fn codomain_bidegree(&self) -> (u32, u32) {
        self.bidegree
    }
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        self.matrix.kernel()
    }

    /// The image of a coordinate vector of the domain.
    pub fn apply(&self, coords: &[F::Elem]) -> PolyTensor<F> {
        let v = self.matrix.mul_vec(coords);
        PolyTensor::from_coords(self.matrix.field().clone(), self.n, self.bidegree.0, self.bidegree.1, &v)
    }
}

/// A basis of `ker Delta` inside `Sym^a (x) Sym^b*` on `C^n`. For `n = 3` this
/// models `V(a, b)`. `Delta` preserves the torus weight `alpha - delta`, so the
/// kernel is computed one weight space at a time; the basis is grouped by
/// weight, one vector per free column within each block.
pub fn realize_irreducible<F: Field>(field: &F, n: usize, a: u32, b: u32) -> Result<Vec<PolyTensor<F>>> {
    if n == 0 {
        return Err(Error::InvalidShape("n = 0".into()));
    }
    let p = field.characteristic();
    if p != 0 && p <= (a + b) as u64 {
        return Err(Error::CharacteristicTooSmall { p, bound: (a + b) as u64 });
    }
    let basis = bimonomials(n, a, b);
    if a == 0 || b == 0 {
        return Ok(basis.into_iter().map(|(e, x)| PolyTensor::monomial(field.clone(), e, x)).collect());
    }
    let key = |(e, x): &Term| -> Vec<i64> { e.0.iter().zip(&x.0).map(|(p, q)| *p as i64 - *q as i64).collect() };
    let mut blocks: BTreeMap<Vec<i64>, (Vec<Term>, Vec<Term>)> = BTreeMap::new();
    for t in basis {
        blocks.entry(key(&t)).or_default().0.push(t);
    }
    for t in bimonomials(n, a - 1, b - 1) {
        if let Some(block) = blocks.get_mut(&key(&t)) {
            block.1.push(t);
        }
    }
    let per_block: Vec<Vec<PolyTensor<F>>> = blocks
        .into_par_iter()
        .map(|(_, (upper, lower))| {
            let row_of: BTreeMap<&Term, usize> = lower.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut m = Matrix::zeros(field.clone(), lower.len(), upper.len());
            for (c, (e, x)) in upper.iter().enumerate() {
                for i in 0..n {
                    if e.0[i] > 0 && x.0[i] > 0 {
                        let (mut e2, mut x2) = (e.clone(), x.clone());
                        e2.0[i] -= 1;
                        x2.0[i] -= 1;
                        let r = row_of[&(e2, x2)];
                        m.add_to(r, c, &field.from_u64(e.0[i] as u64 * x.0[i] as u64));
                    }
                }
            }
            m.kernel()
                .into_iter()
                .map(|v| {
                    let mut t = PolyTensor::zero(field.clone(), n, a, b);
                    for ((e, x), c) in upper.iter().zip(&v) {
                        t.add_term_unchecked(e.clone(), x.clone(), c);
                    }
                    t
                })
                .collect()
        })
        .collect();
    Ok(per_block.into_iter().flatten().collect())
}

/// `sum_i e_i x_i`, the invariant of bidegree (1, 1).
pub(crate) fn casimir<F: Field>(field: &F, n: usize) -> PolyTensor<F> {
    let mut q = PolyTensor::zero(field.clone(), n, 1, 1);
    for i in 0..n {
        q.add_term_unchecked(super::Monomial::unit(n, i), super::Monomial::unit(n, i), &field.one());
    }
    q
}

/// Projects `t` onto `ker Delta` along `q * (Sym^(a-1) (x) Sym^(b-1)*)` with
/// `q = sum e_i x_i`. The flag reports whether `t` had to move.
pub fn project_to_kernel<F: Field>(t: &PolyTensor<F>) -> Result<(PolyTensor<F>, bool)> {
    let (a, b) = t.bidegree();
    if a == 0 || b == 0 {
        return Ok((t.clone(), false));
    }
    let dt = t.delta()?;
    if dt.is_zero() {
        return Ok((t.clone(), false));
    }
    let field = t.field().clone();
    let n = t.n();
    let q = casimir(&field, n);
    let lower = bimonomials(n, a - 1, b - 1);
    let op = LinearMapMatrix::assemble(field.clone(), n, (a - 1, b - 1), &lower, |(e, x)| {
        let mut u = PolyTensor::zero(field.clone(), n, a - 1, b - 1);
        u.add_term_unchecked(e.clone(), x.clone(), &field.one());
        q.mul(&u)?.delta()
    })?;
    let u = op
        .matrix()
        .solve(&dt.coords())
        .ok_or_else(|| Error::Inapplicable(format!("Delta(q * .) is singular on ({}, {}) in characteristic {}", a - 1, b - 1, field.characteristic())))?;
    let u = PolyTensor::from_coords(field, n, a - 1, b - 1, &u);
    Ok((t.sub(&q.mul(&u)?)?, true))
}
