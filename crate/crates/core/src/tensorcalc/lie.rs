use rand::Rng;

use super::realize::LinearMapMatrix;
use super::PolyTensor;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A traceless `n x n` matrix, stored densely.
#[derive(Debug, Clone)]
pub struct LieElement<F: Field> {
    field: F,
    n: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> PartialEq for LieElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<F: Field> LieElement<F> {
    /// Rejects matrices with non-zero trace.
    pub fn new(field: F, n: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        let trace = (0..n).fold(field.zero(), |acc, i| field.add(&acc, &entries[i * n + i]));
        if !field.is_zero(&trace) {
            return Err(Error::InvalidArgument(format!("trace {} is not zero", field.render(&trace))));
        }
        Ok(LieElement { field, n, entries })
    }

    /// `E_ij` for `i != j`.
    pub fn elementary(field: F, n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument("E_ii is not traceless".into()));
        }
        let mut entries = vec![field.zero(); n * n];
        entries[i * n + j] = field.one();
        Self::new(field, n, entries)
    }

    /// `E_ii - E_jj`.
    pub fn diagonal(field: F, n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument("E_ii - E_ii is zero".into()));
        }
        let mut entries = vec![field.zero(); n * n];
        entries[i * n + i] = field.one();
        entries[j * n + j] = field.neg(&field.one());
        Self::new(field, n, entries)
    }

    pub fn random<R: Rng + ?Sized>(field: F, n: usize, rng: &mut R, bound: u64) -> Self {
        let basis = sl_basis(&field, n);
        let mut out = LieElement { field: field.clone(), n, entries: vec![field.zero(); n * n] };
        for x in &basis {
            let c = field.sample(rng, bound);
            out = out.add(&x.scale(&c));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        LieElement { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f.add(a, b)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        LieElement { entries: self.entries.iter().map(|a| f.mul(a, c)).collect(), ..self.clone() }
    }

    /// The commutator `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.n;
        let a = Matrix::from_rows(f.clone(), n, self.entries.chunks(n).map(|r| r.to_vec()).collect());
        let b = Matrix::from_rows(f.clone(), n, other.entries.chunks(n).map(|r| r.to_vec()).collect());
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        let entries = (0..n * n).map(|k| f.sub(ab.get(k / n, k % n), ba.get(k / n, k % n))).collect();
        LieElement { entries, ..self.clone() }
    }
}

/// `E_ij` for `i != j` in row order, then `E_ii - E_(i+1)(i+1)`.
pub fn sl_basis<F: Field>(field: &F, n: usize) -> Vec<LieElement<F>> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(LieElement::elementary(field.clone(), n, i, j).expect("off-diagonal"));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        out.push(LieElement::diagonal(field.clone(), n, i, i + 1).expect("distinct indices"));
    }
    out
}

/// The derivation action: `E_ij` acts as `e_i d/de_j - x_j d/dx_i`.
pub fn lie_action<F: Field>(x: &LieElement<F>, t: &PolyTensor<F>) -> Result<PolyTensor<F>> {
    if x.n != t.n() {
        return Err(Error::ShapeMismatch(format!("sl_{} acting on C^{}", x.n, t.n())));
    }
    let f = t.field();
    let (a, b) = t.bidegree();
    let mut out = PolyTensor::zero(f.clone(), t.n(), a, b);
    for i in 0..x.n {
        for j in 0..x.n {
            let c = x.entry(i, j);
            if f.is_zero(c) {
                continue;
            }
            if a > 0 {
                out = out.add(&t.d_e(j)?.mul_e(i).scale(c))?;
            }
            if b > 0 {
                out = out.sub(&t.d_x(i)?.mul_x(j).scale(c))?;
            }
        }
    }
    Ok(out)
}

/// Dimension of `{X in sl_n : X v = 0}`, or of `{X : X v in C v}` when
/// `projective`, by exact rank of the assembled map `X -> X v`.
pub fn stabilizer_dim<F: Field>(v: &PolyTensor<F>, projective: bool) -> Result<usize> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let basis = sl_basis(v.field(), v.n());
    let mut images: Vec<PolyTensor<F>> = basis.iter().map(|x| lie_action(x, v)).collect::<Result<_>>()?;
    if projective {
        images.push(v.clone());
    }
    let rank = LinearMapMatrix::from_images(v.field().clone(), v.n(), v.bidegree(), &images)?.rank();
    Ok(images.len() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, PrimeField, Rationals};
    use crate::tensorcalc::realize_irreducible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_and_dual_actions() {
        let q = Rationals;
        let e12 = LieElement::elementary(q, 3, 0, 1).unwrap();
        assert_eq!(lie_action(&e12, &PolyTensor::e(q, 3, 1)).unwrap(), PolyTensor::e(q, 3, 0));
        assert_eq!(lie_action(&e12, &PolyTensor::x(q, 3, 0)).unwrap(), PolyTensor::x(q, 3, 1).neg());
        assert!(LieElement::new(q, 2, vec![int(1), int(0), int(0), int(0)]).is_err());
    }

    #[test]
    fn bracket_identity() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let e12 = LieElement::elementary(q, 3, 0, 1).unwrap();
        let e21 = LieElement::elementary(q, 3, 1, 0).unwrap();
        let h = e12.bracket(&e21);
        assert_eq!(h, LieElement::diagonal(q, 3, 0, 1).unwrap());
        let coords: Vec<_> = super::super::bimonomials(3, 2, 2).iter().map(|_| q.sample(&mut rng, 9)).collect();
        let t = PolyTensor::from_coords(q, 3, 2, 2, &coords);
        let lhs = lie_action(&e12, &lie_action(&e21, &t).unwrap())
            .unwrap()
            .sub(&lie_action(&e21, &lie_action(&e12, &t).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, lie_action(&h, &t).unwrap());
    }

    #[test]
    fn stabilizers() {
        let q = Rationals;
        let e1 = PolyTensor::e(q, 3, 0);
        assert_eq!(stabilizer_dim(&e1, false).unwrap(), 5);
        assert_eq!(stabilizer_dim(&e1, true).unwrap(), 6);
        assert!(stabilizer_dim(&PolyTensor::zero(q, 3, 1, 0), false).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pick = |basis: &[PolyTensor<Rationals>], rng: &mut ChaCha8Rng| {
            basis.iter().fold(PolyTensor::zero(q, 3, basis[0].bidegree().0, basis[0].bidegree().1), |acc, b| {
                acc.add(&b.scale(&q.sample(rng, 20))).unwrap()
            })
        };
        let v12 = realize_irreducible(&q, 3, 1, 2).unwrap();
        assert_eq!(stabilizer_dim(&pick(&v12, &mut rng), true).unwrap(), 0);
        let adjoint = realize_irreducible(&q, 3, 1, 1).unwrap();
        assert_eq!(stabilizer_dim(&pick(&adjoint, &mut rng), false).unwrap(), 2);
    }

    #[test]
    fn delta_is_equivariant_mod_p() {
        let f = PrimeField::new(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let coords: Vec<_> = super::super::bimonomials(3, 2, 3).iter().map(|_| f.sample(&mut rng, 0)).collect();
        let t = PolyTensor::from_coords(f, 3, 2, 3, &coords);
        let x = LieElement::random(f, 3, &mut rng, 0);
        let lhs = lie_action(&x, &t).unwrap().delta().unwrap();
        let rhs = lie_action(&x, &t.delta().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
