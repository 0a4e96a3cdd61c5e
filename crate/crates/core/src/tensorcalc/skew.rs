use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// `coef * (x_i x_j) (x) (y_k ^ y_l)` with `i <= j < d` and `k < l < 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymWedgeTerm {
    pub coef: i64,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

/// An element of `Sym^2(C^d)* (x) Ext^2(C^3)*` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymWedge {
    d: usize,
    terms: Vec<SymWedgeTerm>,
}

impl SymWedge {
    pub fn new(d: usize, terms: impl IntoIterator<Item = (i64, usize, usize, usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (coef, i, j, k, l) in terms {
            let (i, j) = (i.min(j), i.max(j));
            if j >= d {
                return Err(Error::IndexOutOfRange { index: j, size: d });
            }
            if k >= l || l >= 3 {
                return Err(Error::InvalidArgument(format!("wedge indices ({k}, {l}) must satisfy k < l < 3")));
            }
            out.push(SymWedgeTerm { coef, i, j, k, l });
        }
        Ok(SymWedge { d, terms: out })
    }

    pub fn zero(d: usize) -> Self {
        SymWedge { d, terms: Vec::new() }
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn terms(&self) -> &[SymWedgeTerm] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::ShapeMismatch(format!("d = {} vs d = {}", self.d, other.d)));
        }
        Ok(SymWedge { d: self.d, terms: self.terms.iter().chain(&other.terms).copied().collect() })
    }
}

/// A skew form on `C^N`, stored by its strict upper triangle.
#[derive(Debug, Clone)]
pub struct SkewForm<F: Field> {
    field: F,
    dim: usize,
    upper: BTreeMap<(usize, usize), F::Elem>,
}

impl<F: Field> SkewForm<F> {
    pub fn zero(field: F, dim: usize) -> Self {
        SkewForm { field, dim, upper: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `c * (u ^ v)`: `c` at `(u, v)` and `-c` at `(v, u)`.
    pub fn add_wedge(&mut self, u: usize, v: usize, c: &F::Elem) -> Result<()> {
        for idx in [u, v] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange { index: idx, size: self.dim });
            }
        }
        if u == v {
            return Ok(());
        }
        let (key, c) = if u < v { ((u, v), c.clone()) } else { ((v, u), self.field.neg(c)) };
        let f = &self.field;
        let s = f.add(self.upper.get(&key).unwrap_or(&f.zero()), &c);
        if f.is_zero(&s) {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, s);
        }
        Ok(())
    }

    pub fn get(&self, u: usize, v: usize) -> F::Elem {
        let f = &self.field;
        match u.cmp(&v) {
            std::cmp::Ordering::Less => self.upper.get(&(u, v)).cloned().unwrap_or_else(|| f.zero()),
            std::cmp::Ordering::Greater => f.neg(&self.get(v, u)),
            std::cmp::Ordering::Equal => f.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.field.clone(), self.dim, self.dim);
        for (&(u, v), c) in &self.upper {
            m.set(u, v, c.clone());
            m.set(v, u, self.field.neg(c));
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        self.to_matrix().kernel()
    }
}

/// `(x_i x_j) (x) (y_k ^ y_l) -> (x_i y_k) ^ (x_j y_l) + (x_j y_k) ^ (x_i y_l)`,
/// extended linearly; `x_i (x) y_k` has index `3i + k`.
pub fn iota<F: Field>(field: &F, w: &SymWedge) -> Result<SkewForm<F>> {
    if w.d < 2 {
        return Err(Error::InvalidArgument(format!("d = {} is below 2", w.d)));
    }
    let mut form = SkewForm::zero(field.clone(), 3 * w.d);
    for t in &w.terms {
        let c = field.from_i64(t.coef);
        form.add_wedge(3 * t.i + t.k, 3 * t.j + t.l, &c)?;
        form.add_wedge(3 * t.j + t.k, 3 * t.i + t.l, &c)?;
    }
    Ok(form)
}

const OMEGA_D5: [(i64, usize, usize, usize, usize); 7] =
    [(1, 4, 4, 1, 2), (-2, 0, 1, 1, 2), (1, 0, 0, 0, 2), (1, 2, 2, 0, 2), (1, 3, 3, 0, 2), (2, 3, 4, 0, 1), (-2, 1, 2, 0, 1)];

/// The rank-14 witness for `d = 5`.
pub fn witness_d5() -> SymWedge {
    SymWedge::new(5, OMEGA_D5).expect("static witness is well formed")
}

/// The `d = 5` witness embedded in `C^d` plus, for each even one-based
/// `j` in `6..d`, the block `x_j^2 y_1 y_2 + x_j x_(j+1) y_1 y_3 + x_(j+1)^2 y_2 y_3`.
/// Defined for odd `d >= 5`.
pub fn witness_kappa(d: usize) -> Result<SymWedge> {
    if d < 5 || d % 2 == 0 {
        return Err(Error::InvalidArgument(format!("d = {d} must be odd and at least 5")));
    }
    let mut terms: Vec<_> = OMEGA_D5.to_vec();
    for j in (6..d).step_by(2) {
        terms.extend([(1, j - 1, j - 1, 0, 1), (1, j - 1, j, 0, 2), (1, j, j, 1, 2)]);
    }
    SymWedge::new(d, terms)
}

/// `e_1 (x) f_1 + e_2 (x) f_2 + e_3 (x) f_3` in `C^d (x) C^3`.
pub fn maximal_rank_kernel_vector(d: usize) -> Vec<i64> {
    let mut v = vec![0; 3 * d];
    for i in 0..3.min(d) {
        v[3 * i + i] = 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, PrimeField, Rationals};

    #[test]
    fn witness_ranks() {
        assert_eq!(iota(&Rationals, &witness_d5()).unwrap().rank(), 14);
        for d in [5, 7, 9, 11] {
            let form = iota(&Rationals, &witness_kappa(d).unwrap()).unwrap();
            assert_eq!(form.rank(), 3 * d - 1, "d = {d}");
            let m: Vec<_> = maximal_rank_kernel_vector(d).into_iter().map(int).collect();
            assert!(form.to_matrix().mul_vec(&m).iter().all(|v| *v == int(0)));
            assert_eq!(form.kernel().len(), 1);
        }
    }

    #[test]
    fn zero_form() {
        let form = iota(&Rationals, &SymWedge::zero(4)).unwrap();
        assert!(form.is_zero());
        assert_eq!(form.rank(), 0);
        assert!(iota(&Rationals, &SymWedge::zero(1)).is_err());
    }

    #[test]
    fn antisymmetry() {
        let f = PrimeField::new(101).unwrap();
        let form = iota(&f, &witness_kappa(7).unwrap()).unwrap();
        for u in 0..21 {
            for v in 0..21 {
                assert_eq!(form.get(u, v), f.neg(&form.get(v, u)));
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(witness_kappa(6).is_err());
        assert!(witness_kappa(3).is_err());
        assert!(SymWedge::new(3, [(1, 0, 3, 0, 1)]).is_err());
        assert!(SymWedge::new(3, [(1, 0, 1, 1, 1)]).is_err());
    }
}
