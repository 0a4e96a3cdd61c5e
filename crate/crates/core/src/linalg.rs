//! Dense exact linear algebra over any [`Field`].

use crate::field::Field;

#[derive(Debug, Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F::Elem) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !self.field.is_zero(a) && !self.field.is_zero(b) {
                        acc = self.field.add(&acc, &self.field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        out.add_to(r, c, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gaussian elimination in place; returns the pivot columns.
    /// With `reduced`, produces the reduced row echelon form.
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(src) = (prow..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(prow, src);
            let inv = f.inv(self.get(prow, col)).expect("non-zero pivot is invertible");
            for c in col..self.cols {
                let v = f.mul(self.get(prow, c), &inv);
                self.set(prow, c, v);
            }
            let pivot_row: Vec<F::Elem> = self.row(prow)[col..].to_vec();
            let targets: Box<dyn Iterator<Item = usize>> = if reduced {
                Box::new((0..self.rows).filter(move |&r| r != prow))
            } else {
                Box::new(prow + 1..self.rows)
            };
            for r in targets {
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !f.is_zero(pv) {
                        let i = r * self.cols + col + k;
                        self.data[i] = f.sub_mul(&self.data[i], &factor, pv);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    /// A basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = &self.field;
        let mut aug = Self::zeros(f.clone(), self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, br.clone());
        }
        let pivots = aug.eliminate(true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, PrimeField, Rationals};

    #[test]
    fn rank_and_kernel_over_q() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|v| *v == int(0)));
    }

    #[test]
    fn rank_drops_mod_p() {
        let rows = vec![vec![1, 1], vec![1, 8]];
        assert_eq!(Matrix::from_i64(Rationals, &rows).rank(), 2);
        assert_eq!(Matrix::from_i64(PrimeField::new(7).unwrap(), &rows).rank(), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 1], vec![1, -1]]);
        let x = m.solve(&[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let s = Matrix::from_i64(Rationals, &[vec![1, 1], vec![2, 2]]);
        assert!(s.solve(&[int(1), int(3)]).is_none());
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<Rationals> = Matrix::zeros(Rationals, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
        let n: Matrix<Rationals> = Matrix::zeros(Rationals, 2, 0);
        assert_eq!(n.rank(), 0);
        assert!(n.kernel().is_empty());
    }

    #[test]
    fn transpose_and_product() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let t = m.transpose();
        assert_eq!(t.rows(), 2);
        let g = t.mul(&m);
        assert_eq!(*g.get(0, 0), int(35));
        assert_eq!(*g.get(0, 1), int(44));
    }
}
