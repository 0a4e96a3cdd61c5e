//! Explicit tensors in `Sym^a(C^n) (x) Sym^b(C^n)*` over an exact field, the
//! contraction `Delta`, the operators built from it, Lie algebra actions and
//! exact rank computations.
//!
//! `e_i` are coordinates of `Sym(C^n)`, `x_i` of the dual; `Delta` is
//! `sum_i d/de_i d/dx_i`.

mod lie;
mod operators;
mod realize;
mod skew;
mod v34;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::AmbientWeight;
use crate::polytope::SupportSet;

pub use lie::{lie_action, sl_basis, stabilizer_dim, LieElement};
pub use operators::{beta, kernel_dims_seven_points, omega, psi, seven_point_data, BetaValue, SevenPointData, SevenPointKernels};
pub use realize::{project_to_kernel, realize_irreducible, LinearMapMatrix};
pub use skew::{iota, maximal_rank_kernel_vector, witness_d5, witness_kappa, SkewForm, SymWedge, SymWedgeTerm};
pub use v34::{fiber_system_rank, mu_matrix, mu_pairing, random_form, v34_check, V34Report};

/// An exponent vector. Ordered by degree, then with larger leading exponents
/// first, so `x_1^k` is the first monomial of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    fn add(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, in the basis order.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Basis of `Sym^a (x) Sym^b*`: pairs `(e-monomial, x-monomial)` in order.
pub fn bimonomials(n: usize, a: u32, b: u32) -> Vec<(Monomial, Monomial)> {
    let xs = monomials(n, b);
    monomials(n, a).into_iter().flat_map(|e| xs.iter().map(move |x| (e.clone(), x.clone()))).collect()
}

pub type Term = (Monomial, Monomial);

/// A bihomogeneous tensor with coefficients in `F`; zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct PolyTensor<F: Field> {
    field: F,
    n: usize,
    a: u32,
    b: u32,
    coeffs: BTreeMap<Term, F::Elem>,
}

impl<F: Field> PartialEq for PolyTensor<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a && self.b == other.b && self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Debug for PolyTensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyTensor[n={}, ({}, {})] {}", self.n, self.a, self.b, self)
    }
}

impl<F: Field> fmt::Display for PolyTensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((e, x), c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", self.field.render(c))?;
            for (name, m) in [("e", e), ("x", x)] {
                for (i, &k) in m.0.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => write!(f, "*{name}{}", i + 1)?,
                        _ => write!(f, "*{name}{}^{k}", i + 1)?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Serialize for PolyTensor<F> {
    /// Sorted `(e-multidegree, x-multidegree, coefficient)` triples.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for ((e, x), c) in &self.coeffs {
            seq.serialize_element(&(&e.0, &x.0, self.field.render(c)))?;
        }
        seq.end()
    }
}

impl<F: Field> PolyTensor<F> {
    pub fn zero(field: F, n: usize, a: u32, b: u32) -> Self {
        PolyTensor { field, n, a, b, coeffs: BTreeMap::new() }
    }

    /// Builds a tensor from `(coefficient, e-exponents, x-exponents)` triples.
    pub fn from_int_terms(field: F, n: usize, a: u32, b: u32, terms: &[(i64, &[u32], &[u32])]) -> Result<Self> {
        let mut t = Self::zero(field, n, a, b);
        for &(c, e, x) in terms {
            let c = t.field.from_i64(c);
            t.add_term(Monomial(e.to_vec()), Monomial(x.to_vec()), &c)?;
        }
        Ok(t)
    }

    /// The single monomial `e^alpha x^delta` with coefficient one.
    pub fn monomial(field: F, e: Monomial, x: Monomial) -> Self {
        let mut t = Self::zero(field, e.0.len(), e.degree(), x.degree());
        let one = t.field.one();
        t.add_term_unchecked(e, x, &one);
        t
    }

    /// `e_i`, of bidegree (1, 0).
    pub fn e(field: F, n: usize, i: usize) -> Self {
        let mut t = Self::zero(field, n, 1, 0);
        let one = t.field.one();
        t.coeffs.insert((Monomial::unit(n, i), Monomial::one(n)), one);
        t
    }

    /// `x_i`, of bidegree (0, 1).
    pub fn x(field: F, n: usize, i: usize) -> Self {
        let mut t = Self::zero(field, n, 0, 1);
        let one = t.field.one();
        t.coeffs.insert((Monomial::one(n), Monomial::unit(n, i)), one);
        t
    }

    pub fn constant(field: F, n: usize, c: F::Elem) -> Self {
        let mut t = Self::zero(field, n, 0, 0);
        if !t.field.is_zero(&c) {
            t.coeffs.insert((Monomial::one(n), Monomial::one(n)), c);
        }
        t
    }

    /// The tensor with the given coordinates in the monomial basis of its bidegree.
    pub fn from_coords(field: F, n: usize, a: u32, b: u32, coords: &[F::Elem]) -> Self {
        let basis = bimonomials(n, a, b);
        assert_eq!(basis.len(), coords.len(), "coordinate vector length mismatch");
        let coeffs = basis.into_iter().zip(coords).filter(|(_, c)| !field.is_zero(c)).map(|(t, c)| (t, c.clone())).collect();
        PolyTensor { field, n, a, b, coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn bidegree(&self) -> (u32, u32) {
        (self.a, self.b)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &F::Elem)> {
        self.coeffs.iter().map(|((e, x), c)| (e, x, c))
    }

    pub fn coeff(&self, e: &[u32], x: &[u32]) -> F::Elem {
        self.coeffs
            .get(&(Monomial(e.to_vec()), Monomial(x.to_vec())))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * e^alpha x^beta`, keeping the no-zero invariant.
    pub fn add_term(&mut self, e: Monomial, x: Monomial, c: &F::Elem) -> Result<()> {
        if e.0.len() != self.n || x.0.len() != self.n || e.degree() != self.a || x.degree() != self.b {
            return Err(Error::DegreeMismatch(format!(
                "term {:?} (x) {:?} in a ({}, {}) tensor on C^{}",
                e.0, x.0, self.a, self.b, self.n
            )));
        }
        self.add_term_unchecked(e, x, c);
        Ok(())
    }

    fn add_term_unchecked(&mut self, e: Monomial, x: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        let f = &self.field;
        match self.coeffs.entry((e, x)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(o.get(), c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if (self.n, self.a, self.b) != (other.n, other.a, other.b) {
            return Err(Error::DegreeMismatch(format!(
                "({}, {}) on C^{} vs ({}, {}) on C^{}",
                self.a, self.b, self.n, other.a, other.b, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for ((e, x), c) in &other.coeffs {
            out.add_term_unchecked(e.clone(), x.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        PolyTensor { coeffs: self.coeffs.iter().map(|(t, c)| (t.clone(), f.neg(c))).collect(), ..self.clone() }
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(k) {
            return Self::zero(f.clone(), self.n, self.a, self.b);
        }
        PolyTensor { coeffs: self.coeffs.iter().map(|(t, c)| (t.clone(), f.mul(c, k))).collect(), ..self.clone() }
    }

    /// Product in the polynomial ring; bidegrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(format!("C^{} vs C^{}", self.n, other.n)));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n, self.a + other.a, self.b + other.b);
        for ((e1, x1), c1) in &self.coeffs {
            for ((e2, x2), c2) in &other.coeffs {
                out.add_term_unchecked(e1.add(e2), x1.add(x2), &f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    fn derivative(&self, i: usize, in_e: bool) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, size: self.n });
        }
        let (a, b) = if in_e { (self.a.checked_sub(1), Some(self.b)) } else { (Some(self.a), self.b.checked_sub(1)) };
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::DegreeUnderflow(format!("derivative of a ({}, {}) tensor", self.a, self.b)));
        };
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n, a, b);
        for ((e, x), c) in &self.coeffs {
            let (mut e, mut x) = (e.clone(), x.clone());
            let slot = if in_e { &mut e.0[i] } else { &mut x.0[i] };
            if *slot == 0 {
                continue;
            }
            let k = *slot;
            *slot -= 1;
            out.add_term_unchecked(e, x, &f.mul(c, &f.from_u64(k as u64)));
        }
        Ok(out)
    }

    /// `d/de_i`.
    pub fn d_e(&self, i: usize) -> Result<Self> {
        self.derivative(i, true)
    }

    /// `d/dx_i`.
    pub fn d_x(&self, i: usize) -> Result<Self> {
        self.derivative(i, false)
    }

    /// Multiplication by `e_i`.
    pub fn mul_e(&self, i: usize) -> Self {
        self.mul(&Self::e(self.field.clone(), self.n, i)).expect("same n")
    }

    /// Multiplication by `x_i`.
    pub fn mul_x(&self, i: usize) -> Self {
        self.mul(&Self::x(self.field.clone(), self.n, i)).expect("same n")
    }

    /// The contraction `sum_i d/de_i d/dx_i`.
    pub fn delta(&self) -> Result<Self> {
        if self.a == 0 || self.b == 0 {
            return Err(Error::DegreeUnderflow(format!("Delta on a ({}, {}) tensor", self.a, self.b)));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n, self.a - 1, self.b - 1);
        for ((e, x), c) in &self.coeffs {
            for i in 0..self.n {
                if e.0[i] > 0 && x.0[i] > 0 {
                    let k = f.from_u64(e.0[i] as u64 * x.0[i] as u64);
                    let (mut e2, mut x2) = (e.clone(), x.clone());
                    e2.0[i] -= 1;
                    x2.0[i] -= 1;
                    out.add_term_unchecked(e2, x2, &f.mul(c, &k));
                }
            }
        }
        Ok(out)
    }

    /// `Delta^k` in closed form: the operators `d/de_i d/dx_i` commute, so
    /// `Delta^k e^alpha x^delta = sum_{|kappa|=k} k!/kappa! prod alpha_i^(kappa_i) delta_i^(kappa_i) e^(alpha-kappa) x^(delta-kappa)`
    /// with falling factorials.
    pub fn delta_pow(&self, k: u32) -> Result<Self> {
        if k > self.a || k > self.b {
            return Err(Error::DegreeUnderflow(format!("Delta^{k} on a ({}, {}) tensor", self.a, self.b)));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n, self.a - k, self.b - k);
        for ((e, x), c) in &self.coeffs {
            let bounds: Vec<u32> = e.0.iter().zip(&x.0).map(|(p, q)| *p.min(q)).collect();
            for kappa in bounded_compositions(k, &bounds) {
                let mut coeff = f.from_u64(multinomial(k, &kappa));
                for ((&p, &q), &t) in e.0.iter().zip(&x.0).zip(&kappa) {
                    coeff = f.mul(&coeff, &falling(f, p, t));
                    coeff = f.mul(&coeff, &falling(f, q, t));
                }
                let e2 = Monomial(e.0.iter().zip(&kappa).map(|(p, q)| p - q).collect());
                let x2 = Monomial(x.0.iter().zip(&kappa).map(|(p, q)| p - q).collect());
                out.add_term_unchecked(e2, x2, &f.mul(c, &coeff));
            }
        }
        Ok(out)
    }

    /// Coordinates in the monomial basis of the tensor's bidegree.
    pub fn coords(&self) -> Vec<F::Elem> {
        let basis = bimonomials(self.n, self.a, self.b);
        basis.iter().map(|t| self.coeffs.get(t).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    /// Torus weight of a monomial: `sum alpha_i eps_i - sum delta_i eps_i`.
    pub fn term_weight(n: usize, e: &Monomial, x: &Monomial) -> AmbientWeight {
        let shift = e.degree() as i64 - x.degree() as i64;
        let block: Vec<i64> =
            e.0.iter().zip(&x.0).map(|(&p, &q)| n as i64 * (p as i64 - q as i64) - shift).collect();
        AmbientWeight::from_int_vecs(&[block])
    }

    /// Weights of the monomials with non-zero coefficient.
    pub fn support(&self) -> Result<SupportSet> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        SupportSet::new(self.coeffs.keys().map(|(e, x)| Self::term_weight(self.n, e, x)))
    }
}

/// Compositions of `k` with parts bounded by `bounds`.
fn bounded_compositions(k: u32, bounds: &[u32]) -> Vec<Vec<u32>> {
    fn rec(k: u32, bounds: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if bounds.is_empty() {
            if k == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let rest: u32 = bounds[1..].iter().sum();
        let lo = k.saturating_sub(rest);
        for p in lo..=k.min(bounds[0]) {
            prefix.push(p);
            rec(k - p, &bounds[1..], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, bounds, &mut Vec::new(), &mut out);
    out
}

fn falling<F: Field>(f: &F, n: u32, k: u32) -> F::Elem {
    (0..k).fold(f.one(), |acc, i| f.mul(&acc, &f.from_u64((n - i) as u64)))
}

/// `k! / prod parts_i!` as a product of binomials; exact in `u64` for `k <= 60`.
fn multinomial(k: u32, parts: &[u32]) -> u64 {
    let mut total = 0u64;
    let mut out = 1u64;
    for &p in parts {
        total += p as u64;
        let mut b = 1u128;
        for j in 0..p as u128 {
            b = b * (total as u128 - j) / (j + 1);
        }
        out = out.checked_mul(b as u64).expect("multinomial overflow");
    }
    debug_assert_eq!(total, k as u64);
    out
}
