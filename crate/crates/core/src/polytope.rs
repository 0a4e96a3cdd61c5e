//! Supports, exact min-norm points of weight polytopes, face lattices of
//! polytopes and cones, and torus instability.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::lattice::{AmbientWeight, GroupShape, WeylElement};
use crate::linalg::Matrix;

type Q = BigRational;

/// A finite set of weights, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SupportSet {
    weights: Vec<AmbientWeight>,
}

impl SupportSet {
    pub fn new(weights: impl IntoIterator<Item = AmbientWeight>) -> Result<Self> {
        let set: BTreeSet<AmbientWeight> = weights.into_iter().collect();
        let weights: Vec<_> = set.into_iter().collect();
        if let Some(first) = weights.first() {
            if let Some(bad) = weights.iter().find(|w| !w.same_shape(first)) {
                return Err(Error::ShapeMismatch(format!("{bad} vs {first}")));
            }
        }
        Ok(SupportSet { weights })
    }

    pub fn weights(&self) -> &[AmbientWeight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, w: &AmbientWeight) -> bool {
        self.weights.binary_search(w).is_ok()
    }

    pub fn shape(&self) -> Option<GroupShape> {
        self.weights.first().map(AmbientWeight::shape)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.weights.iter().all(|w| other.contains(w))
    }

    pub fn act(&self, g: &WeylElement) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| g.act(w)).collect::<Result<Vec<_>>>()?)
    }
}

/// A vector given by its coordinates in a weight basis; several basis vectors
/// may share a weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    shape: GroupShape,
    terms: Vec<(AmbientWeight, Q)>,
}

impl WeightVector {
    pub fn new(shape: &GroupShape, terms: Vec<(AmbientWeight, Q)>) -> Result<Self> {
        if let Some((w, _)) = terms.iter().find(|(w, _)| w.shape() != *shape) {
            return Err(Error::ShapeMismatch(format!("{w} in a {shape} vector")));
        }
        Ok(WeightVector { shape: shape.clone(), terms })
    }

    /// The binary form `sum coeffs[k] x^k y^(d-k)` for `SL_2`; the monomial
    /// `x^k y^(d-k)` has weight `(d - 2k) eps_1`.
    pub fn binary_form(coeffs: &[Q]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a binary form needs at least one coefficient".into()));
        }
        let shape = GroupShape::sl(2);
        let d = coeffs.len() as i64 - 1;
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let x = d - 2 * k as i64;
                (AmbientWeight::from_int_vecs(&[vec![x, -x]]), a.clone())
            })
            .collect();
        Ok(WeightVector { shape, terms })
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn terms(&self) -> &[(AmbientWeight, Q)] {
        &self.terms
    }
}

pub fn support(v: &WeightVector) -> Result<SupportSet> {
    let s = SupportSet::new(v.terms.iter().filter(|(_, a)| !a.is_zero()).map(|(w, _)| w.clone()))?;
    if s.is_empty() {
        return Err(Error::ZeroVector);
    }
    Ok(s)
}

/// The closest point of a convex hull to the origin, with a convex
/// combination of hull points certifying membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinNormPoint {
    pub point: AmbientWeight,
    /// Weights with strictly positive barycentric coefficients summing to one.
    #[serde(serialize_with = "crate::field::ser::weighted")]
    pub combination: Vec<(AmbientWeight, Q)>,
}

impl MinNormPoint {
    /// Checks the barycentric certificate and optimality `<x - c, c> >= 0` on `s`.
    pub fn verify(&self, s: &SupportSet) -> bool {
        let total: Q = self.combination.iter().map(|(_, t)| t.clone()).sum();
        if !total.is_one() || self.combination.iter().any(|(w, t)| !t.is_positive() || !s.contains(w)) {
            return false;
        }
        let Some(shape) = s.shape() else { return false };
        let sum = self.combination.iter().fold(AmbientWeight::zero(&shape), |acc, (w, t)| &acc + &w.scale(t));
        if sum != self.point {
            return false;
        }
        let cc = self.point.norm2();
        s.weights().iter().all(|x| x.dot(&self.point) >= cc)
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(points: &[Vec<Q>], idx: &[usize], coeffs: &[Q]) -> Vec<Q> {
    let dim = points[idx[0]].len();
    let mut out = vec![Q::zero(); dim];
    for (&i, c) in idx.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(&points[i]) {
            *o += x * c;
        }
    }
    out
}

/// Barycentric coordinates of the point of the affine hull of `pts[idx]`
/// closest to the origin; `None` when the points are affinely dependent.
fn affine_min_coeffs(points: &[Vec<Q>], idx: &[usize]) -> Option<Vec<Q>> {
    let k = idx.len();
    let mut m = Matrix::zeros(Rationals, k + 1, k + 1);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            m.set(r, c, dot(&points[i], &points[j]));
        }
        m.set(r, k, Q::one());
        m.set(k, r, Q::one());
    }
    let mut rhs = vec![Q::zero(); k + 1];
    rhs[k] = Q::one();
    if m.rank() < k + 1 {
        return None;
    }
    let sol = m.solve(&rhs)?;
    Some(sol[..k].to_vec())
}

/// The point of the affine hull of `weights` closest to the origin, with its
/// barycentric coordinates; `None` for affinely dependent input.
pub fn affine_min_point(weights: &[AmbientWeight]) -> Option<(AmbientWeight, Vec<Q>)> {
    let first = weights.first()?;
    let shape = first.shape();
    let pts: Vec<Vec<Q>> = weights.iter().map(AmbientWeight::coords).collect();
    let idx: Vec<usize> = (0..pts.len()).collect();
    let mu = affine_min_coeffs(&pts, &idx)?;
    let p = combine(&pts, &idx, &mu);
    Some((AmbientWeight::from_flat(&shape, &p), mu))
}

/// Wolfe's minimum-norm-point algorithm in exact arithmetic. Ties in the
/// linear oracle go to the earliest weight in the set's order.
pub fn min_norm_point(s: &SupportSet) -> Result<MinNormPoint> {
    let shape = s.shape().ok_or(Error::EmptySupport)?;
    let pts: Vec<Vec<Q>> = s.weights().iter().map(AmbientWeight::coords).collect();
    let norms: Vec<Q> = pts.iter().map(|p| dot(p, p)).collect();
    let start = (0..pts.len()).min_by(|&a, &b| norms[a].cmp(&norms[b])).expect("non-empty");
    let mut corral = vec![start];
    let mut lam = vec![Q::one()];
    let mut x = pts[start].clone();
    loop {
        let xx = dot(&x, &x);
        let vals: Vec<Q> = pts.iter().map(|p| dot(&x, p)).collect();
        let j = (0..pts.len()).min_by(|&a, &b| vals[a].cmp(&vals[b])).expect("non-empty");
        if vals[j] >= xx || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lam.push(Q::zero());
        loop {
            let mu = affine_min_coeffs(&pts, &corral).expect("Wolfe corral stays affinely independent");
            if mu.iter().all(Q::is_positive) {
                x = combine(&pts, &corral, &mu);
                lam = mu;
                break;
            }
            let theta = lam
                .iter()
                .zip(&mu)
                .filter(|(_, m)| !m.is_positive())
                .map(|(l, m)| if l.is_zero() { Q::zero() } else { l / (l - m) })
                .min()
                .expect("some coefficient is non-positive");
            let one_minus = Q::one() - &theta;
            lam = lam.iter().zip(&mu).map(|(l, m)| l * &one_minus + m * &theta).collect();
            let keep: Vec<bool> = lam.iter().map(Q::is_positive).collect();
            corral = corral.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| *c).collect();
            lam = lam.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(l, _)| l).collect();
        }
    }
    let mut combination: Vec<(AmbientWeight, Q)> =
        corral.iter().zip(lam).map(|(&i, t)| (s.weights()[i].clone(), t)).collect();
    combination.sort();
    Ok(MinNormPoint { point: AmbientWeight::from_flat(&shape, &x), combination })
}

pub fn is_t_unstable(v: &WeightVector) -> Result<bool> {
    Ok(!min_norm_point(&support(v)?)?.point.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Halfspace {
    /// `<x, c> >= <c, c>`
    Plus,
    /// `<x, c> = <c, c>`
    Zero,
}

pub fn weights_in_halfspace(s: &SupportSet, c: &AmbientWeight, which: Halfspace) -> Result<SupportSet> {
    if c.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if let Some(bad) = s.weights().iter().find(|w| !w.same_shape(c)) {
        return Err(Error::ShapeMismatch(format!("{bad} vs {c}")));
    }
    let cc = c.norm2();
    Ok(SupportSet {
        weights: s
            .weights()
            .iter()
            .filter(|w| {
                let v = w.dot(c);
                match which {
                    Halfspace::Plus => v >= cc,
                    Halfspace::Zero => v == cc,
                }
            })
            .cloned()
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceMode {
    Polytope,
    Cone,
}

/// A face: the members minimize `functional` with value `offset`, all other
/// weights give strictly larger values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceDescriptor {
    pub functional: AmbientWeight,
    #[serde(serialize_with = "crate::field::ser::rational")]
    pub offset: Q,
    /// Indices into the weight list.
    pub members: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    pub mode: FaceMode,
    pub weights: Vec<AmbientWeight>,
    pub faces: Vec<FaceDescriptor>,
    /// Cover relations `(smaller, larger)` as face indices.
    pub edges: Vec<(usize, usize)>,
}

impl FaceLattice {
    /// Alternating count of faces by dimension (empty face excluded).
    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().map(|f| if f.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Number of faces of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        (0..=top).map(|d| self.faces.iter().filter(|f| f.dim == d).count()).collect()
    }

    /// Checks the defining equalities and strict inequalities of every face.
    pub fn verify(&self) -> bool {
        self.faces.iter().all(|f| {
            self.weights.iter().enumerate().all(|(i, w)| {
                let v = w.dot(&f.functional);
                if f.members.contains(&i) {
                    v == f.offset
                } else {
                    v > f.offset
                }
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("face lattices serialize")
    }
}

fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(Rationals, vectors[0].len(), vectors.to_vec()).rank()
}

/// Row basis of the span.
fn span_basis(vectors: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(Rationals, dim, vectors.to_vec()).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Normal inside `span(basis)` orthogonal to every vector in `constraints`,
/// if it is unique up to scale.
fn unique_normal(basis: &[Vec<Q>], constraints: &[Vec<Q>]) -> Option<Vec<Q>> {
    let k = basis.len();
    let rows: Vec<Vec<Q>> = constraints.iter().map(|c| basis.iter().map(|b| dot(b, c)).collect()).collect();
    let m = Matrix::from_rows(Rationals, k, rows);
    let ker = m.kernel();
    if ker.len() != 1 {
        return None;
    }
    let coeffs = &ker[0];
    let dim = basis[0].len();
    let mut a = vec![Q::zero(); dim];
    for (c, b) in coeffs.iter().zip(basis) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    Some(a)
}

/// All non-empty faces of the convex hull (polytope mode) or of the cone
/// generated by the weights (cone mode, where the apex has no members).
pub fn faces(s: &SupportSet, mode: FaceMode) -> Result<FaceLattice> {
    let shape = s.shape().ok_or(Error::EmptySupport)?;
    let pts: Vec<Vec<Q>> = s.weights().iter().map(AmbientWeight::coords).collect();
    let dim = pts[0].len();
    let n = pts.len();
    let origin = match mode {
        FaceMode::Polytope => pts[0].clone(),
        FaceMode::Cone => vec![Q::zero(); dim],
    };
    let rel = |p: &Vec<Q>| -> Vec<Q> { p.iter().zip(&origin).map(|(x, o)| x - o).collect() };
    let rel_pts: Vec<Vec<Q>> = pts.iter().map(rel).collect();
    let basis = span_basis(&rel_pts, dim);
    let k = basis.len();

    // facet member set -> (normal, offset)
    let mut facets: BTreeMap<Vec<usize>, (Vec<Q>, Q)> = BTreeMap::new();
    if k > 0 {
        let subset_size = match mode {
            FaceMode::Polytope => k,
            FaceMode::Cone => k - 1,
        };
        for t in (0..n).combinations(subset_size) {
            if facets.keys().any(|m| t.iter().all(|i| m.binary_search(i).is_ok())) {
                continue;
            }
            let constraints: Vec<Vec<Q>> = match mode {
                FaceMode::Polytope => t[1..].iter().map(|&i| pts[i].iter().zip(&pts[t[0]]).map(|(x, y)| x - y).collect()).collect(),
                FaceMode::Cone => t.iter().map(|&i| pts[i].clone()).collect(),
            };
            if rank_of(&constraints) != constraints.len() {
                continue;
            }
            let Some(mut a) = unique_normal(&basis, &constraints) else { continue };
            let mut b = match mode {
                FaceMode::Polytope => dot(&a, &pts[t[0]]),
                FaceMode::Cone => Q::zero(),
            };
            let vals: Vec<Q> = pts.iter().map(|p| dot(&a, p)).collect();
            let members: Vec<usize> = (0..n).filter(|&i| vals[i] == b).collect();
            if vals.iter().all(|v| *v <= b) && !vals.iter().all(|v| *v >= b) {
                a.iter_mut().for_each(|x| *x = -x.clone());
                b = -b;
            } else if !vals.iter().all(|v| *v >= b) {
                continue;
            }
            facets.entry(members).or_insert((a, b));
        }
    }

    let mut sets: BTreeSet<Vec<usize>> = facets.keys().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in facets.keys() {
            let inter: Vec<usize> = f.iter().filter(|i| g.binary_search(i).is_ok()).copied().collect();
            let keep = !inter.is_empty() || mode == FaceMode::Cone;
            if keep && !sets.contains(&inter) {
                sets.insert(inter.clone());
                frontier.push(inter);
            }
        }
    }
    sets.insert((0..n).collect());

    let face_dim = |members: &[usize]| -> usize {
        match mode {
            FaceMode::Polytope => {
                let base = &pts[members[0]];
                let diffs: Vec<Vec<Q>> =
                    members[1..].iter().map(|&i| pts[i].iter().zip(base).map(|(x, y)| x - y).collect()).collect();
                rank_of(&diffs)
            }
            FaceMode::Cone => rank_of(&members.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()),
        }
    };

    let mut list: Vec<Vec<usize>> = sets.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let faces: Vec<FaceDescriptor> = list
        .iter()
        .map(|members| {
            let mut a = vec![Q::zero(); dim];
            let mut b = Q::zero();
            for (fm, (fa, fb)) in &facets {
                if members.iter().all(|i| fm.binary_search(i).is_ok()) && members.len() < n {
                    for (x, y) in a.iter_mut().zip(fa) {
                        *x += y;
                    }
                    b += fb;
                }
            }
            FaceDescriptor {
                functional: AmbientWeight::from_flat(&shape, &a),
                offset: b,
                members: members.clone(),
                dim: face_dim(members),
            }
        })
        .collect();

    let mut edges = Vec::new();
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|i| b.binary_search(i).is_ok());
    for i in 0..faces.len() {
        for j in 0..faces.len() {
            if subset(&faces[i].members, &faces[j].members)
                && !(0..faces.len()).any(|m| subset(&faces[i].members, &faces[m].members) && subset(&faces[m].members, &faces[j].members))
            {
                edges.push((i, j));
            }
        }
    }
    Ok(FaceLattice { mode, weights: s.weights().to_vec(), faces, edges })
}
