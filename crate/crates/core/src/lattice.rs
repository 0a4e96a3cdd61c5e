//! Character lattices of products of `SL_n` factors in sum-zero ambient
//! coordinates, their roots and Weyl groups.
//!
//! The `i`-th basis character of an `SL_n` block is `n*e_i - (1, ..., 1)`;
//! indices are 0-based throughout.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{fmt_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupShape {
    factors: Vec<usize>,
}

impl GroupShape {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidShape("no factors".into()));
        }
        if let Some(&n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidShape(format!("SL_{n} is not allowed")));
        }
        Ok(GroupShape { factors })
    }

    pub fn sl(n: usize) -> Self {
        Self::new(vec![n]).expect("n >= 2")
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|n| n - 1).sum()
    }

    /// Dimension of the group, `sum (n^2 - 1)`.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|n| n * n - 1).sum()
    }

    pub fn weyl_order(&self) -> BigUint {
        self.factors
            .iter()
            .map(|&n| (1..=n).map(BigUint::from).product::<BigUint>())
            .product()
    }

    fn check_index(&self, factor: usize, i: usize) -> Result<usize> {
        let n = *self
            .factors
            .get(factor)
            .ok_or(Error::IndexOutOfRange { index: factor, size: self.factors.len() })?;
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        Ok(n)
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.factors.iter().map(|n| format!("SL{n}")).join(" x ");
        f.write_str(&s)
    }
}

impl FromStr for GroupShape {
    type Err = Error;

    /// Accepts `SL3`, `SL3 x SL5`, `sl3xsl5`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let factors = lower
            .split('x')
            .map(|t| {
                let t = t.trim();
                t.strip_prefix("sl")
                    .and_then(|n| n.trim_start_matches('_').parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad group factor `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupShape::new(factors)
    }
}

/// A rational point of the character space, one sum-zero block per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientWeight {
    blocks: Vec<Vec<BigRational>>,
}

impl AmbientWeight {
    pub fn zero(shape: &GroupShape) -> Self {
        AmbientWeight {
            blocks: shape.factors.iter().map(|&n| vec![BigRational::zero(); n]).collect(),
        }
    }

    pub fn from_blocks(blocks: Vec<Vec<BigRational>>) -> Result<Self> {
        GroupShape::new(blocks.iter().map(Vec::len).collect())?;
        for b in &blocks {
            if !b.iter().sum::<BigRational>().is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "block ({}) does not sum to zero",
                    b.iter().map(fmt_rational).join(",")
                )));
            }
        }
        Ok(AmbientWeight { blocks })
    }

    pub fn from_int_blocks(blocks: &[&[i64]]) -> Result<Self> {
        Self::from_blocks(
            blocks
                .iter()
                .map(|b| b.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Internal constructor for blocks already known to sum to zero.
    pub(crate) fn from_blocks_unchecked(blocks: Vec<Vec<BigRational>>) -> Self {
        debug_assert!(blocks.iter().all(|b| b.iter().sum::<BigRational>().is_zero()));
        AmbientWeight { blocks }
    }

    pub(crate) fn from_int_vecs(blocks: &[Vec<i64>]) -> Self {
        Self::from_blocks_unchecked(
            blocks
                .iter()
                .map(|b| b.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Vec<BigRational>] {
        &self.blocks
    }

    pub fn block(&self, factor: usize) -> &[BigRational] {
        &self.blocks[factor]
    }

    pub fn shape(&self) -> GroupShape {
        GroupShape { factors: self.blocks.iter().map(Vec::len).collect() }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.blocks.len() == other.blocks.len()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.len() == b.len())
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{} vs {}", self.shape(), other.shape())))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Zero::is_zero)
    }

    /// Whether the weight lies in the lattice spanned by the basis characters:
    /// integer coordinates, pairwise congruent modulo `n` within each block.
    pub fn is_integral(&self) -> bool {
        self.blocks.iter().all(|b| {
            if !b.iter().all(|x| x.is_integer()) {
                return false;
            }
            let n = BigInt::from(b.len());
            let first = b[0].numer();
            b.iter().all(|x| ((x.numer() - first) % &n).is_zero())
        })
    }

    /// The flattened coordinate vector.
    pub fn coords(&self) -> Vec<BigRational> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub(crate) fn from_flat(shape: &GroupShape, flat: &[BigRational]) -> Self {
        let mut blocks = Vec::with_capacity(shape.factors.len());
        let mut at = 0;
        for &n in &shape.factors {
            blocks.push(flat[at..at + n].to_vec());
            at += n;
        }
        Self::from_blocks_unchecked(blocks)
    }

    /// The invariant inner product: sum over blocks of the dot product.
    pub fn pair(&self, other: &Self) -> Result<BigRational> {
        self.require_same_shape(other)?;
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &Self) -> BigRational {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.iter().zip(b))
            .map(|(x, y)| x * y)
            .sum()
    }

    pub fn norm2(&self) -> BigRational {
        self.dot(self)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        AmbientWeight {
            blocks: self.blocks.iter().map(|b| b.iter().map(|x| x * k).collect()).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self - other)
    }

    /// Least positive integer `k` with `k * self` integral.
    pub fn integrality_index(&self) -> u64 {
        let bound: u64 = self
            .blocks
            .iter()
            .flatten()
            .map(|x| x.denom().clone())
            .fold(BigInt::one(), num_integer::lcm)
            .try_into()
            .unwrap_or(u64::MAX);
        let ns: u64 = self.blocks.iter().map(|b| b.len() as u64).product();
        let limit = bound.saturating_mul(ns);
        (1..=limit)
            .find(|&k| self.scale(&BigRational::from_integer(k.into())).is_integral())
            .unwrap_or(limit)
    }
}

macro_rules! blockwise {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&AmbientWeight> for &AmbientWeight {
            type Output = AmbientWeight;
            /// Panics on shape mismatch; use the `checked_` variants for untrusted input.
            fn $method(self, rhs: &AmbientWeight) -> AmbientWeight {
                assert!(self.same_shape(rhs), "ambient weight shape mismatch");
                AmbientWeight {
                    blocks: self
                        .blocks
                        .iter()
                        .zip(&rhs.blocks)
                        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x $op y).collect())
                        .collect(),
                }
            }
        }
    };
}
blockwise!(Add, add, +);
blockwise!(Sub, sub, -);

impl Neg for &AmbientWeight {
    type Output = AmbientWeight;
    fn neg(self) -> AmbientWeight {
        AmbientWeight { blocks: self.blocks.iter().map(|b| b.iter().map(|x| -x).collect()).collect() }
    }
}

impl fmt::Display for AmbientWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .blocks
            .iter()
            .map(|b| format!("({})", b.iter().map(fmt_rational).join(",")))
            .join(",");
        write!(f, "[{s}]")
    }
}

impl FromStr for AmbientWeight {
    type Err = Error;

    /// Parses `[(2,-1,-1),(1/2,-1/2)]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("weight `{s}` must be bracketed")))?;
        let mut blocks = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed block in `{s}`")))?;
            let block = body[..close]
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Self::from_blocks(blocks)
    }
}

impl Serialize for AmbientWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The basis character `n*e_i - (1, ..., 1)` in block `factor`.
pub fn epsilon(shape: &GroupShape, factor: usize, i: usize) -> Result<AmbientWeight> {
    let n = shape.check_index(factor, i)?;
    let mut w = AmbientWeight::zero(shape);
    for (k, x) in w.blocks[factor].iter_mut().enumerate() {
        let v = if k == i { n as i64 - 1 } else { -1 };
        *x = BigRational::from_integer(v.into());
    }
    Ok(w)
}

/// Root `eps_i - eps_j` of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub factor: usize,
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn weight(&self, shape: &GroupShape) -> Result<AmbientWeight> {
        let n = shape.check_index(self.factor, self.i)?;
        shape.check_index(self.factor, self.j)?;
        if self.i == self.j {
            return Err(Error::InvalidArgument("a root needs i != j".into()));
        }
        let mut w = AmbientWeight::zero(shape);
        w.blocks[self.factor][self.i] = BigRational::from_integer((n as i64).into());
        w.blocks[self.factor][self.j] = BigRational::from_integer((-(n as i64)).into());
        Ok(w)
    }

    /// `<self, c>` without materializing the root.
    pub fn pair_with(&self, c: &AmbientWeight) -> BigRational {
        let b = c.block(self.factor);
        (&b[self.i] - &b[self.j]) * BigRational::from_integer((b.len() as i64).into())
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}({},{})", self.factor, self.i, self.j)
    }
}

/// All roots, ordered by factor then `(i, j)`.
pub fn roots(shape: &GroupShape) -> Vec<Root> {
    shape
        .factors
        .iter()
        .enumerate()
        .flat_map(|(factor, &n)| {
            (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| Root { factor, i, j }))
        })
        .collect()
}

pub fn positive_roots(shape: &GroupShape) -> Vec<Root> {
    roots(shape).into_iter().filter(Root::is_positive).collect()
}

/// Half the sum of positive roots, which in these coordinates is integral:
/// `n*(n-1-i) - n(n-1)/2` at position `i`.
pub fn rho(shape: &GroupShape) -> AmbientWeight {
    AmbientWeight::from_int_vecs(&shape.factors.iter().map(|&n| rho_block(n)).collect::<Vec<_>>())
}

pub(crate) fn rho_block(n: usize) -> Vec<i64> {
    let n = n as i64;
    (0..n).map(|i| n * (n - 1 - i) - n * (n - 1) / 2).collect()
}

/// Sorts every block into non-increasing order.
pub fn weyl_canonical(a: &AmbientWeight) -> AmbientWeight {
    AmbientWeight {
        blocks: a
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_by(|x, y| y.cmp(x));
                b
            })
            .collect(),
    }
}

/// A Weyl group element: one permutation per factor, `perms[k][i]` being the
/// image of position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perms: Vec<Vec<usize>>,
}

impl WeylElement {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            let mut seen = vec![false; p.len()];
            for &x in p {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidArgument(format!("{p:?} is not a permutation")));
                }
            }
        }
        Ok(WeylElement { perms })
    }

    pub fn identity(shape: &GroupShape) -> Self {
        WeylElement { perms: shape.factors.iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn sign(&self) -> i8 {
        self.perms.iter().map(|p| perm_sign(p)).product()
    }

    pub fn act(&self, a: &AmbientWeight) -> Result<AmbientWeight> {
        let ok = self.perms.len() == a.blocks.len()
            && self.perms.iter().zip(&a.blocks).all(|(p, b)| p.len() == b.len());
        if !ok {
            return Err(Error::ShapeMismatch(format!("Weyl element vs {}", a.shape())));
        }
        Ok(AmbientWeight {
            blocks: self
                .perms
                .iter()
                .zip(&a.blocks)
                .map(|(p, b)| {
                    let mut out = vec![BigRational::zero(); b.len()];
                    for (i, x) in b.iter().enumerate() {
                        out[p[i]] = x.clone();
                    }
                    out
                })
                .collect(),
        })
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement {
            perms: self
                .perms
                .iter()
                .zip(&other.perms)
                .map(|(p, q)| q.iter().map(|&x| p[x]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            perms: self
                .perms
                .iter()
                .map(|p| {
                    let mut inv = vec![0; p.len()];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i;
                    }
                    inv
                })
                .collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(shape: &GroupShape, rng: &mut R) -> Self {
        WeylElement {
            perms: shape
                .factors
                .iter()
                .map(|&n| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.shuffle(rng);
                    p
                })
                .collect(),
        }
    }

    /// Every element of the Weyl group; only sensible for small groups.
    pub fn all(shape: &GroupShape) -> Vec<Self> {
        shape
            .factors
            .iter()
            .map(|&n| (0..n).permutations(n).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|perms| WeylElement { perms })
            .collect()
    }
}

pub(crate) fn perm_sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1i8;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use rand::SeedableRng;

    fn w(blocks: &[&[i64]]) -> AmbientWeight {
        AmbientWeight::from_int_blocks(blocks).unwrap()
    }

    #[test]
    fn epsilon_pattern() {
        let sl3 = GroupShape::sl(3);
        assert_eq!(epsilon(&sl3, 0, 0).unwrap(), w(&[&[2, -1, -1]]));
        let sl5 = GroupShape::sl(5);
        assert_eq!(epsilon(&sl5, 0, 4).unwrap(), w(&[&[-1, -1, -1, -1, 4]]));
        let sum = (0..5).fold(AmbientWeight::zero(&sl5), |acc, i| &acc + &epsilon(&sl5, 0, i).unwrap());
        assert!(sum.is_zero());
        assert_eq!(epsilon(&sl3, 0, 3), Err(Error::IndexOutOfRange { index: 3, size: 3 }));
        assert!(epsilon(&sl3, 1, 0).is_err());
    }

    #[test]
    fn pairing_values() {
        let sl3 = GroupShape::sl(3);
        let e0 = epsilon(&sl3, 0, 0).unwrap();
        let e1 = epsilon(&sl3, 0, 1).unwrap();
        assert_eq!(e0.pair(&e0).unwrap(), int(6));
        assert_eq!(e0.pair(&e1).unwrap(), int(-3));
        let other = AmbientWeight::zero(&GroupShape::sl(2));
        assert!(matches!(e0.pair(&other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(&GroupShape::sl(3)).len(), 6);
        let s = GroupShape::new(vec![5, 3]).unwrap();
        let rs = roots(&s);
        assert_eq!(rs.len(), 26);
        let norms: Vec<_> = rs.iter().map(|r| r.weight(&s).unwrap().norm2()).collect();
        assert!(rs.iter().zip(&norms).all(|(r, n)| *n == int(2 * (s.factors()[r.factor] as i64).pow(2))));
        for r in &rs {
            let neg = Root { factor: r.factor, i: r.j, j: r.i };
            assert!(rs.contains(&neg));
            assert_eq!(r.weight(&s).unwrap().block(r.factor).iter().sum::<BigRational>(), int(0));
        }
    }

    #[test]
    fn canonical_sorting() {
        assert_eq!(weyl_canonical(&w(&[&[-1, 2, -1]])), w(&[&[2, -1, -1]]));
        let sorted = w(&[&[2, -1, -1], &[1, -1]]);
        assert_eq!(weyl_canonical(&sorted), sorted);
    }

    #[test]
    fn rho_sl3() {
        assert_eq!(rho(&GroupShape::sl(3)), w(&[&[3, 0, -3]]));
        assert_eq!(rho(&GroupShape::sl(2)), w(&[&[1, -1]]));
    }

    #[test]
    fn integrality() {
        let sl3 = GroupShape::sl(3);
        assert!(epsilon(&sl3, 0, 1).unwrap().is_integral());
        assert!(!w(&[&[1, 0, -1]]).is_integral());
        assert!(w(&[&[3, 0, -3]]).is_integral());
        let half = epsilon(&sl3, 0, 0).unwrap().scale(&rat(1, 2));
        assert!(!half.is_integral());
        assert_eq!(half.integrality_index(), 2);
        assert_eq!(w(&[&[1, 0, -1]]).integrality_index(), 3);
    }

    #[test]
    fn text_round_trip() {
        let a: AmbientWeight = "[(2,-1,-1),(1/2,-1/2)]".parse().unwrap();
        assert_eq!(a.to_string(), "[(2,-1,-1),(1/2,-1/2)]");
        assert!("[(1,1)]".parse::<AmbientWeight>().is_err());
        assert!("(1,-1)".parse::<AmbientWeight>().is_err());
        let g: GroupShape = "SL3 x SL5".parse().unwrap();
        assert_eq!(g.factors(), &[3, 5]);
        assert_eq!(g.to_string(), "SL3 x SL5");
        assert!("SL1".parse::<GroupShape>().is_err());
    }

    #[test]
    fn weyl_group_basics() {
        let s = GroupShape::new(vec![3, 2]).unwrap();
        let all = WeylElement::all(&s);
        assert_eq!(all.len(), 12);
        assert_eq!(s.weyl_order(), BigUint::from(12u32));
        assert_eq!(all.iter().map(|w| w.sign() as i32).sum::<i32>(), 0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = w(&[&[2, 1, -3], &[1, -1]]);
        for _ in 0..20 {
            let g = WeylElement::random(&s, &mut rng);
            let h = WeylElement::random(&s, &mut rng);
            let gh = g.compose(&h).act(&a).unwrap();
            assert_eq!(gh, g.act(&h.act(&a).unwrap()).unwrap());
            assert_eq!(g.inverse().act(&g.act(&a).unwrap()).unwrap(), a);
            assert_eq!(g.compose(&h).sign(), g.sign() * h.sign());
        }
        assert!(WeylElement::new(vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(GroupShape::new(vec![]).is_err());
        assert!(GroupShape::new(vec![1]).is_err());
        let s = GroupShape::new(vec![5, 3]).unwrap();
        assert_eq!(s.rank(), 6);
        assert_eq!(s.dim(), 32);
    }
}
