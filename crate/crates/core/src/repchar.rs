//! Characters of type-A groups: Weyl dimensions, Freudenthal weight
//! multiplicities, tensor/symmetric/exterior powers, multiplicities of
//! irreducibles, center characters and torus-invariant monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{rho, rho_block, AmbientWeight, GroupShape};

/// Highest-weight labels, one list of `n - 1` fundamental-weight
/// coefficients per `SL_n` factor. `V(1,0)` is the standard representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrLabel {
    labels: Vec<Vec<u32>>,
}

impl IrrLabel {
    pub fn new(shape: &GroupShape, labels: Vec<Vec<u32>>) -> Result<Self> {
        let ok = labels.len() == shape.factors().len()
            && labels.iter().zip(shape.factors()).all(|(l, &n)| l.len() == n - 1);
        if !ok {
            return Err(Error::InvalidLabel(format!("{labels:?} does not fit {shape}")));
        }
        Ok(IrrLabel { labels })
    }

    /// Label for a product group; each factor size is inferred as `len + 1`.
    pub fn from_factors(labels: Vec<Vec<u32>>) -> Result<Self> {
        let shape = GroupShape::new(labels.iter().map(|l| l.len() + 1).collect())?;
        Self::new(&shape, labels)
    }

    pub fn sl3(a: u32, b: u32) -> Self {
        IrrLabel { labels: vec![vec![a, b]] }
    }

    /// `Sym^d` of the standard representation of `SL_2`.
    pub fn sl2(d: u32) -> Self {
        IrrLabel { labels: vec![vec![d]] }
    }

    pub fn trivial(shape: &GroupShape) -> Self {
        IrrLabel { labels: shape.factors().iter().map(|&n| vec![0; n - 1]).collect() }
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn shape(&self) -> GroupShape {
        GroupShape::new(self.labels.iter().map(|l| l.len() + 1).collect()).expect("valid by construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.iter().flatten().all(|&x| x == 0)
    }

    /// The dual module: labels reversed in every factor.
    pub fn dual(&self) -> Self {
        IrrLabel { labels: self.labels.iter().map(|l| l.iter().rev().copied().collect()).collect() }
    }

    pub fn highest_weight(&self) -> AmbientWeight {
        AmbientWeight::from_int_vecs(&self.highest_weight_blocks())
    }

    fn highest_weight_blocks(&self) -> Vec<Vec<i64>> {
        self.labels.iter().map(|l| label_to_ambient(l)).collect()
    }

    /// Inverse of [`IrrLabel::highest_weight`]; the weight must be integral and dominant.
    pub fn from_dominant(w: &AmbientWeight) -> Result<Self> {
        if !w.is_integral() {
            return Err(Error::InvalidLabel(format!("{w} is not integral")));
        }
        let mut labels = Vec::new();
        for b in w.blocks() {
            let n = BigInt::from(b.len());
            let mut l = Vec::new();
            for t in 0..b.len() - 1 {
                let d = &b[t] - &b[t + 1];
                if d.is_negative() {
                    return Err(Error::InvalidLabel(format!("{w} is not dominant")));
                }
                let q = d.to_integer() / &n;
                l.push(q.to_u32().ok_or_else(|| Error::InvalidLabel(format!("label overflow in {w}")))?);
            }
            labels.push(l);
        }
        Ok(IrrLabel { labels })
    }
}

fn label_to_ambient(l: &[u32]) -> Vec<i64> {
    let n = l.len() as i64 + 1;
    let shift: i64 = l.iter().enumerate().map(|(t, &x)| (t as i64 + 1) * x as i64).sum();
    (0..n as usize)
        .map(|i| n * l[i..].iter().map(|&x| x as i64).sum::<i64>() - shift)
        .collect()
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.labels.iter().map(|l| l.iter().join(",")).join(";");
        write!(f, "V({s})")
    }
}

impl FromStr for IrrLabel {
    type Err = Error;

    /// Parses `V(14,1)`, `14,1` or per-factor lists separated by `;`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("V(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let labels = t
            .split(';')
            .map(|f| {
                f.split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| Error::InvalidLabel(format!("bad label `{s}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_factors(labels)
    }
}

impl Serialize for IrrLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Weyl dimension formula. Panics if the dimension exceeds `u64`.
pub fn weyl_dim(label: &IrrLabel) -> u64 {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for l in &label.labels {
        let n = l.len() + 1;
        let hw = label_to_ambient(l);
        let r = rho_block(n);
        for i in 0..n {
            for j in i + 1..n {
                num *= (hw[i] + r[i]) - (hw[j] + r[j]);
                den *= r[i] - r[j];
            }
        }
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q.to_u64().expect("dimension fits in u64")
}

/// A weight multiset. Multiplicities are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMultiset {
    shape: GroupShape,
    entries: BTreeMap<AmbientWeight, i64>,
}

impl CharacterMultiset {
    pub fn trivial(shape: &GroupShape) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(AmbientWeight::zero(shape), 1);
        CharacterMultiset { shape: shape.clone(), entries }
    }

    /// The zero module.
    pub fn empty(shape: &GroupShape) -> Self {
        CharacterMultiset { shape: shape.clone(), entries: BTreeMap::new() }
    }

    pub fn from_entries(shape: &GroupShape, entries: impl IntoIterator<Item = (AmbientWeight, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, m) in entries {
            if w.shape() != *shape {
                return Err(Error::ShapeMismatch(format!("{w} in a {shape} character")));
            }
            if m < 1 {
                return Err(Error::NotACharacter(format!("multiplicity {m} at {w}")));
            }
            *map.entry(w).or_insert(0) += m;
        }
        Ok(CharacterMultiset { shape: shape.clone(), entries: map })
    }

    pub fn from_weights(shape: &GroupShape, weights: impl IntoIterator<Item = AmbientWeight>) -> Result<Self> {
        Self::from_entries(shape, weights.into_iter().map(|w| (w, 1)))
    }

    /// The standard representation of one factor, trivial on the others.
    pub fn standard(shape: &GroupShape, factor: usize) -> Result<Self> {
        let n = *shape
            .factors()
            .get(factor)
            .ok_or(Error::IndexOutOfRange { index: factor, size: shape.factors().len() })?;
        Self::from_weights(shape, (0..n).map(|i| crate::lattice::epsilon(shape, factor, i).expect("in range")))
    }

    fn from_map(shape: GroupShape, map: BTreeMap<AmbientWeight, i64>) -> Result<Self> {
        if let Some((w, m)) = map.iter().find(|(_, &m)| m < 0) {
            return Err(Error::NotACharacter(format!("multiplicity {m} at {w}")));
        }
        let entries = map.into_iter().filter(|(_, m)| *m != 0).collect();
        Ok(CharacterMultiset { shape, entries })
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn dim(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AmbientWeight, i64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn weights(&self) -> impl Iterator<Item = &AmbientWeight> {
        self.entries.keys()
    }

    pub fn multiplicity(&self, w: &AmbientWeight) -> i64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    fn require_shape(&self, other: &Self) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, other.shape)))
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.require_shape(other)?;
        let mut map = self.entries.clone();
        for (w, &m) in &other.entries {
            *map.entry(w.clone()).or_insert(0) += m;
        }
        Ok(CharacterMultiset { shape: self.shape.clone(), entries: map })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.require_shape(other)?;
        Ok(CharacterMultiset { shape: self.shape.clone(), entries: convolve(&self.entries, &other.entries) })
    }

    pub fn dual(&self) -> Self {
        CharacterMultiset {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|(w, &m)| (-w, m)).collect(),
        }
    }

    /// Adams operation: every weight scaled by `k`.
    fn adams(&self, k: i64) -> BTreeMap<AmbientWeight, i64> {
        let kq = BigRational::from_integer(k.into());
        self.entries.iter().map(|(w, &m)| (w.scale(&kq), m)).collect()
    }

    pub fn sym_power(&self, d: usize) -> Self {
        self.newton_power(d, false)
    }

    pub fn ext_power(&self, d: usize) -> Self {
        self.newton_power(d, true)
    }

    /// `d * P^d = sum_k s^(k-1) psi^k * P^(d-k)` with `s = -1` for exterior powers.
    fn newton_power(&self, d: usize, alternating: bool) -> Self {
        let mut powers: Vec<BTreeMap<AmbientWeight, i64>> = vec![Self::trivial(&self.shape).entries];
        let adams: Vec<_> = (1..=d).map(|k| self.adams(k as i64)).collect();
        for j in 1..=d {
            let mut acc: BTreeMap<AmbientWeight, i64> = BTreeMap::new();
            for k in 1..=j {
                let sign = if alternating && k % 2 == 0 { -1 } else { 1 };
                for (w, m) in convolve(&adams[k - 1], &powers[j - k]) {
                    *acc.entry(w).or_insert(0) += sign * m;
                }
            }
            let next: BTreeMap<_, _> = acc
                .into_iter()
                .filter(|(_, m)| *m != 0)
                .map(|(w, m)| {
                    assert!(m % j as i64 == 0, "Newton recursion left a non-integral multiplicity");
                    (w, m / j as i64)
                })
                .collect();
            powers.push(next);
        }
        let top = powers.pop().expect("non-empty");
        Self::from_map(self.shape.clone(), top).expect("power characters are genuine")
    }

    /// Whether every Weyl group element preserves the multiplicities.
    /// Checking the adjacent transpositions suffices.
    pub fn is_w_invariant(&self) -> bool {
        self.entries.iter().all(|(w, &m)| {
            w.blocks().iter().enumerate().all(|(f, b)| {
                (0..b.len() - 1).all(|i| {
                    let mut blocks = w.blocks().to_vec();
                    blocks[f].swap(i, i + 1);
                    self.multiplicity(&AmbientWeight::from_blocks_unchecked(blocks)) == m
                })
            })
        })
    }

    /// Integer form of the entries with every coordinate multiplied by `scale`,
    /// flattened across blocks. `None` if some coordinate stays fractional.
    pub(crate) fn scaled_int_entries(&self, scale: i64) -> Option<Vec<(Vec<i64>, i64)>> {
        let s = BigInt::from(scale);
        self.entries
            .iter()
            .map(|(w, &m)| {
                let v = w
                    .blocks()
                    .iter()
                    .flatten()
                    .map(|x| {
                        let y = x * &s;
                        if y.is_integer() {
                            y.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some((v, m))
            })
            .collect()
    }

    /// Least common denominator of all coordinates.
    pub(crate) fn denominator(&self) -> i64 {
        self.entries
            .keys()
            .flat_map(|w| w.blocks().iter().flatten())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_i64()
            .expect("denominator fits in i64")
    }
}

impl Serialize for CharacterMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (w, m) in &self.entries {
            seq.serialize_element(&(w.to_string(), m))?;
        }
        seq.end()
    }
}

fn convolve(a: &BTreeMap<AmbientWeight, i64>, b: &BTreeMap<AmbientWeight, i64>) -> BTreeMap<AmbientWeight, i64> {
    let mut out = BTreeMap::new();
    for (x, &m) in a {
        for (y, &n) in b {
            *out.entry(x + y).or_insert(0) += m * n;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

pub fn tensor(m: &CharacterMultiset, n: &CharacterMultiset) -> Result<CharacterMultiset> {
    m.tensor(n)
}

pub fn sym_power(m: &CharacterMultiset, d: usize) -> CharacterMultiset {
    m.sym_power(d)
}

pub fn ext_power(m: &CharacterMultiset, d: usize) -> CharacterMultiset {
    m.ext_power(d)
}

/// Dominant weights of `V(top)` for one `SL_n` factor with their
/// multiplicities, by Freudenthal's recursion.
fn dominant_multiplicities(top: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let n = top.len();
    let r = rho_block(n);
    let ni = n as i64;
    let pos: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();

    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = vec![top.to_vec()];
    seen.insert(top.to_vec(), ());
    let mut all = Vec::new();
    while let Some(mu) = queue.pop() {
        for &(i, j) in &pos {
            let mut nu = mu.clone();
            nu[i] -= ni;
            nu[j] += ni;
            if nu.windows(2).all(|w| w[0] >= w[1]) && !seen.contains_key(&nu) {
                seen.insert(nu.clone(), ());
                queue.push(nu);
            }
        }
        all.push(mu);
    }
    let height = |mu: &[i64]| dot(mu, &r);
    all.sort_by(|a, b| height(b).cmp(&height(a)).then_with(|| b.cmp(a)));

    let shifted_norm = |mu: &[i64]| {
        let v: Vec<i64> = mu.iter().zip(&r).map(|(x, y)| x + y).collect();
        dot(&v, &v)
    };
    let top_norm = shifted_norm(top);
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    for mu in &all {
        if mu.as_slice() == top {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut num = 0i64;
        for &(i, j) in &pos {
            let mut v = mu.clone();
            loop {
                v[i] += ni;
                v[j] -= ni;
                let mut dom = v.clone();
                dom.sort_unstable_by(|a, b| b.cmp(a));
                let Some(&m) = mult.get(&dom) else { break };
                num += (v[i] - v[j]) * ni * m;
            }
        }
        let den = top_norm - shifted_norm(mu);
        assert!(den > 0 && (2 * num) % den == 0, "Freudenthal recursion is not integral");
        mult.insert(mu.clone(), 2 * num / den);
    }
    all.into_iter().map(|mu| {
        let m = mult[&mu];
        (mu, m)
    }).collect()
}

/// All distinct rearrangements of `v`.
fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Per-factor integer weight lists `(weight, multiplicity)`.
fn factor_weights(label: &IrrLabel) -> Vec<Vec<(Vec<i64>, i64)>> {
    label
        .labels
        .iter()
        .map(|l| {
            dominant_multiplicities(&label_to_ambient(l))
                .into_iter()
                .flat_map(|(mu, m)| distinct_permutations(&mu).into_iter().map(move |w| (w, m)))
                .collect()
        })
        .collect()
}

/// Flattened integer weights of `V(label)`.
pub(crate) fn int_character(label: &IrrLabel) -> Vec<(Vec<i64>, i64)> {
    factor_weights(label)
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| {
            let m = parts.iter().map(|(_, m)| m).product();
            (parts.into_iter().flat_map(|(w, _)| w).collect(), m)
        })
        .collect()
}

pub fn irr_character(label: &IrrLabel) -> CharacterMultiset {
    let shape = label.shape();
    let entries = int_character(label)
        .into_iter()
        .map(|(w, m)| {
            let flat: Vec<BigRational> = w.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            (AmbientWeight::from_flat(&shape, &flat), m)
        })
        .collect();
    CharacterMultiset { shape, entries }
}

/// Blocks of positions permuted by a Weyl group of type A, as flat indices.
pub(crate) fn factor_groups(shape: &GroupShape) -> Vec<Vec<usize>> {
    let mut at = 0;
    shape
        .factors()
        .iter()
        .map(|&n| {
            let g = (at..at + n).collect();
            at += n;
            g
        })
        .collect()
}

/// Sorts `v` into non-increasing order inside each group and returns the
/// permutation sign, or `None` if some group has a repeated value.
fn fold(v: &mut [i64], groups: &[Vec<usize>]) -> Option<i8> {
    let mut sign = 1i8;
    for g in groups {
        let mut vals: Vec<i64> = g.iter().map(|&p| v[p]).collect();
        let mut inversions = 0usize;
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                match vals[i].cmp(&vals[j]) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Less => inversions += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        if inversions % 2 == 1 {
            sign = -sign;
        }
        vals.sort_unstable_by(|a, b| b.cmp(a));
        for (&p, x) in g.iter().zip(vals) {
            v[p] = x;
        }
    }
    Some(sign)
}

/// `sum sign(w) * m` over entries `mu` with `w(mu + shift) = target`, the
/// Weyl group being the product of symmetric groups on `groups`.
pub(crate) fn alternating_count(entries: &[(Vec<i64>, i64)], shift: &[i64], target: &[i64], groups: &[Vec<usize>]) -> i64 {
    let mut total = 0;
    let mut v = vec![0i64; shift.len()];
    for (w, m) in entries {
        for (k, x) in v.iter_mut().enumerate() {
            *x = w[k] + shift[k];
        }
        if let Some(s) = fold(&mut v, groups) {
            if v == target {
                total += s as i64 * m;
            }
        }
    }
    total
}

fn flat_ints(w: &AmbientWeight, scale: i64) -> Vec<i64> {
    w.blocks()
        .iter()
        .flatten()
        .map(|x| (x * BigRational::from_integer(scale.into())).to_integer().to_i64().expect("small weight"))
        .collect()
}

/// Multiplicity of `V(label)` in the module with character `m`.
pub fn mult_in(label: &IrrLabel, m: &CharacterMultiset) -> Result<u64> {
    let shape = label.shape();
    if shape != *m.shape() {
        return Err(Error::ShapeMismatch(format!("{label} vs a {} character", m.shape())));
    }
    let scale = m.denominator();
    let entries = m.scaled_int_entries(scale).expect("denominators cleared");
    let rho = flat_ints(&rho(&shape), scale);
    let target: Vec<i64> = flat_ints(&label.highest_weight(), scale).iter().zip(&rho).map(|(a, b)| a + b).collect();
    let count = alternating_count(&entries, &rho, &target, &factor_groups(&shape));
    u64::try_from(count).map_err(|_| Error::NotACharacter(format!("multiplicity {count} of {label}")))
}

/// Multiplicity of `V(nu)` in `V(mu) (x) V(lambda)` by Racah-Speiser folding
/// over the weights of `V(lambda)`.
pub fn tensor_multiplicity(nu: &IrrLabel, mu: &IrrLabel, lambda: &IrrLabel) -> Result<u64> {
    let shape = nu.shape();
    if mu.shape() != shape || lambda.shape() != shape {
        return Err(Error::ShapeMismatch(format!("{nu}, {mu}, {lambda}")));
    }
    Ok(TensorProbe::new(lambda).multiplicity(nu, mu))
}

/// Cached weights of one irreducible, for repeated Racah-Speiser queries.
#[derive(Debug, Clone)]
pub struct TensorProbe {
    weights: Vec<(Vec<i64>, i64)>,
    rho: Vec<i64>,
    groups: Vec<Vec<usize>>,
}

impl TensorProbe {
    pub fn new(lambda: &IrrLabel) -> Self {
        let shape = lambda.shape();
        TensorProbe { weights: int_character(lambda), rho: flat_ints(&rho(&shape), 1), groups: factor_groups(&shape) }
    }

    /// Multiplicity of `V(nu)` in `V(mu) (x) V(lambda)`.
    pub fn multiplicity(&self, nu: &IrrLabel, mu: &IrrLabel) -> u64 {
        let shift: Vec<i64> = flat_ints(&mu.highest_weight(), 1).iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        let target: Vec<i64> = flat_ints(&nu.highest_weight(), 1).iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        let c = alternating_count(&self.weights, &shift, &target, &self.groups);
        u64::try_from(c).expect("tensor multiplicities are non-negative")
    }
}

/// Dimension of degree-`d` invariants.
pub fn invariant_dim(m: &CharacterMultiset, d: usize) -> Result<u64> {
    mult_in(&IrrLabel::trivial(m.shape()), &m.sym_power(d))
}

/// Irreducible decomposition by repeatedly removing the character of the
/// highest remaining dominant weight (largest height, then lexicographic).
pub fn decompose(m: &CharacterMultiset) -> Result<Vec<(IrrLabel, u64)>> {
    let shape = m.shape().clone();
    let rho = rho(&shape);
    let mut rest: BTreeMap<AmbientWeight, i64> = m.entries.clone();
    let mut out: BTreeMap<IrrLabel, u64> = BTreeMap::new();
    while !rest.is_empty() {
        let top = rest
            .keys()
            .filter(|w| w.blocks().iter().all(|b| b.windows(2).all(|p| p[0] >= p[1])))
            .max_by(|a, b| a.dot(&rho).cmp(&b.dot(&rho)).then_with(|| a.cmp(b)))
            .cloned()
            .ok_or_else(|| Error::NotACharacter("no dominant weight left".into()))?;
        let k = rest[&top];
        if k < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity at {top}")));
        }
        let label = IrrLabel::from_dominant(&top)?;
        for (w, mult) in irr_character(&label).entries {
            let e = rest.entry(w).or_insert(0);
            *e -= k * mult;
        }
        rest.retain(|_, v| *v != 0);
        *out.entry(label).or_insert(0) += k as u64;
    }
    Ok(out.into_iter().collect())
}

/// Residue of the highest weight modulo the root lattice, per factor:
/// `sum_t t * lambda_t mod n`.
pub fn center_character(label: &IrrLabel) -> Vec<u32> {
    label
        .labels
        .iter()
        .map(|l| {
            let n = l.len() as u64 + 1;
            (l.iter().enumerate().map(|(t, &x)| (t as u64 + 1) * x as u64).sum::<u64>() % n) as u32
        })
        .collect()
}

/// Class of an integral weight modulo the root lattice, per factor.
pub fn weight_class(w: &AmbientWeight) -> Result<Vec<u32>> {
    if !w.is_integral() {
        return Err(Error::InvalidArgument(format!("{w} is not integral")));
    }
    Ok(w.blocks()
        .iter()
        .map(|b| {
            let n = BigInt::from(b.len());
            (-b[0].to_integer()).mod_floor(&n).to_u32().expect("residue")
        })
        .collect())
}

/// Lattice of exponent vectors of Laurent monomials invariant under a
/// diagonal torus action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusInvariants {
    /// Rows in Hermite normal form.
    pub basis: Vec<Vec<i64>>,
    pub transcendence_degree: usize,
}

/// Integer kernel of the weight matrix whose `j`-th column is the weight of
/// the `j`-th coordinate.
pub fn diagonal_torus_invariants(weights: &[Vec<i64>]) -> Result<TorusInvariants> {
    let m = weights.len();
    let r = weights.first().map_or(0, Vec::len);
    if weights.iter().any(|w| w.len() != r) {
        return Err(Error::ShapeMismatch("weights of different ranks".into()));
    }
    // Columns of [A; I] under unimodular column operations.
    let mut cols: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut c: Vec<BigInt> = weights[j].iter().map(|&x| BigInt::from(x)).collect();
            c.extend((0..m).map(|k| BigInt::from((k == j) as i64)));
            c
        })
        .collect();
    let mut pc = 0;
    for row in 0..r {
        loop {
            let nz: Vec<usize> = (pc..m).filter(|&j| !cols[j][row].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(pc, j);
                    pc += 1;
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| cols[j][row].abs()).expect("non-empty");
            cols.swap(pc, piv);
            for j in pc + 1..m {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[pc][row]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[pc]) {
                    *x -= &q * y;
                }
            }
        }
    }
    let mut basis: Vec<Vec<BigInt>> = cols[pc..].iter().map(|c| c[r..].to_vec()).collect();
    hermite_rows(&mut basis);
    let basis = basis
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::InvalidArgument("kernel entry overflows i64".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorusInvariants { transcendence_degree: basis.len(), basis })
}

/// Row Hermite normal form in place.
fn hermite_rows(rows: &mut [Vec<BigInt>]) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pr = 0;
    for c in 0..ncols {
        if pr == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (pr..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("non-empty");
            rows.swap(pr, piv);
            if nz.len() == 1 {
                if rows[pr][c].is_negative() {
                    rows[pr].iter_mut().for_each(|x| *x = -x.clone());
                }
                for i in 0..pr {
                    let q = rows[i][c].div_floor(&rows[pr][c]);
                    let (head, tail) = rows.split_at_mut(pr);
                    for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * y;
                    }
                }
                pr += 1;
                break;
            }
            for i in pr + 1..rows.len() {
                let q = rows[i][c].div_floor(&rows[pr][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[pr]) {
                    *x -= &q * y;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{epsilon, WeylElement};

    fn sl3() -> GroupShape {
        GroupShape::sl(3)
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&IrrLabel::sl3(14, 1)), 255);
        assert_eq!(weyl_dim(&IrrLabel::sl3(0, 21)), 253);
        assert_eq!(weyl_dim(&IrrLabel::sl3(1, 2)), 15);
        assert_eq!(weyl_dim(&IrrLabel::sl3(0, 0)), 1);
        assert_eq!(weyl_dim(&IrrLabel::sl2(6)), 7);
        let ext2 = IrrLabel::new(&GroupShape::sl(5), vec![vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(weyl_dim(&ext2), 10);
    }

    #[test]
    fn standard_and_binary_characters() {
        let v10 = irr_character(&IrrLabel::sl3(1, 0));
        let expected = CharacterMultiset::standard(&sl3(), 0).unwrap();
        assert_eq!(v10, expected);
        let s2 = GroupShape::sl(2);
        let sym6 = irr_character(&IrrLabel::sl2(6));
        let e1 = epsilon(&s2, 0, 0).unwrap();
        for k in 0..=6i64 {
            assert_eq!(sym6.multiplicity(&e1.scale(&BigRational::from_integer((6 - 2 * k).into()))), 1);
        }
        assert_eq!(sym6.dim(), 7);
        assert_eq!(irr_character(&IrrLabel::sl3(2, 2)).dim(), 27);
    }

    #[test]
    fn label_round_trip_and_dual() {
        let l = IrrLabel::sl3(3, 5);
        assert_eq!(IrrLabel::from_dominant(&l.highest_weight()).unwrap(), l);
        assert_eq!(l.dual(), IrrLabel::sl3(5, 3));
        assert_eq!(irr_character(&l).dual(), irr_character(&l.dual()));
        assert_eq!("V(14,1)".parse::<IrrLabel>().unwrap(), IrrLabel::sl3(14, 1));
        assert_eq!(l.to_string(), "V(3,5)");
        assert!("1,x".parse::<IrrLabel>().is_err());
        assert!(IrrLabel::new(&sl3(), vec![vec![1]]).is_err());
    }

    #[test]
    fn tensor_with_dual() {
        let v = CharacterMultiset::standard(&sl3(), 0).unwrap();
        let t = v.tensor(&v.dual()).unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(t.multiplicity(&AmbientWeight::zero(&sl3())), 3);
        assert_eq!(v.tensor(&CharacterMultiset::trivial(&sl3())).unwrap(), v);
        assert!(v.tensor(&CharacterMultiset::trivial(&GroupShape::sl(2))).is_err());
    }

    #[test]
    fn powers() {
        let s5 = GroupShape::sl(5);
        let c5 = CharacterMultiset::standard(&s5, 0).unwrap();
        let ext = c5.ext_power(2);
        let expected = CharacterMultiset::from_weights(
            &s5,
            (0..5).flat_map(|k| (k + 1..5).map(move |l| (k, l))).map(|(k, l)| {
                &epsilon(&s5, 0, k).unwrap() + &epsilon(&s5, 0, l).unwrap()
            }),
        )
        .unwrap();
        assert_eq!(ext, expected);
        assert_eq!(c5.sym_power(0), CharacterMultiset::trivial(&s5));
        let c2 = CharacterMultiset::standard(&GroupShape::sl(2), 0).unwrap();
        assert_eq!(c2.sym_power(6).dim(), 7);
        assert_eq!(c2.sym_power(6), irr_character(&IrrLabel::sl2(6)));
        assert_eq!(c5.ext_power(6).dim(), 0);
    }

    #[test]
    fn multiplicities() {
        let l = IrrLabel::sl3(2, 1);
        assert_eq!(mult_in(&l, &irr_character(&l)).unwrap(), 1);
        let hom = irr_character(&IrrLabel::sl3(1, 14)).tensor(&irr_character(&IrrLabel::sl3(0, 21))).unwrap();
        assert!(mult_in(&IrrLabel::sl3(0, 34), &hom).unwrap() >= 1);
        assert_eq!(
            tensor_multiplicity(&IrrLabel::sl3(0, 34), &IrrLabel::sl3(1, 14), &IrrLabel::sl3(0, 21)).unwrap(),
            mult_in(&IrrLabel::sl3(0, 34), &hom).unwrap()
        );
        assert!(mult_in(&IrrLabel::sl2(1), &irr_character(&l)).is_err());
    }

    #[test]
    fn invariants_of_classical_modules() {
        let s4 = GroupShape::sl(4);
        let ext = CharacterMultiset::standard(&s4, 0).unwrap().ext_power(2);
        assert!(invariant_dim(&ext, 2).unwrap() >= 1);
        assert_eq!(invariant_dim(&ext, 1).unwrap(), 0);
        let s33 = GroupShape::new(vec![3, 3]).unwrap();
        let hom = CharacterMultiset::standard(&s33, 0)
            .unwrap()
            .dual()
            .tensor(&CharacterMultiset::standard(&s33, 1).unwrap())
            .unwrap();
        assert!(invariant_dim(&hom, 3).unwrap() >= 1);
        assert_eq!(invariant_dim(&hom, 2).unwrap(), 0);
    }

    #[test]
    fn decomposition_of_small_product() {
        let m = irr_character(&IrrLabel::sl3(1, 1)).tensor(&irr_character(&IrrLabel::sl3(1, 0))).unwrap();
        let d = decompose(&m).unwrap();
        assert_eq!(d, vec![(IrrLabel::sl3(0, 2), 1), (IrrLabel::sl3(1, 0), 1), (IrrLabel::sl3(2, 1), 1)]);
        let rebuilt = d
            .iter()
            .flat_map(|(l, k)| std::iter::repeat_n(irr_character(l), *k as usize))
            .reduce(|a, b| a.direct_sum(&b).unwrap())
            .unwrap();
        assert_eq!(rebuilt, m);
    }

    #[test]
    fn center_characters() {
        assert_eq!(center_character(&IrrLabel::sl3(1, 0)), vec![1]);
        assert_eq!(center_character(&IrrLabel::sl3(1, 1)), vec![0]);
        assert_eq!(center_character(&IrrLabel::sl3(0, 34)), vec![2]);
        assert_eq!(center_character(&IrrLabel::sl3(34, 0)), vec![1]);
        for l in [IrrLabel::sl3(0, 34), IrrLabel::sl3(34, 0), IrrLabel::sl3(5, 9)] {
            let c = center_character(&l);
            assert!(irr_character(&l).weights().all(|w| weight_class(w).unwrap() == c));
        }
    }

    #[test]
    fn torus_invariant_lattices() {
        let t = diagonal_torus_invariants(&[vec![1], vec![-1]]).unwrap();
        assert_eq!(t.basis, vec![vec![1, 1]]);
        let t = diagonal_torus_invariants(&[vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(t.basis, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let t = diagonal_torus_invariants(&[vec![1], vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(t.transcendence_degree, 3);
        for row in &t.basis {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
        assert!(diagonal_torus_invariants(&[vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn w_invariance_detects_asymmetry() {
        assert!(irr_character(&IrrLabel::sl3(3, 1)).is_w_invariant());
        let lone = CharacterMultiset::from_weights(&sl3(), [epsilon(&sl3(), 0, 0).unwrap()]).unwrap();
        assert!(!lone.is_w_invariant());
        let g = WeylElement::all(&sl3());
        assert_eq!(g.len(), 6);
    }
}
