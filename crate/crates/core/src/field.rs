//! Exact scalar fields: the rationals and prime fields.
//!
//! Fields are context objects: elements are plain values and every operation
//! goes through the field, so a prime field carries its modulus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

// from_* build elements of this field, so they need `self`.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `None` when the denominator vanishes in the field.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    /// Canonical text form: `n/d` over the rationals, the residue mod p otherwise.
    fn render(&self, a: &Self::Elem) -> String;
    /// A random element; over the rationals an integer in `[-bound, bound]`.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// `a - b * c`, the elimination kernel.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        fmt_rational(a)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let b = bound.min(i64::MAX as u64) as i64;
        self.from_i64(rng.random_range(-b..=b))
    }
}

/// The prime field with `p` elements; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> u64 {
        rng.random_range(0..self.p)
    }
}

/// Deterministic primality by trial division; fine for the moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// A uniformly chosen prime in `[lo, hi)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> Result<u64> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("empty prime range [{lo}, {hi})")));
    }
    if !(lo..hi).any(is_prime) {
        return Err(Error::InvalidArgument(format!("no prime in [{lo}, {hi})")));
    }
    loop {
        let c = rng.random_range(lo..hi);
        if is_prime(c) {
            return Ok(c);
        }
    }
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    (n.max(2)..).find(|&k| is_prime(k)).expect("primes are unbounded")
}

/// `n/d`, or just `n` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Serde adapters rendering rationals as `n/d` strings.
pub mod ser {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use crate::lattice::AmbientWeight;

    pub fn rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rational(q))
    }

    pub fn weighted<S: Serializer>(v: &[(AmbientWeight, BigRational)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for (w, q) in v {
            seq.serialize_element(&(w.to_string(), super::fmt_rational(q)))?;
        }
        seq.end()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn prime_field_inverse_round_trips() {
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200u64 {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn from_rational_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&rat(1, 2)), Some(4));
        assert_eq!(f.from_rational(&rat(1, 7)), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(next_prime(10000), 10007);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = random_prime(&mut rng, 100, 1000).unwrap();
        assert!(is_prime(p) && (100..1000).contains(&p));
        assert!(random_prime(&mut rng, 24, 29).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(fmt_rational(&rat(-1, 2)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
