use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly(Vec<BigRational>);

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        RationalPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }

    /// Remainder of division by a non-zero `d`.
    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            for (k, c) in d.0.iter().enumerate() {
                r[top - dd + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RationalPoly::new(r)
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.0.last().cloned() {
            None => a,
            Some(lead) => RationalPoly(a.0.iter().map(|c| c / &lead).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryInstability {
    pub degree: usize,
    pub unstable: bool,
    /// Largest multiplicity of a root on the projective line.
    pub max_multiplicity: usize,
    /// Multiplicity of the root `[1 : 0]`.
    pub multiplicity_at_infinity: usize,
    /// `floor(d / 2) + 1`.
    pub threshold: usize,
}

/// `coeffs[k]` is the coefficient of `x^k y^(d-k)`. A binary form is unstable
/// iff it has a root of multiplicity at least `floor(d/2) + 1`.
pub fn binary_instability(coeffs: &[BigRational]) -> Result<BinaryInstability> {
    let degree = coeffs.len().checked_sub(1).ok_or(Error::ZeroVector)?;
    let p = RationalPoly::new(coeffs.to_vec());
    let deg_p = p.degree().ok_or(Error::ZeroVector)?;
    let at_infinity = degree - deg_p;
    // multiplicity >= m iff gcd(p, p', ..., p^(m-1)) is non-constant
    let mut finite = 0;
    let mut g = p.clone();
    let mut der = p.clone();
    while g.degree().is_some_and(|d| d > 0) {
        finite += 1;
        der = der.derivative();
        g = g.gcd(&der);
        if der.is_zero() {
            break;
        }
    }
    let max_multiplicity = finite.max(at_infinity);
    let threshold = degree / 2 + 1;
    Ok(BinaryInstability {
        degree,
        unstable: max_multiplicity >= threshold,
        max_multiplicity,
        multiplicity_at_infinity: at_infinity,
        threshold,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn form(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn monomial_forms() {
        // x^4 y^2
        let r = binary_instability(&form(&[0, 0, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!((r.max_multiplicity, r.unstable), (4, true));
        // x^3 y^3
        let r = binary_instability(&form(&[0, 0, 0, 1, 0, 0, 0])).unwrap();
        assert_eq!((r.max_multiplicity, r.unstable), (3, false));
        // y^5 vanishes to order 5 at [1 : 0]
        let r = binary_instability(&form(&[1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!((r.multiplicity_at_infinity, r.max_multiplicity), (5, 5));
    }

    #[test]
    fn binomial_power() {
        // (x + y)^7
        let r = binary_instability(&form(&[1, 7, 21, 35, 35, 21, 7, 1])).unwrap();
        assert_eq!((r.max_multiplicity, r.unstable), (7, true));
    }

    #[test]
    fn zero_form_rejected() {
        assert!(binary_instability(&form(&[0, 0, 0])).is_err());
        assert!(binary_instability(&[]).is_err());
    }

    #[test]
    fn gcd_of_coprime_and_shared() {
        let a = RationalPoly::new(form(&[-1, 0, 1])); // x^2 - 1
        let b = RationalPoly::new(form(&[1, 1])); // x + 1
        assert_eq!(a.gcd(&b), b);
        let c = RationalPoly::new(form(&[2, 1])); // x + 2
        assert_eq!(a.gcd(&c).degree(), Some(0));
    }
}
