use itertools::Itertools;

use super::LedgerReport;
use crate::error::{Error, Result};
use crate::repchar::{weyl_dim, IrrLabel};
use crate::tensorcalc::monomials;

/// Degrees of plane curves whose moduli are not known to be rational.
pub const UNRESOLVED_DEGREES: [u32; 15] = [6, 7, 8, 11, 12, 14, 15, 16, 18, 20, 23, 24, 26, 32, 48];

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension ledger for degree-4 covariants `V(0,d) -> W` with the linear
/// section `L = x_1^e * C[x_1,x_2,x_3]_m`.
pub fn covariant_ledger(d: u32) -> Result<LedgerReport> {
    let mut r = LedgerReport::new(format!("covariants for plane curves of degree {d}"));
    let anchor = "covariant method for plane curves";
    let di = d as i64;
    // (n, exponent of x_1, degree of the free factor, W, claimed range start)
    let case = match d % 3 {
        1 if d >= 4 => {
            let n = (di - 1) / 3;
            Some((n, 2 * n + 3, n - 2, 4u32, 37u32, binom(n, 2)))
        }
        2 if d >= 5 => {
            let n = (di - 2) / 3;
            Some((n, 2 * n + 5, n - 3, 8u32, 65u32, binom(n - 1, 2)))
        }
        _ => None,
    };
    let in_range = case.as_ref().is_some_and(|c| d >= c.4);
    r.informational = !in_range;
    if UNRESOLVED_DEGREES.contains(&d) {
        r.notes.push(format!("degree {d} is among the unresolved degrees"));
    }
    if !in_range {
        r.notes.push("outside the range where the covariant method applies; values are informational".into());
    }
    let dim_pv = weyl_dim(&IrrLabel::sl3(0, d)) as i64 - 1;
    r.check("dim P(V(0,d))", anchor, binom(di + 2, 2) - 1, dim_pv);
    let Some((n, power, free, w, _, dim_l)) = case else {
        return Ok(r);
    };
    r.notes.push(format!("n = {n}, L = x1^{power} * C[x1,x2,x3]_{free}, W = V(0,{w})"));
    let dim_pw = weyl_dim(&IrrLabel::sl3(0, w)) as i64 - 1;
    r.check("dim P(W)", anchor, if w == 4 { 14 } else { 44 }, dim_pw);
    r.check("degree of L", anchor, di, power + free);
    let computed_l = if free >= 0 { monomials(3, free as u32).len() as i64 } else { 0 };
    r.check("dim L", anchor, dim_l, computed_l);
    r.check("slack dim P(V) - dim P(W)", anchor, binom(di + 2, 2) - binom(w as i64 + 2, 2), dim_pv - dim_pw);
    r.check("level 8 condition dim P(V) - dim P(W) >= 8", "quotient of P(W) stably rational of level 8", true, dim_pv - dim_pw >= 8);
    Ok(r)
}

/// Coefficient of `h^2` in `(1 + (k+1)h)^3 / (1 + kh)`, from the twisted Euler
/// sequence `0 -> O(k) -> O(k+1)^3 -> T(k) -> 0`.
fn c2_from_euler_sequence(k: i64) -> i64 {
    let num = [1, 3 * (k + 1), 3 * (k + 1) * (k + 1)];
    let inv = [1, -k, k * k];
    num[0] * inv[2] + num[1] * inv[1] + num[2] * inv[0]
}

/// Zero loci of sections of `T_P2(k)`: `c_2 = 3 + 3k + k^2`; for `k = 1` a
/// general section vanishes at 7 points and `P(H^0)` has the dimension of the
/// Hilbert scheme of 7 points.
pub fn zero_loci_ledger(k: u32) -> Result<LedgerReport> {
    let ki = k as i64;
    let mut r = LedgerReport::new(format!("zero loci of sections of T_P2({k})"));
    let anchor = "zero loci of sections of the twisted tangent bundle";
    let c2 = c2_from_euler_sequence(ki);
    r.check("c2(T_P2(k))", anchor, 3 + 3 * ki + ki * ki, c2);
    if k == 1 {
        let h0 = 3 * binom(ki + 3, 2) - binom(ki + 2, 2);
        r.check("dim H0(T_P2(1))", anchor, weyl_dim(&IrrLabel::sl3(1, 2)) as i64, h0);
        r.check("slack dim H0 - 2 c2", anchor, 1, h0 - 2 * c2);
        r.check("dim P(H0) = dim Hilb^7(P2)", "zero loci map is birational", 2 * c2, h0 - 1);
    }
    Ok(r)
}

/// Dimension identities for `L = Sym^3(C^d)/Sym^3(F)` and the choice of
/// summands of `Sym^2(C^d) (x) C^3` under `SL_(d-3) x SL_3`.
pub fn theta_ledger(d: u32) -> Result<LedgerReport> {
    if d < 5 || d % 2 == 0 {
        return Err(Error::InvalidArgument(format!("d = {d} must be odd and at least 5")));
    }
    let di = d as i64;
    let anchor = "theta characteristics reduction";
    let mut r = LedgerReport::new(format!("theta characteristics, d = {d}"));
    let closed = (3 * di * di - 3 * di + 2) / 2;
    let dim_l = 3 * binom(di + 1, 2) - (3 * di - 1);
    r.check("dim L from Sym^2 (x) C^3 minus P(C^d (x) C^3)", anchor, closed, dim_l);
    r.check("dim L from Sym^3(C^d) / Sym^3(F)", anchor, closed, binom(di + 2, 3) - binom(di - 1, 3));

    let f = d as usize - 3;
    let lab = |first: Vec<u32>, second: [u32; 2]| IrrLabel::from_factors(vec![first, second.to_vec()]).expect("valid label");
    let mut std = vec![0; f - 1];
    std[0] = 1;
    let mut sym2 = vec![0; f - 1];
    sym2[0] = 2;
    let trivial = vec![0; f - 1];
    let names = ["Sym^2 F (x) E", "F (x) Ext^2 E", "F (x) Sym^2 E", "Sym^3 E", "S_(2,1) E"];
    let labels = [lab(sym2, [1, 0]), lab(std.clone(), [0, 1]), lab(std, [2, 0]), lab(trivial.clone(), [3, 0]), lab(trivial, [1, 1])];
    let expected = [3 * binom(di - 2, 2), 3 * (di - 3), 6 * (di - 3), 10, 8];
    let dims: Vec<i64> = labels.iter().map(|l| weyl_dim(l) as i64).collect();
    for ((name, e), c) in names.iter().zip(expected).zip(&dims) {
        r.check(&format!("dim {name}"), anchor, e, *c);
    }
    r.check("summands exhaust Sym^2(C^d) (x) C^3", anchor, 3 * binom(di + 1, 2), dims.iter().sum());

    let selections: Vec<Vec<i64>> = (0..dims.len())
        .powerset()
        .filter(|s| s.iter().map(|&i| dims[i]).sum::<i64>() == dim_l)
        .map(|s| s.iter().map(|&i| dims[i]).collect())
        .collect();
    let render = |v: &[Vec<i64>]| format!("{v:?}");
    r.check("subsets of summands of dimension dim L", anchor, render(&[vec![expected[0], expected[2], expected[3]]]), render(&selections));

    if d >= 7 {
        let rest = dims[1] + dims[2] + dims[3] + dims[4];
        r.check("dim L minus the four small summands", anchor, (3 * di * di - 21 * di + 20) / 2, dim_l - rest);
        r.check("dim L minus the four small summands is positive", anchor, true, dim_l - rest > 0);
        r.check("dim L - dim(Sym^2 F (x) E)", anchor, 6 * di - 8, dim_l - dims[0]);
        r.check("3(d-3) + 10 + 8 < 6d - 8", anchor, true, dims[1] + dims[3] + dims[4] < 6 * di - 8);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covariants() {
        let r = covariant_ledger(37).unwrap();
        assert!(!r.informational);
        assert!(r.all_pass());
        assert_eq!(r.entry("dim P(V(0,d))").unwrap().computed, "740");
        assert_eq!(r.entry("slack dim P(V) - dim P(W)").unwrap().computed, "726");
        assert_eq!(r.entry("dim L").unwrap().computed, "66");
        let r = covariant_ledger(65).unwrap();
        assert_eq!(r.entry("dim P(W)").unwrap().computed, "44");
        assert!(r.all_pass());
        let r = covariant_ledger(6).unwrap();
        assert!(r.informational);
        assert!(r.notes.iter().any(|n| n.contains("unresolved")));
    }

    #[test]
    fn zero_loci() {
        let r = zero_loci_ledger(1).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.entry("c2(T_P2(k))").unwrap().computed, "7");
        assert_eq!(r.entry("dim H0(T_P2(1))").unwrap().computed, "15");
        assert_eq!(zero_loci_ledger(0).unwrap().entry("c2(T_P2(k))").unwrap().computed, "3");
        assert_eq!(zero_loci_ledger(2).unwrap().entry("c2(T_P2(k))").unwrap().computed, "13");
    }

    #[test]
    fn theta() {
        let r = theta_ledger(5).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.entry("dim L from Sym^3(C^d) / Sym^3(F)").unwrap().computed, "31");
        assert_eq!(r.entry("subsets of summands of dimension dim L").unwrap().computed, "[[9, 12, 10]]");
        let r = theta_ledger(7).unwrap();
        assert_eq!(r.entry("dim L from Sym^3(C^d) / Sym^3(F)").unwrap().computed, "64");
        assert!(r.all_pass());
        assert!(theta_ledger(6).is_err());
        assert!(theta_ledger(3).is_err());
    }
}
