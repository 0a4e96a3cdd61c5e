use serde::Serialize;

use super::realize::{project_to_kernel, realize_irreducible, LinearMapMatrix};
use super::PolyTensor;
use crate::error::{Error, Result};
use crate::field::Field;

const S3: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];

/// `omega(r, s) = sum_sigma sgn(sigma) e_sigma(1) dr/dx_sigma(2) ds/dx_sigma(3)`
/// on `C^3`. Bidegree `(a_r + a_s + 1, b_r + b_s - 2)`.
pub fn omega<F: Field>(r: &PolyTensor<F>, s: &PolyTensor<F>) -> Result<PolyTensor<F>> {
    if r.n() != 3 || s.n() != 3 {
        return Err(Error::InvalidArgument("omega is defined on C^3".into()));
    }
    let (ar, br) = r.bidegree();
    let (as_, bs) = s.bidegree();
    if br == 0 || bs == 0 {
        return Err(Error::DegreeUnderflow("omega needs x-degree at least 1 in both arguments".into()));
    }
    let field = r.field().clone();
    let mut out = PolyTensor::zero(field.clone(), 3, ar + as_ + 1, br + bs - 2);
    let dr: Vec<_> = (0..3).map(|i| r.d_x(i)).collect::<Result<_>>()?;
    let ds: Vec<_> = (0..3).map(|i| s.d_x(i)).collect::<Result<_>>()?;
    for (perm, sign) in S3 {
        let term = dr[perm[1]].mul(&ds[perm[2]])?.mul_e(perm[0]).scale(&field.from_i64(sign));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// A value of `beta` before and after projection onto `ker Delta`.
#[derive(Debug, Clone)]
pub struct BetaValue<F: Field> {
    pub raw: PolyTensor<F>,
    pub projected: PolyTensor<F>,
    pub projection_applied: bool,
}

fn expect_bidegree<F: Field>(name: &str, t: &PolyTensor<F>, want: (u32, u32)) -> Result<()> {
    if t.n() != 3 || t.bidegree() != want {
        return Err(Error::DegreeMismatch(format!(
            "{name} has bidegree {:?} on C^{}, expected {:?} on C^3",
            t.bidegree(),
            t.n(),
            want
        )));
    }
    Ok(())
}

/// `Delta(omega(f, g1)) + Delta(f g2)` for `f` of bidegree (1, 2), `g1` of
/// (0, 2) and `g2` of (1, 0), then projected onto `ker Delta` in (1, 1).
pub fn beta<F: Field>(f: &PolyTensor<F>, g1: &PolyTensor<F>, g2: &PolyTensor<F>) -> Result<BetaValue<F>> {
    expect_bidegree("f", f, (1, 2))?;
    expect_bidegree("g1", g1, (0, 2))?;
    expect_bidegree("g2", g2, (1, 0))?;
    let raw = omega(f, g1)?.delta()?.add(&f.mul(g2)?.delta()?)?;
    let (projected, projection_applied) = project_to_kernel(&raw)?;
    Ok(BetaValue { raw, projected, projection_applied })
}

/// `Delta^2(f g2^2)`, landing in bidegree (1, 0).
pub fn psi<F: Field>(f: &PolyTensor<F>, g2: &PolyTensor<F>) -> Result<PolyTensor<F>> {
    expect_bidegree("f", f, (1, 2))?;
    expect_bidegree("g2", g2, (1, 0))?;
    f.mul(&g2.mul(g2)?)?.delta_pow(2)
}

/// The special point `(F, (G1, G2), H)` and the values of the operators at it.
#[derive(Debug, Clone)]
pub struct SevenPointData<F: Field> {
    pub f: PolyTensor<F>,
    pub g1: PolyTensor<F>,
    pub g2: PolyTensor<F>,
    pub h: PolyTensor<F>,
    pub beta: BetaValue<F>,
}

/// `F = 3 e2 x1 x3 - 2 e1 x1 x2 + 6 e3 x3 x2 - 2 e2 x2^2`, `G1 = x1 x3 - x2^2`,
/// `G2 = 2 e2`, `H = psi(F, G2)`.
pub fn seven_point_data<F: Field>(field: &F) -> Result<SevenPointData<F>> {
    let f = PolyTensor::from_int_terms(
        field.clone(),
        3,
        1,
        2,
        &[(3, &[0, 1, 0], &[1, 0, 1]), (-2, &[1, 0, 0], &[1, 1, 0]), (6, &[0, 0, 1], &[0, 1, 1]), (-2, &[0, 1, 0], &[0, 2, 0])],
    )?;
    let g1 = PolyTensor::from_int_terms(field.clone(), 3, 0, 2, &[(1, &[0, 0, 0], &[1, 0, 1]), (-1, &[0, 0, 0], &[0, 2, 0])])?;
    let g2 = PolyTensor::from_int_terms(field.clone(), 3, 1, 0, &[(2, &[0, 1, 0], &[0, 0, 0])])?;
    let h = psi(&f, &g2)?;
    let beta = beta(&f, &g1, &g2)?;
    Ok(SevenPointData { f, g1, g2, h, beta })
}

/// Kernel dimensions of `beta(F, .)` on `V(0,2) + V(1,0)`, of
/// `beta(., (G1, G2))` on `V(1,2)`, and of the latter intersected with
/// `ker psi(., G2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SevenPointKernels {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub rank1: usize,
    pub rank2: usize,
    pub rank3: usize,
    /// The same three dimensions without the projection onto `ker Delta`.
    pub raw: (usize, usize, usize),
    /// Whether any raw value of `beta` needed projecting.
    pub projection_applied: bool,
}

pub fn kernel_dims_seven_points<F: Field>(field: &F) -> Result<SevenPointKernels> {
    let data = seven_point_data(field)?;
    let v02 = realize_irreducible(field, 3, 0, 2)?;
    let v10 = realize_irreducible(field, 3, 1, 0)?;
    let v12 = realize_irreducible(field, 3, 1, 2)?;
    let zero02 = PolyTensor::zero(field.clone(), 3, 0, 2);
    let zero10 = PolyTensor::zero(field.clone(), 3, 1, 0);

    let pairs: Vec<(PolyTensor<F>, PolyTensor<F>)> =
        v02.iter().map(|g| (g.clone(), zero10.clone())).chain(v10.iter().map(|g| (zero02.clone(), g.clone()))).collect();
    let first: Vec<BetaValue<F>> = pairs.iter().map(|(g1, g2)| beta(&data.f, g1, g2)).collect::<Result<_>>()?;
    let second: Vec<BetaValue<F>> = v12.iter().map(|f| beta(f, &data.g1, &data.g2)).collect::<Result<_>>()?;
    let psis: Vec<PolyTensor<F>> = v12.iter().map(|f| psi(f, &data.g2)).collect::<Result<_>>()?;

    let projection_applied = first.iter().chain(&second).any(|b| b.projection_applied);
    let pick = |vals: &[BetaValue<F>], projected: bool| -> Vec<PolyTensor<F>> {
        vals.iter().map(|b| if projected { b.projected.clone() } else { b.raw.clone() }).collect()
    };
    let psi_map = LinearMapMatrix::from_images(field.clone(), 3, (1, 0), &psis)?;
    let dims = |projected: bool| -> Result<(usize, usize, usize, usize, usize, usize)> {
        let m1 = LinearMapMatrix::from_images(field.clone(), 3, (1, 1), &pick(&first, projected))?;
        let m2 = LinearMapMatrix::from_images(field.clone(), 3, (1, 1), &pick(&second, projected))?;
        let r1 = m1.rank();
        let r2 = m2.rank();
        let r3 = m2.matrix().stack(psi_map.matrix()).rank();
        Ok((pairs.len() - r1, v12.len() - r2, v12.len() - r3, r1, r2, r3))
    };
    let (k1, k2, k3, rank1, rank2, rank3) = dims(true)?;
    let raw = dims(false)?;
    Ok(SevenPointKernels { k1, k2, k3, rank1, rank2, rank3, raw: (raw.0, raw.1, raw.2), projection_applied })
}
