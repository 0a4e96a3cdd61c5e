//! Acceptance criteria 1-7. Runs without the libtest harness so that each
//! criterion prints exactly one pass/fail line; the process fails if any
//! criterion does.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nullstrat_cli::{run, Params};
use nullstrat_core::field::{int, random_prime};
use nullstrat_core::lattice::WeylElement;
use nullstrat_core::methods::{binary_instability, double_bundle_search, theta_ledger, zero_loci_ledger};
use nullstrat_core::polytope::{is_t_unstable, min_norm_point};
use nullstrat_core::repchar::{irr_character, weyl_dim};
use nullstrat_core::strata::{enumerate_candidates, nullcone_report};
use nullstrat_core::tensorcalc::{
    bimonomials, iota, kernel_dims_seven_points, lie_action, maximal_rank_kernel_vector, mu_pairing, omega, realize_irreducible,
    seven_point_data, v34_check, witness_d5, witness_kappa, LieElement,
};
use nullstrat_core::{
    AmbientWeight, CharacterMultiset, Field, GroupShape, IrrLabel, PolyTensor, PrimeField, Rationals, SupportSet, Verdict, WeightVector,
};

type Q = BigRational;

fn dim(a: u32, b: u32) -> u64 {
    weyl_dim(&IrrLabel::sl3(a, b))
}

// ---- criterion 1 ----

fn dimensions() -> String {
    assert_eq!(dim(14, 1), 255);
    assert_eq!(dim(0, 21), 253);
    assert_eq!(dim(1, 2), 15);
    assert_eq!(dim(30, 0), dim(0, 4) + dim(5, 9) + 1);
    assert_eq!(dim(0, 34) - 1, 629);
    assert_eq!(2 * (dim(14, 1) - 2), 506);
    format!("255, 253, 15, {} = {} + {} + 1, 629, 506", dim(30, 0), dim(0, 4), dim(5, 9))
}

// ---- criterion 2 ----

fn seven_points() -> String {
    let q = Rationals;
    let data = seven_point_data(&q).unwrap();
    assert_eq!(data.h, PolyTensor::e(q, 3, 1).scale(&q.from_i64(-32)));
    assert!(data.beta.projected.is_zero());
    let k = kernel_dims_seven_points(&q).unwrap();
    assert_eq!((k.k1, k.k2, k.k3), (1, 7, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut primes = BTreeSet::new();
    while primes.len() < 2 {
        primes.insert(random_prime(&mut rng, 101, 100_000).unwrap());
    }
    for &p in &primes {
        let k = kernel_dims_seven_points(&PrimeField::new(p).unwrap()).unwrap();
        assert_eq!((k.k1, k.k2, k.k3), (1, 7, 4), "p = {p}");
    }
    let ledger = zero_loci_ledger(1).unwrap();
    assert!(ledger.all_pass());
    assert_eq!(ledger.entry("c2(T_P2(k))").unwrap().computed, "7");
    format!("H = {}, beta = 0, kernels (1, 7, 4) over Q and F_p for p in {primes:?}, c2 = 7", data.h)
}

// ---- criterion 3 ----

fn theta_and_two_forms() -> String {
    assert_eq!(iota(&Rationals, &witness_d5()).unwrap().rank(), 14);
    for d in [5, 7, 9, 11] {
        let form = iota(&Rationals, &witness_kappa(d).unwrap()).unwrap();
        assert_eq!(form.rank(), 3 * d - 1, "d = {d}");
        assert_eq!(form.kernel().len(), 1, "d = {d}");
        let m: Vec<Q> = maximal_rank_kernel_vector(d).into_iter().map(int).collect();
        assert!(form.to_matrix().mul_vec(&m).iter().all(Zero::is_zero), "d = {d}");
    }
    let mut count = 0;
    for d in (5..=99).step_by(2) {
        let r = theta_ledger(d).unwrap();
        assert!(r.all_pass(), "d = {d}: {:?}", r.entries.iter().filter(|e| e.verdict == Verdict::Fail).collect::<Vec<_>>());
        count += r.entries.len();
    }
    let r = theta_ledger(5).unwrap();
    assert_eq!(r.entry("dim L from Sym^3(C^d) / Sym^3(F)").unwrap().computed, "31");
    assert_eq!(r.entry("subsets of summands of dimension dim L").unwrap().computed, "[[9, 12, 10]]");
    format!("rank 14; ranks 3d-1 with kernel m for d = 5..11; {count} theta identities for odd d in 5..99")
}

// ---- criterion 4 ----

/// Rank over Q by Gauss-Jordan elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &k * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Product of binary forms given by coefficients of `x^k y^(deg - k)`.
fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ppow(a: &[Q], k: usize) -> Vec<Q> {
    (0..k).fold(vec![Q::one()], |acc, _| pmul(&acc, a))
}

/// Dimension of `{l^m q : l linear, q of degree d - m}` as the Jacobian rank
/// of `(l, q) -> l^m q` at random integer points (maximum over a few points).
fn jacobian_closure_dim(d: usize, m: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut best = 0;
    for _ in 0..3 {
        let mut draw = || int(rng.random_range(-9..=9));
        let l = vec![draw(), draw()];
        let q: Vec<Q> = (0..=d - m).map(|_| draw()).collect();
        let lm1 = ppow(&l, m - 1);
        let (x, y) = (vec![Q::zero(), Q::one()], vec![Q::one(), Q::zero()]);
        let mut columns = Vec::new();
        for var in [&y, &x] {
            // d/dl_i (l^m q) = m l^(m-1) q * (variable multiplying l_i)
            let col = pmul(&pmul(&lm1, &q), var);
            columns.push(col.iter().map(|c| c * int(m as i64)).collect::<Vec<Q>>());
        }
        let lm = ppow(&l, m);
        for i in 0..=d - m {
            let mut mono = vec![Q::zero(); d - m + 1];
            mono[i] = Q::one();
            columns.push(pmul(&lm, &mono));
        }
        best = best.max(rank(columns));
    }
    best
}

fn nullcone() -> String {
    let report = nullcone_report(&irr_character(&IrrLabel::sl3(0, 4)), 6).unwrap();
    assert_eq!(report.component_dims, vec![10, 11]);
    let sl2 = GroupShape::sl(2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in 1..=8usize {
        let module = CharacterMultiset::standard(&sl2, 0).unwrap().sym_power(d);
        let cands = enumerate_candidates(&module).unwrap();
        let mut classes = Vec::new();
        for c in &cands {
            let plus: i64 = c.plus_weights.iter().map(|(_, k)| k).sum();
            let m = d + 1 - plus as usize;
            classes.push(m);
            assert_eq!(c.closure_dim() as usize, jacobian_closure_dim(d, m, &mut rng), "d = {d}, m = {m}");
        }
        classes.sort();
        assert_eq!(classes, (d / 2 + 1..=d).collect::<Vec<_>>(), "d = {d}");
    }
    "ternary quartic components {10, 11}; SL2 classes and Jacobian ranks agree for d <= 8".into()
}

// ---- criterion 5 ----

fn strata_examples() -> String {
    let report = run("strata-examples", &Params::default()).unwrap();
    let failing: Vec<&str> = report.certificates.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| c.claim.as_str()).collect();
    assert!(failing.is_empty(), "{failing:?}");
    // two two-form examples and nine double-bundle examples, six claims each
    assert_eq!(report.certificates.len(), 11 * 6);
    let witness = |tag: &str| report.certificate(&format!("{tag}: stratifying with witness degree")).unwrap().computed.clone();
    assert_eq!(witness("Ext^2 C^5"), serde_json::json!(["yes", 2]));
    assert_eq!(witness("Ext^2 C^7"), serde_json::json!(["yes", 3]));
    for n in 4..=6 {
        for m in 2..n {
            assert_eq!(witness(&format!("Hom(C^{n}, C^{m})")), serde_json::json!(["yes", m]));
        }
    }
    format!("{} claims, Pfaffian degrees 2 and 3, determinant degree m", report.certificates.len())
}

// ---- criterion 6 ----

fn v34_heavy() -> String {
    let r = v34_check(10007, 1).unwrap();
    assert_eq!(r.mu_rank, 253);
    assert_eq!(r.fiber_projective_dim, 123);
    let found = double_bundle_search(&IrrLabel::sl3(0, 34), 2, 640).unwrap();
    assert_eq!(found.len(), 1);
    assert!(found[0].linearization.obstructed);
    format!("rank 253 over F_10007 (seed 1), fiber dim 123, one candidate U = {} obstructed", found[0].u)
}

// ---- criterion 7 ----

fn character_pool() -> Vec<CharacterMultiset> {
    let mut pool = Vec::new();
    for (a, b) in [(1, 0), (2, 1), (0, 3), (2, 2), (4, 0)] {
        pool.push(irr_character(&IrrLabel::sl3(a, b)));
    }
    pool.push(irr_character(&IrrLabel::from_factors(vec![vec![2], vec![1, 1]]).unwrap()));
    pool.push(irr_character(&IrrLabel::from_factors(vec![vec![1, 0, 1]]).unwrap()));
    let std3 = irr_character(&IrrLabel::sl3(1, 0));
    pool.push(std3.tensor(&irr_character(&IrrLabel::sl3(0, 2))).unwrap());
    pool.push(std3.sym_power(4));
    pool.push(irr_character(&IrrLabel::sl3(1, 1)).ext_power(3));
    pool
}

fn weyl_invariance(trials: usize) {
    let pool = character_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..trials {
        let m = &pool[rng.random_range(0..pool.len())];
        let g = WeylElement::random(m.shape(), &mut rng);
        for (w, k) in m.iter() {
            assert_eq!(m.multiplicity(&g.act(w).unwrap()), k);
        }
        let ws: Vec<&AmbientWeight> = m.weights().collect();
        let (x, y) = (ws[rng.random_range(0..ws.len())], ws[rng.random_range(0..ws.len())]);
        assert_eq!(g.act(x).unwrap().pair(&g.act(y).unwrap()).unwrap(), x.pair(y).unwrap());
    }
}

fn random_tensor<R: Rng>(f: PrimeField, a: u32, b: u32, rng: &mut R) -> PolyTensor<PrimeField> {
    let coords: Vec<u64> = bimonomials(3, a, b).iter().map(|_| if rng.random_bool(0.5) { f.sample(rng, 0) } else { 0 }).collect();
    PolyTensor::from_coords(f, 3, a, b, &coords)
}

/// `X.op(r, s) = op(X.r, s) + op(r, X.s)` for random `X` in sl3.
fn equivariance(trials: usize) {
    let f = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let act = |x: &LieElement<PrimeField>, t: &PolyTensor<PrimeField>| lie_action(x, t).unwrap();
    for _ in 0..trials {
        let x = LieElement::random(f, 3, &mut rng, 0);

        let (a, b) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let t = random_tensor(f, a, b, &mut rng);
        assert_eq!(act(&x, &t).delta().unwrap(), act(&x, &t.delta().unwrap()));

        let r = random_tensor(f, rng.random_range(0..=2), rng.random_range(1..=2), &mut rng);
        let s = random_tensor(f, rng.random_range(0..=2), rng.random_range(1..=2), &mut rng);
        let lhs = omega(&act(&x, &r), &s).unwrap().add(&omega(&r, &act(&x, &s)).unwrap()).unwrap();
        assert_eq!(lhs, act(&x, &omega(&r, &s).unwrap()));

        let ga = rng.random_range(0..=3);
        let g = random_tensor(f, ga, rng.random_range(0..=2), &mut rng);
        let h = random_tensor(f, 0, rng.random_range(ga..=ga + 2), &mut rng);
        let lhs = mu_pairing(&act(&x, &g), &h).unwrap().add(&mu_pairing(&g, &act(&x, &h)).unwrap()).unwrap();
        assert_eq!(lhs, act(&x, &mu_pairing(&g, &h).unwrap()));
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn axpy(y: &[Q], k: &Q, x: &[Q]) -> Vec<Q> {
    y.iter().zip(x).map(|(a, b)| a + k * b).collect()
}

/// Solves a small square system by Gauss-Jordan; `None` if singular.
fn gauss(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let k = &m[r][col] / &m[col][col];
                let row = m[col].clone();
                m[r] = axpy(&m[r], &-k.clone(), &row);
                rhs[r] = &rhs[r] - &k * &rhs[col];
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Nearest point to 0 on aff(pts) by Gram-Schmidt, with barycentric
/// coordinates; `None` if the points are affinely dependent.
fn affine_piece(pts: &[Vec<Q>]) -> Option<(Vec<Q>, Vec<Q>)> {
    let p0 = &pts[0];
    let dirs: Vec<Vec<Q>> = pts[1..].iter().map(|p| sub(p, p0)).collect();
    let mut ortho: Vec<Vec<Q>> = Vec::new();
    for d in &dirs {
        let mut u = d.clone();
        for o in &ortho {
            let k = dot(&u, o) / dot(o, o);
            u = axpy(&u, &-k, o);
        }
        if u.iter().all(Zero::is_zero) {
            return None;
        }
        ortho.push(u);
    }
    let mut x = p0.clone();
    for o in &ortho {
        let k = dot(&x, o) / dot(o, o);
        x = axpy(&x, &-k, o);
    }
    let gram: Vec<Vec<Q>> = dirs.iter().map(|a| dirs.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: Vec<Q> = dirs.iter().map(|a| dot(a, &sub(&x, p0))).collect();
    let t = if dirs.is_empty() { Vec::new() } else { gauss(gram, rhs)? };
    let t0 = Q::one() - t.iter().sum::<Q>();
    Some((x, std::iter::once(t0).chain(t).collect()))
}

/// Closest point over every affinely independent subset with a non-negative
/// barycentric solution.
fn oracle_min_norm(pts: &[Vec<Q>], max_size: usize) -> Vec<Q> {
    let mut best: Option<(Q, Vec<Q>)> = None;
    let n = pts.len();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let sub_pts: Vec<Vec<Q>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        if let Some((x, bary)) = affine_piece(&sub_pts) {
            if bary.iter().all(|t| !t.is_negative()) {
                let nx = dot(&x, &x);
                if best.as_ref().is_none_or(|(b, _)| nx < *b) {
                    best = Some((nx, x));
                }
            }
        }
    }
    best.expect("singletons always qualify").1
}

fn random_weight<R: Rng>(shape: &GroupShape, rng: &mut R) -> AmbientWeight {
    let blocks: Vec<Vec<i64>> = shape
        .factors()
        .iter()
        .map(|&n| {
            let c: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2)).collect();
            let s: i64 = c.iter().sum();
            c.iter().map(|x| n as i64 * x - s).collect()
        })
        .collect();
    let refs: Vec<&[i64]> = blocks.iter().map(|b| b.as_slice()).collect();
    AmbientWeight::from_int_blocks(&refs).unwrap()
}

fn min_norm_against_oracle(trials: usize) {
    let shapes = [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3], vec![2, 2, 2]];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..trials {
        let shape = GroupShape::new(shapes[trial % shapes.len()].clone()).unwrap();
        assert!(shape.rank() <= 3);
        let count = rng.random_range(1..=7);
        let s = SupportSet::new((0..count).map(|_| random_weight(&shape, &mut rng))).unwrap();
        let mnp = min_norm_point(&s).unwrap();
        assert!(mnp.verify(&s));
        let pts: Vec<Vec<Q>> = s.weights().iter().map(|w| w.coords()).collect();
        let expected = oracle_min_norm(&pts, shape.rank() + 1);
        assert_eq!(mnp.point.coords(), expected, "support {:?}", s.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>());
    }
}

/// Coefficients (index k = x^k y^(d-k)) of prod (x - r y)^m times y^m_inf.
fn planted_form(roots: &[(Q, usize)], at_infinity: usize, scale: &Q) -> Vec<Q> {
    let mut poly = vec![scale.clone()];
    for (r, m) in roots {
        for _ in 0..*m {
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            poly = next;
        }
    }
    poly.resize(poly.len() + at_infinity, Q::zero());
    poly
}

fn binary_planted(trials: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..trials {
        let d = rng.random_range(1..=10usize);
        let mut left = d;
        let mut used = BTreeSet::new();
        let mut roots: Vec<(Q, usize)> = Vec::new();
        let mut at_infinity = 0;
        while left > 0 {
            let m = rng.random_range(1..=left);
            left -= m;
            if at_infinity == 0 && rng.random_bool(0.2) {
                at_infinity = m;
                continue;
            }
            let r = loop {
                let r = Q::new(rng.random_range(-6..=6).into(), rng.random_range(1..=3).into());
                if used.insert(r.clone()) {
                    break r;
                }
            };
            roots.push((r, m));
        }
        let scale = int(rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 });
        let truth = roots.iter().map(|(_, m)| *m).chain([at_infinity]).max().unwrap();
        let threshold = d / 2 + 1;
        let got = binary_instability(&planted_form(&roots, at_infinity, &scale)).unwrap();
        assert_eq!(got.max_multiplicity, truth);
        assert_eq!(got.unstable, truth >= threshold);

        // the torus criterion after moving each root to [0:1]
        for (i, (r, m)) in roots.iter().enumerate() {
            let moved: Vec<(Q, usize)> = roots.iter().enumerate().map(|(j, (s, k))| (if i == j { Q::zero() } else { s - r }, *k)).collect();
            let v = WeightVector::binary_form(&planted_form(&moved, at_infinity, &scale)).unwrap();
            assert_eq!(is_t_unstable(&v).unwrap(), *m >= threshold || at_infinity >= threshold);
        }
    }
}

fn properties() -> String {
    let mut labels = 0;
    for a in 0..=16u32 {
        for b in 0..=16 - a {
            let k = realize_irreducible(&Rationals, 3, a, b).unwrap().len() as u64;
            assert_eq!(k, dim(a, b), "V({a},{b})");
            labels += 1;
        }
    }
    weyl_invariance(1000);
    assert!(character_pool().iter().all(|m| m.is_w_invariant()));
    equivariance(1000);
    min_norm_against_oracle(200);
    binary_planted(500);
    format!("{labels} labels, 1000 W-invariance and 1000 equivariance trials, 200 min-norm supports, 500 binary forms")
}

// ---- runner ----

fn criterion(n: u32, title: &str, limit: Duration, f: fn() -> String) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(detail) if elapsed <= limit => (true, detail),
        Ok(detail) => (false, format!("{detail}; over the time limit")),
        Err(e) => {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, msg.unwrap_or_else(|| "panicked".into()))
        }
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} {title}: {verdict} in {:.2}s (limit {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs());
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "dimension certificates", secs(1), dimensions),
        criterion(2, "seven-points suite", secs(30), seven_points),
        criterion(3, "theta and two-form suite", secs(30), theta_and_two_forms),
        criterion(4, "nullcone suite", secs(300), nullcone),
        criterion(5, "strata examples", secs(120), strata_examples),
        criterion(6, "degree-34 heavy check", secs(900), v34_heavy),
        criterion(7, "property suites", secs(300), properties),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
