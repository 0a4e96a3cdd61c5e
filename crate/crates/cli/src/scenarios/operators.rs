use nullstrat_core::field::random_prime;
use nullstrat_core::methods::zero_loci_ledger;
use nullstrat_core::repchar::weyl_dim;
use nullstrat_core::tensorcalc::{kernel_dims_seven_points, seven_point_data};
use nullstrat_core::{Field, IrrLabel, PolyTensor, PrimeField, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::Recorder;
use crate::{CliError, Params};

const SEVEN: &str = "seven points in the plane";

/// Draws two distinct primes in `[101, 10000)` from the seed.
pub(crate) fn seeded_primes(seed: u64) -> Result<[u64; 2], CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_prime(&mut rng, 101, 10_000)?;
    loop {
        let q = random_prime(&mut rng, 101, 10_000)?;
        if q != p {
            return Ok([p, q]);
        }
    }
}

pub fn seven_points(p: &Params, rec: &mut Recorder) -> Result<(), CliError> {
    rec.check("dim V(1,2)", SEVEN, 15, weyl_dim(&IrrLabel::sl3(1, 2)));
    rec.ledger("", &zero_loci_ledger(1)?);

    let q = Rationals;
    let data = seven_point_data(&q)?;
    rec.check("F lies in V(1,2): bidegree (1,2) and Delta F = 0", SEVEN, true, data.f.bidegree() == (1, 2) && data.f.delta()?.is_zero());
    rec.check("G1 lies in V(0,2)", SEVEN, (0, 2), data.g1.bidegree());
    rec.check("G2 lies in V(1,0)", SEVEN, (1, 0), data.g2.bidegree());
    let expected_h = PolyTensor::e(q, 3, 1).scale(&q.from_i64(-32));
    rec.check("H = psi(F, G2)", SEVEN, expected_h.to_string(), data.h.to_string());
    rec.check("beta(F, (G1, G2))", SEVEN, "0".to_string(), data.beta.projected.to_string());

    let expected = [1, 7, 4];
    let k = kernel_dims_seven_points(&q)?;
    rec.check("kernel dimensions over Q", SEVEN, expected, [k.k1, k.k2, k.k3]);
    rec.check("kernel dimensions over Q without projection", SEVEN, expected, [k.raw.0, k.raw.1, k.raw.2]);
    rec.info("projection onto ker Delta applied", SEVEN, k.projection_applied);
    for prime in seeded_primes(p.seed)? {
        let k = kernel_dims_seven_points(&PrimeField::new(prime)?)?;
        rec.probe(format!("kernel dimensions over F_{prime}"), SEVEN, expected, [k.k1, k.k2, k.k3]);
    }
    Ok(())
}
