//! Seeded inputs shared by the benchmarks.

use nullstrat_core::{AmbientWeight, GroupShape, SupportSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` random weights of `SL_n1 x ... x SL_nk` with entries drawn from -2..=2
/// before centering.
pub fn random_support(factors: &[usize], count: usize, seed: u64) -> SupportSet {
    let shape = GroupShape::new(factors.to_vec()).expect("valid shape");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..count).map(|_| {
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
        AmbientWeight::from_int_blocks(&refs).expect("centered blocks")
    });
    SupportSet::new(weights).expect("nonempty support")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supports_are_reproducible() {
        assert_eq!(random_support(&[3], 5, 4), random_support(&[3], 5, 4));
    }
}
