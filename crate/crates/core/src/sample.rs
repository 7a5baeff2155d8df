//! Seeded random sample points.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cyclo::{CycloNum, Rational};

/// `count` distinct positive rationals sharing one small denominator.
///
/// Keeping the denominator common and small lets the transfer-matrix
/// kernels stay in machine-integer arithmetic after clearing it.
pub fn random_rationals<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Rational> {
    let den = rng.gen_range(1..=5i64);
    let mut pool: Vec<i64> = (1..=40i64.max(2 * count as i64)).collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool.into_iter().map(|k| Rational::new(k, den)).collect()
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<CycloNum> {
    random_rationals(rng, count)
        .into_iter()
        .map(CycloNum::from)
        .collect()
}
