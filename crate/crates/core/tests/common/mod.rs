#![allow(dead_code)]

pub mod small_ordinal;

use lset::{BitString, LabelledSet};
use rand::Rng;

pub fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

/// Random bitmap set with a density drawn uniformly from [0, 1], so sparse and
/// dense sets both show up.
pub fn random_set<R: Rng>(n: usize, rng: &mut R) -> LabelledSet {
    let density = rng.gen_range(0.0..=1.0);
    LabelledSet::random(n, density, rng).unwrap()
}

pub fn random_bits<R: Rng>(n: usize, rng: &mut R) -> BitString {
    BitString::from_bits((0..n).map(|_| rng.gen::<bool>()))
}
