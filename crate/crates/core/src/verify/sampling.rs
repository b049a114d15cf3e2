//! Seeded random inputs for identity trials.
//!
//! Each identity gets its own ChaCha20 key, `seed ^ fnv1a64(name)`, and trial
//! `t` reads stream `t` of that key. A trial's inputs therefore depend only on
//! `(seed, identity name, t)`, never on which other trials ran or in what
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::rational::Rational;
use crate::sympoly::NodeSet;

/// Attempts per node before giving up on drawing a fresh distinct value.
pub const DISTINCT_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("could not draw {n} distinct nodes with coefficient bound {bound} after {DISTINCT_ATTEMPTS} attempts")]
    DistinctExhausted { n: usize, bound: i64 },
}

pub fn fnv1a64(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub fn trial_rng(seed: u64, identity: &str, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ fnv1a64(identity));
    rng.set_stream(trial);
    rng
}

pub struct Sampler {
    rng: ChaCha20Rng,
    bound: i64,
}

impl Sampler {
    /// `bound` must be at least 1.
    pub fn new(rng: ChaCha20Rng, bound: i64) -> Self {
        assert!(bound >= 1, "coefficient bound must be positive");
        Sampler { rng, bound }
    }

    pub fn for_trial(seed: u64, identity: &str, trial: u64, bound: i64) -> Self {
        Sampler::new(trial_rng(seed, identity, trial), bound)
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn rng(&mut self) -> &mut ChaCha20Rng {
        &mut self.rng
    }

    /// Numerator in `[-B, B]`, denominator in `[1, B]`, then reduced.
    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-self.bound..=self.bound);
        let den = self.rng.gen_range(1..=self.bound);
        Rational::from_ratio(num, den)
    }

    pub fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn nodes(&mut self, n: usize) -> NodeSet {
        NodeSet::new((0..n).map(|_| self.rational()).collect()).expect("n >= 1")
    }

    pub fn distinct_nodes(&mut self, n: usize) -> Result<NodeSet, SampleError> {
        let mut nodes: Vec<Rational> = Vec::with_capacity(n);
        for _ in 0..n {
            let fresh = (0..DISTINCT_ATTEMPTS)
                .map(|_| self.rational())
                .find(|candidate| !nodes.contains(candidate))
                .ok_or(SampleError::DistinctExhausted { n, bound: self.bound })?;
            nodes.push(fresh);
        }
        Ok(NodeSet::new(nodes).expect("n >= 1"))
    }

    /// A value distinct from everything in `avoid`.
    pub fn rational_avoiding(&mut self, avoid: &[Rational]) -> Result<Rational, SampleError> {
        (0..DISTINCT_ATTEMPTS)
            .map(|_| self.rational())
            .find(|candidate| !avoid.contains(candidate))
            .ok_or(SampleError::DistinctExhausted { n: avoid.len() + 1, bound: self.bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_independent() {
        let a: Vec<_> = (0..5).map(|_| Sampler::for_trial(42, "theorem1", 3, 50).nodes(4)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let other_trial = Sampler::for_trial(42, "theorem1", 4, 50).nodes(4);
        let other_identity = Sampler::for_trial(42, "corollary1", 3, 50).nodes(4);
        assert_ne!(a[0], other_trial);
        assert_ne!(a[0], other_identity);
    }

    #[test]
    fn values_respect_bound() {
        let mut s = Sampler::for_trial(1, "x", 0, 3);
        for _ in 0..500 {
            let r = s.rational();
            assert!(r.is_canonical());
            assert!(r.abs() <= Rational::from_integer(3));
            assert!(r.denom() <= &3.into());
        }
    }

    #[test]
    fn distinct_collisions_error_out() {
        // bound 1 admits only -1, 0, 1
        let mut s = Sampler::for_trial(9, "x", 0, 1);
        assert!(!s.distinct_nodes(3).unwrap().has_repeats());
        assert_eq!(s.distinct_nodes(4), Err(SampleError::DistinctExhausted { n: 4, bound: 1 }));
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a64("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
