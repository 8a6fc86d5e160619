//! Small deterministic PRNG used for seeded sampling.
//!
//! Everything downstream (word sampling, suite randomness) must be
//! reproducible from a single `u64` seed across platforms, so we use a
//! self-contained splitmix64 stream instead of pulling in an external
//! generator.

/// splitmix64 stream; identical output for identical seeds on every platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derive an independent stream for a labelled sub-task.
    ///
    /// Used to give every sample of a suite its own generator so that
    /// parallel evaluation order cannot influence results.
    pub fn fork(&self, label: u64) -> Self {
        let mut mixer = SplitMix64 {
            state: self.state ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        };
        // burn a few outputs so forks with nearby labels decorrelate
        mixer.next_u64();
        mixer.next_u64();
        SplitMix64 {
            state: mixer.next_u64(),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)`; `n` must be nonzero.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // rejection sampling to avoid modulo bias
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform value in the inclusive range `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn forks_depend_only_on_state_and_label() {
        let parent = SplitMix64::new(7);
        let mut f1 = parent.fork(3);
        let mut f2 = SplitMix64::new(7).fork(3);
        assert_eq!(f1.next_u64(), f2.next_u64());
        let mut other = parent.fork(4);
        let mut f3 = parent.fork(3);
        f3.next_u64();
        assert_ne!(other.next_u64(), f3.next_u64());
    }

    #[test]
    fn below_in_range() {
        let mut r = SplitMix64::new(1);
        for _ in 0..1000 {
            assert!(r.below(7) < 7);
            let v = r.range_i64(-3, 3);
            assert!((-3..=3).contains(&v));
        }
    }
}
