/// xorshift64* generator.
///
/// Fixed shifts (12, 25, 27) and multiplier make the sequence identical on
/// every platform for a given seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prng {
    state: u64,
}

/// Substituted for a zero seed, which would lock the state at zero.
pub const ZERO_SEED_REPLACEMENT: u64 = 0x9E37_79B9_7F4A_7C15;

const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;
const TWO_POW_53: f64 = (1u64 << 53) as f64;

impl Prng {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { ZERO_SEED_REPLACEMENT } else { seed };
        Prng { state }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    /// Index in `[0, bound)` by plain modulo reduction. The slight bias for
    /// bounds that do not divide 2^64 is accepted.
    pub fn uniform_index(&mut self, bound: usize) -> usize {
        assert!(bound >= 1, "uniform_index needs a positive bound");
        (self.next_u64() % bound as u64) as usize
    }

    /// `true` with probability `p`, from the top 53 bits of one draw.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        let u = (self.next_u64() >> 11) as f64 / TWO_POW_53;
        u < p
    }

    /// Nonzero 32-bit mask from the low half of a draw, redrawn on zero.
    pub fn nonzero_mask(&mut self) -> u32 {
        loop {
            let mask = self.next_u64() as u32;
            if mask != 0 {
                return mask;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Golden values from a separate scratch implementation of the recurrence.
    #[test]
    fn seed_one_golden_values() {
        let mut rng = Prng::new(1);
        assert_eq!(rng.next_u64(), 0x47E4_CE4B_896C_DD1D);
        let mut rng = Prng::new(1);
        let thousandth = (0..1000).map(|_| rng.next_u64()).last().unwrap();
        assert_eq!(thousandth, 0x0304_E771_4A5F_ABC4);
    }

    #[test]
    fn uniform_index_golden() {
        let mut rng = Prng::new(1);
        let first: Vec<usize> = (0..3).map(|_| rng.uniform_index(220_000)).collect();
        assert_eq!(first, vec![35165, 71517, 50103]);
    }

    #[test]
    fn bound_one_is_always_zero() {
        let mut rng = Prng::new(7);
        assert!((0..100).all(|_| rng.uniform_index(1) == 0));
    }

    #[test]
    fn every_residue_appears() {
        let mut rng = Prng::new(1);
        let mut seen = [0u32; 16];
        for _ in 0..100_000 {
            seen[rng.uniform_index(16)] += 1;
        }
        assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
    }

    #[test]
    fn bernoulli_extremes() {
        let mut rng = Prng::new(3);
        assert!((0..10_000).all(|_| rng.bernoulli(1.0)));
        assert!((0..10_000).all(|_| !rng.bernoulli(0.0)));
    }

    #[test]
    fn bernoulli_rate() {
        let p = 0.918_315_638_888_734_2;
        let mut rng = Prng::new(1);
        let hits = (0..40_000).filter(|_| rng.bernoulli(p)).count() as f64;
        assert!((hits - 36_733.0).abs() <= 0.02 * 36_733.0, "{hits}");
    }

    #[test]
    fn equal_seeds_agree() {
        let mut a = Prng::new(0xABCD);
        let mut b = Prng::new(0xABCD);
        for _ in 0..1_000_000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn zero_seed_is_replaced() {
        let mut rng = Prng::new(0);
        assert_eq!(rng.state(), ZERO_SEED_REPLACEMENT);
        assert_ne!(rng.next_u64(), 0);
    }
}
