use super::{Prng, ScriptCommand};
use crate::error::{Error, Result};
use crate::memory::PhysicalMemory;

/// Corrupts physical memory on behalf of injection commands.
///
/// Draw order per repetition is fixed: target index, then the Bernoulli
/// gate, then one mask per corrupted word (only when the gate opens).
#[derive(Debug, Clone)]
pub struct InjectionEngine {
    rng: Prng,
    scrambled_count: u64,
}

impl InjectionEngine {
    pub fn new(seed: u64) -> Self {
        InjectionEngine {
            rng: Prng::new(seed),
            scrambled_count: 0,
        }
    }

    pub fn rng(&self) -> &Prng {
        &self.rng
    }

    /// Successful corruptions so far, counting each burst word separately.
    pub fn scrambled_count(&self) -> u64 {
        self.scrambled_count
    }

    /// `n` tries at a uniformly chosen word, each succeeding with probability `p`.
    pub fn scramble(&mut self, memory: &mut PhysicalMemory, n: u64, p: f64) {
        let capacity = memory.capacity();
        for _ in 0..n {
            let target = self.rng.uniform_index(capacity);
            if self.rng.bernoulli(p) {
                let mask = self.rng.nonzero_mask();
                memory.corrupt(target, mask);
                self.scrambled_count += 1;
            }
        }
    }

    /// `n` tries at `len` contiguous words; `p` gates each whole burst.
    pub fn burst(&mut self, memory: &mut PhysicalMemory, n: u64, p: f64, len: usize) -> Result<()> {
        let capacity = memory.capacity();
        if len == 0 || len > capacity {
            return Err(Error::invalid(format!(
                "burst length {len} does not fit a memory of {capacity} words"
            )));
        }
        for _ in 0..n {
            let start = self.rng.uniform_index(capacity - len + 1);
            if self.rng.bernoulli(p) {
                for addr in start..start + len {
                    let mask = self.rng.nonzero_mask();
                    memory.corrupt(addr, mask);
                }
                self.scrambled_count += len as u64;
            }
        }
        Ok(())
    }

    /// Runs one injection command. `SLEEP` and `END` are no-ops here.
    pub fn execute(&mut self, memory: &mut PhysicalMemory, command: &ScriptCommand) -> Result<()> {
        match *command {
            ScriptCommand::Scramble { n, p } => self.scramble(memory, n, p),
            ScriptCommand::Burst { n, p, len } => self.burst(memory, n, p, len)?,
            ScriptCommand::Sleep { .. } | ScriptCommand::End => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_repetitions_draw_nothing() {
        let mut mem = PhysicalMemory::new(100);
        let mut engine = InjectionEngine::new(9);
        engine.scramble(&mut mem, 0, 1.0);
        assert_eq!(engine.rng(), &Prng::new(9));
        assert_eq!(engine.scrambled_count(), 0);
    }

    #[test]
    fn failed_try_consumes_two_draws() {
        let mut mem = PhysicalMemory::new(100);
        let mut engine = InjectionEngine::new(9);
        engine.scramble(&mut mem, 1, 0.0);
        let mut reference = Prng::new(9);
        reference.next_u64();
        reference.next_u64();
        assert_eq!(engine.rng(), &reference);
        assert!(mem.words().iter().all(|&w| w == 0));
    }

    #[test]
    fn forced_scramble_changes_the_drawn_cell() {
        let mut mem = PhysicalMemory::new(1000);
        let mut engine = InjectionEngine::new(5);
        let mut reference = Prng::new(5);
        let target = reference.uniform_index(1000);
        engine.scramble(&mut mem, 1, 1.0);
        assert_eq!(engine.scrambled_count(), 1);
        for (addr, &w) in mem.words().iter().enumerate() {
            assert_eq!(w != 0, addr == target);
        }
    }

    #[test]
    fn unit_burst_is_a_forced_scramble() {
        let mut a = PhysicalMemory::new(500);
        let mut b = PhysicalMemory::new(500);
        let mut ea = InjectionEngine::new(77);
        let mut eb = InjectionEngine::new(77);
        ea.burst(&mut a, 1, 1.0, 1).unwrap();
        eb.scramble(&mut b, 1, 1.0);
        assert_eq!(a, b);
        assert_eq!(ea.scrambled_count(), 1);
    }

    #[test]
    fn gated_burst_does_nothing() {
        let mut mem = PhysicalMemory::new(500);
        let mut engine = InjectionEngine::new(77);
        engine.burst(&mut mem, 1, 0.0, 10).unwrap();
        assert!(mem.words().iter().all(|&w| w == 0));
        assert_eq!(engine.scrambled_count(), 0);
    }

    #[test]
    fn burst_hits_contiguous_words() {
        let mut mem = PhysicalMemory::new(500);
        let mut engine = InjectionEngine::new(3);
        engine.burst(&mut mem, 1, 1.0, 10).unwrap();
        let hit: Vec<usize> = (0..500).filter(|&a| mem.load(a) != 0).collect();
        assert_eq!(hit.len(), 10);
        assert_eq!(hit[9] - hit[0], 9);
        assert_eq!(engine.scrambled_count(), 10);
    }

    #[test]
    fn burst_longer_than_memory_is_rejected() {
        let mut mem = PhysicalMemory::new(8);
        let mut engine = InjectionEngine::new(3);
        assert!(engine.burst(&mut mem, 1, 1.0, 9).is_err());
        assert!(engine.burst(&mut mem, 1, 1.0, 8).is_ok());
        assert!(mem.words().iter().all(|&w| w != 0));
    }

    #[test]
    fn scramble_rate_matches_probability() {
        let mut mem = PhysicalMemory::new(220_000);
        let mut engine = InjectionEngine::new(1);
        engine.scramble(&mut mem, 10_000, 0.918_315_638_888_734_2);
        let got = engine.scrambled_count() as f64;
        assert!((got - 9183.0).abs() <= 0.03 * 9183.0, "{got}");
    }
}
