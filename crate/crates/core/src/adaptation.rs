//! Risk-driven redundancy controller.
//!
//! The controller sees one risk sample per read. A sample above the raise
//! threshold adds `step` replicas; `calm_window` consecutive zero-risk
//! samples remove `step` replicas. Any nonzero sample, and any level change,
//! restarts the calm count. The level the controller publishes is what the
//! store must run at for the next read.

use std::fmt;

use crate::error::{Error, Result};
use crate::voting::RiskSample;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationPolicy {
    pub raise_threshold: f64,
    pub calm_window: u64,
    pub step: usize,
    pub min_redundancy: usize,
    pub max_redundancy: usize,
}

impl Default for AdaptationPolicy {
    fn default() -> Self {
        AdaptationPolicy {
            raise_threshold: 0.5,
            calm_window: 1000,
            step: 2,
            min_redundancy: 3,
            max_redundancy: 11,
        }
    }
}

impl AdaptationPolicy {
    pub fn validate(&self) -> Result<()> {
        let AdaptationPolicy {
            raise_threshold,
            calm_window,
            step,
            min_redundancy: lo,
            max_redundancy: hi,
        } = *self;
        if lo % 2 == 0 || hi % 2 == 0 || lo > hi {
            return Err(Error::invalid(format!(
                "redundancy bounds [{lo}, {hi}] must be odd and ordered"
            )));
        }
        if step == 0 || step % 2 != 0 || (hi - lo) % step != 0 {
            return Err(Error::invalid(format!(
                "step {step} must be even, nonzero and divide the bound span"
            )));
        }
        if !(raise_threshold > 0.0 && raise_threshold < 1.0) {
            return Err(Error::invalid(format!(
                "raise threshold {raise_threshold} must lie strictly between 0 and 1"
            )));
        }
        if calm_window == 0 {
            return Err(Error::invalid("calm window must be at least 1"));
        }
        Ok(())
    }

    fn admits(&self, level: usize) -> bool {
        (self.min_redundancy..=self.max_redundancy).contains(&level)
            && (level - self.min_redundancy) % self.step == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cause {
    Raised,
    Lowered,
}

impl fmt::Display for Cause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cause::Raised => "raised",
            Cause::Lowered => "lowered",
        })
    }
}

/// A level change. `cycle` is the read whose risk sample caused it; the new
/// level applies from the following read on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RedundancyEvent {
    pub cycle: u64,
    pub new_level: usize,
    pub cause: Cause,
}

#[derive(Debug, Clone)]
pub struct RedundancyController {
    policy: AdaptationPolicy,
    current: usize,
    calm_count: u64,
    last_cycle: Option<u64>,
}

impl RedundancyController {
    pub fn new(policy: AdaptationPolicy, initial: usize) -> Result<Self> {
        policy.validate()?;
        if !policy.admits(initial) {
            return Err(Error::invalid(format!(
                "initial redundancy {initial} is not a reachable level in [{}, {}]",
                policy.min_redundancy, policy.max_redundancy
            )));
        }
        Ok(RedundancyController {
            policy,
            current: initial,
            calm_count: 0,
            last_cycle: None,
        })
    }

    pub fn policy(&self) -> &AdaptationPolicy {
        &self.policy
    }

    /// The published redundancy level.
    pub fn publish(&self) -> usize {
        self.current
    }

    pub fn calm_count(&self) -> u64 {
        self.calm_count
    }

    /// Feeds the risk sample of read `cycle`. Cycles must strictly increase.
    pub fn observe(&mut self, risk: RiskSample, cycle: u64) -> Option<RedundancyEvent> {
        debug_assert!(
            self.last_cycle.map_or(true, |last| cycle > last),
            "cycle {cycle} observed out of order"
        );
        self.last_cycle = Some(cycle);

        if risk.exceeds(self.policy.raise_threshold) {
            self.calm_count = 0;
            if self.current < self.policy.max_redundancy {
                self.current += self.policy.step;
                return Some(RedundancyEvent {
                    cycle,
                    new_level: self.current,
                    cause: Cause::Raised,
                });
            }
            return None;
        }

        if !risk.is_zero() {
            self.calm_count = 0;
            return None;
        }

        self.calm_count += 1;
        if self.calm_count >= self.policy.calm_window {
            // Saturated at the floor: keep counting from zero.
            self.calm_count = 0;
            if self.current > self.policy.min_redundancy {
                self.current -= self.policy.step;
                return Some(RedundancyEvent {
                    cycle,
                    new_level: self.current,
                    cause: Cause::Lowered,
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voting::compute_risk;

    fn controller(initial: usize) -> RedundancyController {
        RedundancyController::new(AdaptationPolicy::default(), initial).unwrap()
    }

    #[test]
    fn high_risk_raises() {
        let mut c = controller(5);
        let ev = c.observe(RiskSample::ONE, 1).unwrap();
        assert_eq!(ev.new_level, 7);
        assert_eq!(ev.cause, Cause::Raised);
        assert_eq!(c.publish(), 7);
    }

    #[test]
    fn calm_window_lowers_at_exactly_1000() {
        let mut c = controller(5);
        for cycle in 1..1000 {
            assert!(c.observe(RiskSample::ZERO, cycle).is_none());
        }
        let ev = c.observe(RiskSample::ZERO, 1000).unwrap();
        assert_eq!(ev.cycle, 1000);
        assert_eq!(ev.new_level, 3);
        assert_eq!(ev.cause, Cause::Lowered);
        assert_eq!(c.calm_count(), 0);
    }

    #[test]
    fn saturates_at_max() {
        let mut c = controller(11);
        assert!(c.observe(RiskSample::ONE, 1).is_none());
        assert_eq!(c.publish(), 11);
    }

    #[test]
    fn saturates_at_min() {
        let mut c = controller(3);
        for cycle in 1..=5000 {
            assert!(c.observe(RiskSample::ZERO, cycle).is_none());
        }
        assert_eq!(c.publish(), 3);
    }

    #[test]
    fn low_nonzero_risk_resets_calm_count() {
        let mut c = controller(7);
        for cycle in 1..=999 {
            c.observe(RiskSample::ZERO, cycle);
        }
        // One disagreeing replica out of seven.
        assert!(c.observe(compute_risk(7, 6).unwrap(), 1000).is_none());
        assert_eq!(c.calm_count(), 0);
        for cycle in 1001..2000 {
            assert!(c.observe(RiskSample::ZERO, cycle).is_none());
        }
        assert!(c.observe(RiskSample::ZERO, 2000).is_some());
    }

    #[test]
    fn half_risk_does_not_raise() {
        let mut c = controller(5);
        assert!(c.observe(compute_risk(5, 4).unwrap(), 1).is_none());
        assert_eq!(c.publish(), 5);
    }

    #[test]
    fn publish_tracks_level() {
        let mut c = controller(5);
        assert_eq!(c.publish(), 5);
        c.observe(RiskSample::ONE, 1);
        assert_eq!(c.publish(), 7);
        for cycle in 2..10 {
            c.observe(RiskSample::ONE, cycle);
        }
        assert_eq!(c.publish(), 11);
    }

    #[test]
    fn rejects_bad_policies() {
        let base = AdaptationPolicy::default();
        for bad in [
            AdaptationPolicy { step: 3, ..base },
            AdaptationPolicy { step: 0, ..base },
            AdaptationPolicy { min_redundancy: 4, ..base },
            AdaptationPolicy { min_redundancy: 13, ..base },
            AdaptationPolicy { raise_threshold: 1.0, ..base },
            AdaptationPolicy { raise_threshold: 0.0, ..base },
            AdaptationPolicy { calm_window: 0, ..base },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
        assert!(RedundancyController::new(base, 4).is_err());
        assert!(RedundancyController::new(base, 13).is_err());
    }
}
