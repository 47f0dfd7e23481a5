//! Majority voting over replica sets and the risk-of-failure metric derived
//! from each vote.
//!
//! For a redundancy of `k = 2n + 1` replicas and a largest agreeing subset of
//! size `m`, the risk is
//!
//! ```text
//! r = (k - m) / n   if m > n
//! r = 1             otherwise
//! ```
//!
//! Risk is kept as an exact fraction so that the adaptation threshold test and
//! the zero test never depend on floating-point rounding.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Word;

pub const MIN_VOTERS: usize = 3;
pub const MAX_VOTERS: usize = 11;

/// Outcome of one vote over `k` replicas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VoteResult {
    /// Value held by more than half of the replicas, if any.
    pub majority_value: Option<Word>,
    /// Size of the largest set of agreeing replicas.
    pub m: usize,
    /// Number of replicas that took part in the vote.
    pub k: usize,
}

impl VoteResult {
    pub fn is_failure(&self) -> bool {
        self.majority_value.is_none()
    }

    /// Number of replicas the majority can lose before voting fails (`n`).
    pub fn margin(&self) -> usize {
        self.k / 2
    }

    pub fn risk(&self) -> RiskSample {
        // k and m come from an actual vote, so the preconditions hold.
        compute_risk(self.k, self.m).expect("vote result satisfies risk preconditions")
    }
}

fn check_voters(k: usize) -> Result<()> {
    if k % 2 == 0 || !(MIN_VOTERS..=MAX_VOTERS).contains(&k) {
        return Err(Error::invalid(format!(
            "redundancy must be odd and within [{MIN_VOTERS}, {MAX_VOTERS}], got {k}"
        )));
    }
    Ok(())
}

/// Votes over `replicas`, comparing values bitwise.
pub fn majority_vote(replicas: &[Word]) -> Result<VoteResult> {
    let k = replicas.len();
    check_voters(k)?;

    // k <= 11, so the quadratic count is cheaper than any map.
    let mut best_value = replicas[0];
    let mut best_count = 0;
    for (i, &candidate) in replicas.iter().enumerate() {
        if replicas[..i].contains(&candidate) {
            continue;
        }
        let count = replicas[i..].iter().filter(|&&v| v == candidate).count();
        if count > best_count {
            best_count = count;
            best_value = candidate;
        }
    }

    let majority_value = (best_count > k / 2).then_some(best_value);
    Ok(VoteResult {
        majority_value,
        m: best_count,
        k,
    })
}

/// Risk of failure as the exact fraction `numer / denom`, always in `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct RiskSample {
    numer: u32,
    denom: u32,
}

impl RiskSample {
    pub const ZERO: RiskSample = RiskSample { numer: 0, denom: 1 };
    pub const ONE: RiskSample = RiskSample { numer: 1, denom: 1 };

    /// Builds `numer / denom`; rejects values outside `[0, 1]`.
    pub fn new(numer: u32, denom: u32) -> Result<Self> {
        if denom == 0 || numer > denom {
            return Err(Error::invalid(format!(
                "risk {numer}/{denom} is not within [0, 1]"
            )));
        }
        Ok(RiskSample { numer, denom })
    }

    pub fn numer(&self) -> u32 {
        self.numer
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn value(&self) -> f64 {
        f64::from(self.numer) / f64::from(self.denom)
    }

    /// `true` when the risk is strictly above `threshold`.
    ///
    /// Compares `numer > threshold * denom`; both sides are exact for the
    /// small integers involved and any dyadic threshold such as 0.5.
    pub fn exceeds(&self, threshold: f64) -> bool {
        f64::from(self.numer) > threshold * f64::from(self.denom)
    }
}

impl PartialEq for RiskSample {
    fn eq(&self, other: &Self) -> bool {
        u64::from(self.numer) * u64::from(other.denom)
            == u64::from(other.numer) * u64::from(self.denom)
    }
}

impl Eq for RiskSample {}

impl PartialOrd for RiskSample {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RiskSample {
    fn cmp(&self, other: &Self) -> Ordering {
        (u64::from(self.numer) * u64::from(other.denom))
            .cmp(&(u64::from(other.numer) * u64::from(self.denom)))
    }
}

impl fmt::Display for RiskSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Risk of failure for a vote of `k` replicas with `m` in agreement.
pub fn compute_risk(k: usize, m: usize) -> Result<RiskSample> {
    if k % 2 == 0 || k < MIN_VOTERS {
        return Err(Error::invalid(format!(
            "redundancy must be odd and at least {MIN_VOTERS}, got {k}"
        )));
    }
    if m == 0 || m > k {
        return Err(Error::invalid(format!(
            "agreement count {m} outside [1, {k}]"
        )));
    }
    let n = k / 2;
    if m > n {
        RiskSample::new((k - m) as u32, n as u32)
    } else {
        Ok(RiskSample::ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unanimous_vote() {
        let v = majority_vote(&[5, 5, 5]).unwrap();
        assert_eq!(v.majority_value, Some(5));
        assert_eq!(v.m, 3);
    }

    #[test]
    fn split_vote_with_majority() {
        let v = majority_vote(&[5, 5, 9, 9, 5]).unwrap();
        assert_eq!(v.majority_value, Some(5));
        assert_eq!(v.m, 3);
    }

    #[test]
    fn all_distinct_has_no_majority() {
        let v = majority_vote(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(v.majority_value, None);
        assert_eq!(v.m, 1);
        assert!(v.is_failure());
    }

    #[test]
    fn plurality_without_majority_fails() {
        // 7 is the plurality with 2 of 5, which is not a majority.
        let v = majority_vote(&[7, 7, 1, 2, 3]).unwrap();
        assert_eq!(v.majority_value, None);
        assert_eq!(v.m, 2);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(majority_vote(&[1, 1]).is_err());
        assert!(majority_vote(&[1]).is_err());
        assert!(majority_vote(&[]).is_err());
        assert!(majority_vote(&[0; 13]).is_err());
        assert!(majority_vote(&[0; 11]).is_ok());
    }

    #[test]
    fn risk_examples() {
        assert_eq!(compute_risk(7, 6).unwrap(), RiskSample::new(1, 3).unwrap());
        assert!(compute_risk(3, 3).unwrap().is_zero());
        assert_eq!(compute_risk(5, 2).unwrap(), RiskSample::ONE);
    }

    #[test]
    fn risk_rejects_bad_arguments() {
        assert!(compute_risk(4, 3).is_err());
        assert!(compute_risk(1, 1).is_err());
        assert!(compute_risk(5, 0).is_err());
        assert!(compute_risk(5, 6).is_err());
    }

    #[test]
    fn threshold_is_strict() {
        // k = 5, m = 4 gives exactly one half.
        let half = compute_risk(5, 4).unwrap();
        assert!(!half.exceeds(0.5));
        assert!(compute_risk(5, 3).unwrap().exceeds(0.5));
        assert!(compute_risk(3, 2).unwrap().exceeds(0.5));
    }

    #[test]
    fn risk_ordering() {
        assert!(compute_risk(7, 6).unwrap() < compute_risk(7, 5).unwrap());
        assert_eq!(compute_risk(9, 5).unwrap(), RiskSample::ONE);
    }
}
