//! Adaptively redundant memory.
//!
//! Logical 32-bit cells are stored as odd-sized replica sets and read back
//! through majority voting. Every vote yields a risk-of-failure sample, and a
//! feedback controller turns those samples into redundancy changes: more
//! replicas while disagreement shows up, fewer after a long enough quiet
//! spell. A small scripting language drives deterministic fault injection
//! against the physical memory so experiments can be replayed exactly.

pub mod adaptation;
pub mod error;
pub mod harness;
pub mod injection;
pub mod memory;
pub mod voting;

pub use adaptation::{AdaptationPolicy, Cause, RedundancyController, RedundancyEvent};
pub use error::{Error, Result};
pub use harness::{
    cost, emit_trace, run_experiment, run_script, ExperimentConfig, ExperimentReport,
};
pub use injection::{parse_script, InjectionEngine, Prng, ScriptCommand};
pub use memory::{CellCounters, LayoutMap, PhysicalMemory, ReadOutcome, RedundantStore};
pub use voting::{compute_risk, majority_vote, RiskSample, VoteResult};

/// Contents of one physical memory cell.
pub type Word = u32;
