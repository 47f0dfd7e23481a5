//! Experiment runner: injection schedule, round-robin read workload and the
//! adaptation loop, plus the summary and trace outputs.

mod report;
mod schedule;

use std::path::PathBuf;

pub use report::{cost, emit_trace, ExperimentReport};
pub use schedule::{compile_schedule, ScheduledCommand};

use crate::adaptation::{AdaptationPolicy, RedundancyController};
use crate::error::{Error, Result};
use crate::injection::{parse_script, InjectionEngine, ScriptCommand};
use crate::memory::{LayoutMap, RedundantStore, MAX_REDUNDANCY, MIN_REDUNDANCY};

/// Reads used by the test suite and desk runs.
pub const DESK_READS: u64 = 1_000_000;
/// Reads in the full-scale runs.
pub const FULL_READS: u64 = 65_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub script_path: PathBuf,
    pub initial_redundancy: usize,
    pub scrub: bool,
    pub adaptive: bool,
    pub n_cells: usize,
    pub stride: usize,
    pub total_reads: u64,
    pub seed: u64,
    /// Reads per virtual second of `SLEEP`.
    pub reads_per_second: u64,
    pub trace_path: Option<PathBuf>,
    pub policy: AdaptationPolicy,
}

impl ExperimentConfig {
    pub fn new(script_path: impl Into<PathBuf>, initial_redundancy: usize) -> Self {
        ExperimentConfig {
            script_path: script_path.into(),
            initial_redundancy,
            scrub: true,
            adaptive: false,
            n_cells: 20_000,
            stride: 20,
            total_reads: FULL_READS,
            seed: 1,
            reads_per_second: 100_000,
            trace_path: None,
            policy: AdaptationPolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let level = self.initial_redundancy;
        if level % 2 == 0 || !(MIN_REDUNDANCY..=MAX_REDUNDANCY).contains(&level) {
            return Err(Error::Config(format!(
                "initial redundancy must be odd and within [{MIN_REDUNDANCY}, {MAX_REDUNDANCY}], got {level}"
            )));
        }
        for (name, value) in [
            ("cell count", self.n_cells as u64),
            ("stride", self.stride as u64),
            ("read count", self.total_reads),
            ("reads per second", self.reads_per_second),
        ] {
            if value == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.n_cells % self.stride != 0 {
            return Err(Error::Config(format!(
                "cell count {} is not a multiple of stride {}",
                self.n_cells, self.stride
            )));
        }
        self.policy
            .validate()
            .map_err(|e| Error::Config(e.to_string()))
    }
}

/// Loads and parses the configured script, then runs it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let text = std::fs::read_to_string(&config.script_path)?;
    let commands = parse_script(&text)?;
    run_script(config, &commands)
}

/// Runs an already parsed script. `config.script_path` is not read.
///
/// Per read cycle `c` (1-based): injection commands scheduled at `c` run
/// first, then the store picks up the published level, then cell
/// `(c - 1) % n_cells` is read and its risk fed to the controller.
pub fn run_script(config: &ExperimentConfig, commands: &[ScriptCommand]) -> Result<ExperimentReport> {
    config.validate()?;
    let layout = LayoutMap::new(config.n_cells, config.stride, MAX_REDUNDANCY)?;
    let mut store = RedundantStore::new(layout, config.initial_redundancy, config.scrub)?;
    let mut controller = RedundancyController::new(config.policy, config.initial_redundancy)
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut engine = InjectionEngine::new(config.seed);

    for cell in 0..config.n_cells {
        store.write(cell, cell as u32)?;
    }

    let schedule = compile_schedule(commands, config.reads_per_second);
    let mut pending = schedule.iter().peekable();
    let mut executed = Vec::new();
    let mut events = Vec::new();

    for cycle in 1..=config.total_reads {
        while let Some(next) = pending.next_if(|s| s.cycle <= cycle) {
            engine.execute(store.memory_mut(), &next.command)?;
            executed.push(*next);
        }
        if config.adaptive {
            store.set_redundancy(controller.publish())?;
        }
        let cell = ((cycle - 1) % config.n_cells as u64) as usize;
        let outcome = store.read(cell)?;
        if config.adaptive {
            if let Some(event) = controller.observe(outcome.vote.risk(), cycle) {
                events.push(event);
            }
        }
    }

    let counters = store.counters();
    Ok(ExperimentReport {
        initial_redundancy: config.initial_redundancy,
        total_reads: config.total_reads,
        scrambled_cells: engine.scrambled_count(),
        failures: counters.read_failures,
        final_redundancy: if config.adaptive {
            controller.publish()
        } else {
            config.initial_redundancy
        },
        runs_per_level: counters.reads_at_redundancy.clone(),
        replica_accesses: counters.replica_accesses,
        events,
        executed,
    })
}
