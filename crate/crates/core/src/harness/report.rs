use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use super::ScheduledCommand;
use crate::adaptation::RedundancyEvent;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub initial_redundancy: usize,
    pub total_reads: u64,
    pub scrambled_cells: u64,
    pub failures: u64,
    pub final_redundancy: usize,
    pub runs_per_level: BTreeMap<usize, u64>,
    pub replica_accesses: u64,
    pub events: Vec<RedundancyEvent>,
    /// Script commands that were reached, with their cycle.
    pub executed: Vec<ScheduledCommand>,
}

impl ExperimentReport {
    pub fn reads_at(&self, level: usize) -> u64 {
        self.runs_per_level.get(&level).copied().unwrap_or(0)
    }

    /// Fraction of reads performed at `level`.
    pub fn share_at(&self, level: usize) -> f64 {
        self.reads_at(level) as f64 / self.total_reads as f64
    }
}

/// Replica reads weighted by the level each logical read ran at.
pub fn cost(report: &ExperimentReport) -> u64 {
    report
        .runs_per_level
        .iter()
        .map(|(&level, &runs)| level as u64 * runs)
        .sum()
}

/// Writes the redundancy step function as `cycle,redundancy` rows.
///
/// A row's level holds for the reads after its cycle.
pub fn emit_trace<W: Write>(report: &ExperimentReport, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "cycle,redundancy")?;
    writeln!(sink, "0,{}", report.initial_redundancy)?;
    for event in &report.events {
        writeln!(sink, "{},{}", event.cycle, event.new_level)?;
    }
    writeln!(sink, "{},{}", report.total_reads, report.final_redundancy)?;
    sink.flush()
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} scrambled cells, {} failures, redundance == {}",
            self.scrambled_cells, self.failures, self.final_redundancy
        )?;
        for (level, runs) in &self.runs_per_level {
            writeln!(f, "redundance {level}: {runs} runs")?;
        }
        Ok(())
    }
}
