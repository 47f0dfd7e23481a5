use std::collections::BTreeMap;

use super::{check_level, LayoutMap, PhysicalMemory, MAX_REDUNDANCY, MIN_REDUNDANCY};
use crate::error::{Error, Result};
use crate::voting::{majority_vote, VoteResult};
use crate::Word;

/// Access and failure counters kept by a [`RedundantStore`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCounters {
    /// Individual replica reads and writes, scrub repairs included.
    pub replica_accesses: u64,
    /// Logical reads that found no majority.
    pub read_failures: u64,
    /// Logical reads performed at each redundancy level.
    pub reads_at_redundancy: BTreeMap<usize, u64>,
}

impl CellCounters {
    fn new(max_level: usize) -> Self {
        CellCounters {
            replica_accesses: 0,
            read_failures: 0,
            reads_at_redundancy: (MIN_REDUNDANCY..=max_level)
                .step_by(2)
                .map(|level| (level, 0))
                .collect(),
        }
    }

    pub fn total_reads(&self) -> u64 {
        self.reads_at_redundancy.values().sum()
    }

    /// Replica accesses attributable to reads alone.
    pub fn read_accesses(&self) -> u64 {
        self.reads_at_redundancy
            .iter()
            .map(|(&level, &n)| level as u64 * n)
            .sum()
    }
}

/// Result of a redundant read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadOutcome {
    pub vote: VoteResult,
    /// Redundancy level the read was performed at.
    pub level: usize,
    /// Replicas rewritten by scrubbing.
    pub repaired: usize,
}

impl ReadOutcome {
    pub fn value(&self) -> Option<Word> {
        self.vote.majority_value
    }

    pub fn m(&self) -> usize {
        self.vote.m
    }

    pub fn is_failure(&self) -> bool {
        self.vote.is_failure()
    }
}

/// Logical cells kept as replica sets whose size can change at run time.
///
/// Raising the redundancy does not copy anything. A cell's extra replicas
/// join its vote only once they have been written, either by
/// [`write`](Self::write) or by a scrubbing [`read`](Self::read) that found a
/// majority. Until then the cell votes over the replicas it last had filled.
/// A replica that was inactive at any point since its cell was last filled
/// is treated as unfilled, since injection may have hit it meanwhile.
#[derive(Debug, Clone)]
pub struct RedundantStore {
    memory: PhysicalMemory,
    layout: LayoutMap,
    active: usize,
    max_level: usize,
    scrub: bool,
    counters: CellCounters,
    filled_level: Vec<u8>,
    filled_epoch: Vec<u64>,
    /// Bumped on every level change.
    epoch: u64,
    /// `(since_epoch, level)` with strictly increasing levels. The entry
    /// found for epoch `e` holds the lowest level active in `[e, now]`.
    level_floor: Vec<(u64, usize)>,
}

impl RedundantStore {
    /// Creates a zero-filled store running at `initial_level`.
    pub fn new(layout: LayoutMap, initial_level: usize, scrub: bool) -> Result<Self> {
        let max_level = layout.r_max().min(MAX_REDUNDANCY);
        check_level(initial_level, max_level)?;
        let n = layout.n_cells();
        Ok(RedundantStore {
            memory: PhysicalMemory::new(layout.capacity()),
            layout,
            active: initial_level,
            max_level,
            scrub,
            counters: CellCounters::new(max_level),
            // Zeroed memory agrees with itself at the initial level.
            filled_level: vec![initial_level as u8; n],
            filled_epoch: vec![0; n],
            epoch: 0,
            level_floor: vec![(0, initial_level)],
        })
    }

    pub fn layout(&self) -> &LayoutMap {
        &self.layout
    }

    pub fn memory(&self) -> &PhysicalMemory {
        &self.memory
    }

    pub fn memory_mut(&mut self) -> &mut PhysicalMemory {
        &mut self.memory
    }

    pub fn active_redundancy(&self) -> usize {
        self.active
    }

    pub fn scrub_enabled(&self) -> bool {
        self.scrub
    }

    pub fn counters(&self) -> &CellCounters {
        &self.counters
    }

    pub fn n_cells(&self) -> usize {
        self.layout.n_cells()
    }

    fn check_cell(&self, cell: usize) -> Result<()> {
        if cell >= self.layout.n_cells() {
            return Err(Error::CellOutOfRange {
                cell,
                n_cells: self.layout.n_cells(),
            });
        }
        Ok(())
    }

    /// Current values of the active replicas of `cell`.
    pub fn replicas(&self, cell: usize) -> Result<Vec<Word>> {
        self.check_cell(cell)?;
        Ok((0..self.active)
            .map(|j| self.memory.load(self.layout.addr(cell, j)))
            .collect())
    }

    /// Number of replicas of `cell` that currently take part in its vote.
    pub fn voting_replicas(&self, cell: usize) -> Result<usize> {
        self.check_cell(cell)?;
        Ok(self.filled_replicas(cell))
    }

    fn filled_replicas(&self, cell: usize) -> usize {
        let since = self.filled_epoch[cell];
        let idx = self.level_floor.partition_point(|&(start, _)| start <= since) - 1;
        let floor = self.level_floor[idx].1;
        (self.filled_level[cell] as usize).min(floor)
    }

    fn mark_filled(&mut self, cell: usize) {
        self.filled_level[cell] = self.active as u8;
        self.filled_epoch[cell] = self.epoch;
    }

    /// Writes `value` to every active replica of `cell`.
    pub fn write(&mut self, cell: usize, value: Word) -> Result<()> {
        self.check_cell(cell)?;
        for j in 0..self.active {
            self.memory.store(self.layout.addr(cell, j), value);
        }
        self.counters.replica_accesses += self.active as u64;
        self.mark_filled(cell);
        Ok(())
    }

    /// Reads every active replica of `cell` and votes over the filled ones.
    ///
    /// A missing majority is reported through the outcome, not as an error,
    /// and leaves memory untouched. With scrubbing on, a successful read
    /// rewrites every disagreeing active replica with the majority value.
    pub fn read(&mut self, cell: usize) -> Result<ReadOutcome> {
        self.check_cell(cell)?;
        let level = self.active;
        let voters = self.filled_replicas(cell);

        let mut buf = [0 as Word; MAX_REDUNDANCY];
        for (j, slot) in buf.iter_mut().enumerate().take(voters) {
            *slot = self.memory.load(self.layout.addr(cell, j));
        }
        let vote = majority_vote(&buf[..voters])?;

        self.counters.replica_accesses += level as u64;
        *self
            .counters
            .reads_at_redundancy
            .get_mut(&level)
            .expect("active level is tracked") += 1;

        let mut repaired = 0;
        match vote.majority_value {
            Some(value) if self.scrub => {
                for j in 0..level {
                    let addr = self.layout.addr(cell, j);
                    if self.memory.load(addr) != value {
                        self.memory.store(addr, value);
                        repaired += 1;
                    }
                }
                self.counters.replica_accesses += repaired as u64;
                self.mark_filled(cell);
            }
            Some(_) => {}
            None => self.counters.read_failures += 1,
        }

        Ok(ReadOutcome {
            vote,
            level,
            repaired,
        })
    }

    /// Changes the number of active replicas per cell.
    pub fn set_redundancy(&mut self, level: usize) -> Result<()> {
        check_level(level, self.max_level)?;
        if level == self.active {
            return Ok(());
        }
        self.epoch += 1;
        let mut since = self.epoch;
        while let Some(&(start, top)) = self.level_floor.last() {
            if top < level {
                break;
            }
            since = start;
            self.level_floor.pop();
        }
        self.level_floor.push((since, level));
        self.active = level;
        Ok(())
    }
}
