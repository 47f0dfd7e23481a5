//! Logical cells stored as replica sets in a flat physical memory.

mod layout;
mod physical;
mod store;

pub use layout::LayoutMap;
pub use physical::PhysicalMemory;
pub use store::{CellCounters, ReadOutcome, RedundantStore};

/// Redundancy levels a store can be asked to run at.
pub const LEVELS: [usize; 5] = [3, 5, 7, 9, 11];

pub const MIN_REDUNDANCY: usize = 3;
pub const MAX_REDUNDANCY: usize = 11;

pub(crate) fn check_level(level: usize, max: usize) -> crate::Result<()> {
    if level % 2 == 0 || level < MIN_REDUNDANCY || level > max {
        return Err(crate::Error::InvalidArgument(format!(
            "redundancy level must be odd and within [{MIN_REDUNDANCY}, {max}], got {level}"
        )));
    }
    Ok(())
}
