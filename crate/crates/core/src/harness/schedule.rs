use crate::injection::ScriptCommand;

/// A script command pinned to the read cycle before which it runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduledCommand {
    pub cycle: u64,
    pub command: ScriptCommand,
}

/// Lays the script out in virtual time.
///
/// `SLEEP s` advances the clock by `s * reads_per_second` reads (rounded).
/// Every other command runs before read `clock + 1`. Commands after `END`
/// are dropped.
pub fn compile_schedule(commands: &[ScriptCommand], reads_per_second: u64) -> Vec<ScheduledCommand> {
    let mut clock = 0u64;
    let mut schedule = Vec::with_capacity(commands.len());
    for &command in commands {
        schedule.push(ScheduledCommand {
            cycle: clock + 1,
            command,
        });
        match command {
            ScriptCommand::Sleep { seconds } => {
                clock += (seconds * reads_per_second as f64).round() as u64;
            }
            ScriptCommand::End => break,
            _ => {}
        }
    }
    schedule
}
