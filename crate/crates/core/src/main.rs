use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use scrambler::{emit_trace, run_experiment, ExperimentConfig, ScriptCommand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scrub {
    Scrub,
    Noscrub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Adapt {
    Adaptive,
    Noadaptive,
}

/// Runs a fault-injection script against adaptively redundant memory.
#[derive(Debug, Parser)]
#[command(name = "scrambler", version)]
struct Cli {
    /// Fault-injection script
    script: PathBuf,
    /// Initial redundancy (odd, 3 to 11)
    initial_redundancy: usize,
    #[arg(value_enum)]
    scrub: Scrub,
    #[arg(value_enum)]
    adaptive: Adapt,
    /// Logical cells
    #[arg(long, default_value_t = 20_000)]
    cells: usize,
    /// Physical distance between replicas of one cell
    #[arg(long, default_value_t = 20)]
    stride: usize,
    /// Round-robin reads to perform
    #[arg(long, default_value_t = scrambler::harness::FULL_READS)]
    reads: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Reads per virtual second of SLEEP
    #[arg(long, default_value_t = 100_000)]
    reads_per_second: u64,
    /// Write the redundancy trace as CSV to this file
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn describe(command: &ScriptCommand) -> String {
    fn short(x: f64) -> String {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
    match *command {
        ScriptCommand::Sleep { seconds } => format!("Scrambler::sleep({})", short(seconds)),
        ScriptCommand::Scramble { n, p } => format!("Scrambler::scramble({n},{})", short(p)),
        ScriptCommand::Burst { n, p, len } => {
            format!("Scrambler::burst({n},{},{len})", short(p))
        }
        ScriptCommand::End => "Scrambler::END".to_string(),
    }
}

fn run(cli: Cli) -> scrambler::Result<()> {
    let config = ExperimentConfig {
        scrub: cli.scrub == Scrub::Scrub,
        adaptive: cli.adaptive == Adapt::Adaptive,
        n_cells: cli.cells,
        stride: cli.stride,
        total_reads: cli.reads,
        seed: cli.seed,
        reads_per_second: cli.reads_per_second,
        trace_path: cli.trace,
        ..ExperimentConfig::new(cli.script, cli.initial_redundancy)
    };
    let report = run_experiment(&config)?;
    for scheduled in &report.executed {
        println!("{}", describe(&scheduled.command));
    }
    print!("{report}");
    if let Some(path) = &config.trace_path {
        let mut sink = BufWriter::new(File::create(path)?);
        emit_trace(&report, &mut sink)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("scrambler: {e}");
            ExitCode::FAILURE
        }
    }
}
