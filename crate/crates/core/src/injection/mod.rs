//! Scripted fault injection: the script language, the generator behind it,
//! and the engine that corrupts physical memory.

mod engine;
mod prng;
mod script;

pub use engine::InjectionEngine;
pub use prng::Prng;
pub use script::{parse_script, ScriptCommand};
