//! Line-oriented fault-injection scripts.
//!
//! ```text
//! SLEEP 1                     // idle for one second
//! SCRAMBLE 2000, 0.1053992    // 2000 tries at one random cell each
//! BURST 2000, 0.7788008, 10   // 2000 tries at 10 contiguous cells each
//! END
//! ```
//!
//! One command per line, uppercase keywords, comma-separated arguments and
//! `//` comments. The script must finish with `END`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScriptCommand {
    Sleep { seconds: f64 },
    Scramble { n: u64, p: f64 },
    Burst { n: u64, p: f64, len: usize },
    End,
}

impl fmt::Display for ScriptCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ScriptCommand::Sleep { seconds } => write!(f, "SLEEP {seconds}"),
            ScriptCommand::Scramble { n, p } => write!(f, "SCRAMBLE {n}, {p}"),
            ScriptCommand::Burst { n, p, len } => write!(f, "BURST {n}, {p}, {len}"),
            ScriptCommand::End => f.write_str("END"),
        }
    }
}

fn is_decimal(s: &str) -> bool {
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (s, None),
    };
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    match frac {
        None => !int.is_empty() && digits(int),
        Some(frac) => digits(int) && digits(frac) && !(int.is_empty() && frac.is_empty()),
    }
}

fn number(line: usize, arg: &str, what: &str) -> Result<f64> {
    if !is_decimal(arg) {
        return Err(Error::parse(line, format!("malformed {what} `{arg}`")));
    }
    arg.parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{arg}`")))
}

fn integer(line: usize, arg: &str, what: &str) -> Result<u64> {
    if arg.is_empty() || !arg.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("malformed {what} `{arg}`")));
    }
    arg.parse()
        .map_err(|_| Error::parse(line, format!("{what} `{arg}` is too large")))
}

fn probability(line: usize, arg: &str) -> Result<f64> {
    let p = number(line, arg, "probability")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::parse(line, format!("probability {p} outside [0, 1]")));
    }
    Ok(p)
}

fn parse_line(line: usize, keyword: &str, args: &[&str]) -> Result<ScriptCommand> {
    let arity = match keyword {
        "SLEEP" => 1,
        "SCRAMBLE" => 2,
        "BURST" => 3,
        "END" => 0,
        other => return Err(Error::parse(line, format!("unknown command `{other}`"))),
    };
    if args.len() != arity {
        return Err(Error::parse(
            line,
            format!("{keyword} takes {arity} argument(s), got {}", args.len()),
        ));
    }
    Ok(match keyword {
        "SLEEP" => {
            let seconds = number(line, args[0], "duration")?;
            if seconds <= 0.0 {
                return Err(Error::parse(line, "sleep duration must be positive"));
            }
            ScriptCommand::Sleep { seconds }
        }
        "SCRAMBLE" => ScriptCommand::Scramble {
            n: integer(line, args[0], "repetition count")?,
            p: probability(line, args[1])?,
        },
        "BURST" => {
            let len = integer(line, args[2], "burst length")?;
            if len == 0 {
                return Err(Error::parse(line, "burst length must be at least 1"));
            }
            ScriptCommand::Burst {
                n: integer(line, args[0], "repetition count")?,
                p: probability(line, args[1])?,
                len: usize::try_from(len)
                    .map_err(|_| Error::parse(line, "burst length is too large"))?,
            }
        }
        _ => ScriptCommand::End,
    })
}

/// Parses a script into its commands, in source order.
pub fn parse_script(text: &str) -> Result<Vec<ScriptCommand>> {
    let mut commands = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let code = raw.split_once("//").map_or(raw, |(code, _)| code).trim();
        if code.is_empty() {
            continue;
        }
        if commands.last() == Some(&ScriptCommand::End) {
            return Err(Error::parse(line, "command after END"));
        }
        let (keyword, rest) = code
            .split_once(char::is_whitespace)
            .map_or((code, ""), |(k, r)| (k, r.trim()));
        let args: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(str::trim).collect()
        };
        commands.push(parse_line(line, keyword, &args)?);
    }
    if commands.last() != Some(&ScriptCommand::End) {
        return Err(Error::parse(last_line.max(1), "script does not end with END"));
    }
    Ok(commands)
}
