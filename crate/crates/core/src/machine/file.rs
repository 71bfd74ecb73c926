//! `BINMACH 1` machine files.
//!
//! ```text
//! BINMACH 1
//! m 2
//! n 3
//! p 3
//! init 1
//! dc zero
//! T 0 1
//! T 1 5
//! ```
//!
//! States are single integers in radix `m`, stage 0 least significant.
//! Transitions are listed in ascending order of the current state; absent
//! states are don't cares. The writer always emits binary machines
//! (`m 2`); the reader also accepts `m = 2^q`, which describes the same
//! machine over `q * n` binary stages.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{BinaryMachine, DcPolicy, MachineError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

pub fn write_machine(bm: &BinaryMachine) -> String {
    let mut out = String::new();
    out.push_str("BINMACH 1\n");
    let _ = writeln!(out, "m 2");
    let _ = writeln!(out, "n {}", bm.stage_count());
    let _ = writeln!(out, "p {}", bm.parallelism());
    let _ = writeln!(out, "init {}", bm.init());
    let _ = writeln!(out, "dc {}", bm.dc_policy());
    for (cur, next) in bm.transitions() {
        let _ = writeln!(out, "T {cur} {next}");
    }
    out
}

/// Parses a machine file and fills its don't cares under the recorded policy.
pub fn read_machine(text: &str) -> Result<BinaryMachine, FileError> {
    let syntax = |line: usize, msg: String| FileError::Syntax { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "BINMACH 1")) => {}
        Some((line, other)) => return Err(syntax(line, format!("expected `BINMACH 1`, found `{other}`"))),
        None => return Err(FileError::Missing("BINMACH 1")),
    }

    let mut header: [Option<u64>; 4] = [None; 4];
    const KEYS: [&str; 4] = ["m", "n", "p", "init"];
    let mut dc = None;
    let mut transitions = BTreeMap::new();
    let mut last_cur: Option<u64> = None;

    for (line, content) in lines {
        let tok: Vec<&str> = content.split_whitespace().collect();
        let int = |s: &str| s.parse::<u64>().map_err(|_| syntax(line, format!("bad integer `{s}`")));
        match tok.as_slice() {
            ["T", cur, next] => {
                if dc.is_none() {
                    return Err(syntax(line, "transition before the header is complete".into()));
                }
                let (cur, next) = (int(cur)?, int(next)?);
                if last_cur.is_some_and(|l| cur <= l) {
                    return Err(syntax(line, format!("state {cur} is not in ascending order")));
                }
                last_cur = Some(cur);
                transitions.insert(cur, next);
            }
            ["dc", policy] => {
                if !transitions.is_empty() || dc.is_some() {
                    return Err(syntax(line, "unexpected `dc` line".into()));
                }
                dc = Some(policy.parse::<DcPolicy>().map_err(|e| syntax(line, e))?);
            }
            [key, value] if KEYS.contains(key) => {
                let i = KEYS.iter().position(|k| k == key).expect("listed key");
                if header[i].is_some() || dc.is_some() {
                    return Err(syntax(line, format!("unexpected `{key}` line")));
                }
                header[i] = Some(int(value)?);
            }
            _ => return Err(syntax(line, format!("unrecognised line `{content}`"))),
        }
    }

    let [m, n, p, init] = [0, 1, 2, 3].map(|i| header[i].ok_or(FileError::Missing(KEYS[i])));
    let (m, n, p, init) = (m?, n?, p?, init?);
    let dc = dc.ok_or(FileError::Missing("dc"))?;
    let m32 = u32::try_from(m).map_err(|_| MachineError::BadAlphabet(u32::MAX))?;
    if m32 < 2 {
        return Err(MachineError::BadAlphabet(m32).into());
    }
    if !m32.is_power_of_two() {
        return Err(MachineError::NotPowerOfTwo(m32).into());
    }
    let q = m32.trailing_zeros() as u64;
    let bits = usize::try_from(q.saturating_mul(n)).unwrap_or(usize::MAX);
    let p = usize::try_from(p).unwrap_or(usize::MAX);
    let bm = BinaryMachine::from_transitions(bits, p, init, dc, &transitions)?;
    Ok(bm.complete(dc)?)
}
