//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 unreadable or
//! malformed input, 3 invalid flags or parameters.

pub mod compare;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::logic::{machine_cost, UnitCosts};
use crate::machine::file::{read_machine, write_machine};
use crate::machine::DcPolicy;
use crate::sequence::{digit_counts, encode_m_ary, gen_golay_pair, gen_legendre, gen_random, text, DigitSequence};
use crate::synth::{warnings, PermutationPolicy};

use compare::{compare_row, fixed_point, write_csv, write_table, CompareOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "binmach", version, about = "Minimal-stage parallel binary machines for binary sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a binary machine emitting p bits per cycle.
    Synth {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        parallel: u32,
        #[arg(long, default_value = "zero")]
        dc_policy: DcPolicy,
        #[arg(long, default_value = "identity")]
        perm: PermutationPolicy,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a machine file and print the emitted bits.
    Sim {
        machine: PathBuf,
        #[arg(long)]
        cycles: usize,
        /// Sequence file the output must agree with.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Compare machine cost with LFSR baselines.
    Compare {
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        /// Degree of parallelization, or `fixed` for the smallest p equal to its stage count.
        #[arg(long, default_value = "fixed")]
        parallel: Parallel,
        #[arg(long, default_value = "zero")]
        dc_policy: DcPolicy,
        #[arg(long, default_value = "identity")]
        perm: PermutationPolicy,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Generate a test sequence.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    Random {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Legendre {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes `<out>.a` and `<out>.b`.
    Golay {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Parallel {
    Fixed,
    Value(u32),
}

impl std::str::FromStr for Parallel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "fixed" {
            return Ok(Parallel::Fixed);
        }
        match s.parse::<u32>() {
            Ok(p) if (1..=16).contains(&p) => Ok(Parallel::Value(p)),
            _ => Err(format!("`{s}` is not `fixed` or an integer in 1..=16")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Table,
    Csv,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_sequence(path: &Path) -> Result<DigitSequence, CliError> {
    let seq = text::parse(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if !seq.is_binary() {
        return Err(CliError::Parse(format!("{}: expected a binary sequence", path.display())));
    }
    Ok(seq)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_sequence(path: Option<&Path>, seq: &DigitSequence, out: &mut dyn Write) -> Result<(), CliError> {
    let body = text::write(seq).map_err(|e| CliError::Usage(e.to_string()))?;
    match path {
        Some(p) => write_file(p, &body),
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn bit_string(bits: &[u32]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

fn io(e: std::io::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Synth { input, parallel, dc_policy, perm, out: path } => {
            let a2 = read_sequence(&input)?;
            for w in warnings(&a2) {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            let opts = CompareOptions { dc_policy, perm, units: UnitCosts::default() };
            let bm = compare::build_machine(&a2, parallel, &opts)?;
            let enc = encode_m_ary(&a2, parallel).map_err(|e| CliError::Usage(e.to_string()))?;
            let cost = machine_cost(&bm, dc_policy, &opts.units).map_err(|e| CliError::Usage(e.to_string()))?;
            write_file(&path, &write_machine(&bm))?;
            let pad = if enc.pad.is_empty() { "-".to_string() } else { bit_string(&enc.pad) };
            writeln!(
                out,
                "k={} p={} m={} N_max={} stages={} pad={}",
                a2.len(),
                parallel,
                1u64 << parallel,
                digit_counts(&enc.sequence).max(),
                bm.stage_count(),
                pad
            )
            .map_err(io)?;
            writeln!(
                out,
                "and2={} xor2={} registers={} units={} sop_literals={}",
                cost.and2_count,
                cost.xor2_count,
                cost.register_stages,
                cost.total_units,
                cost.sop_literals.unwrap_or(0)
            )
            .map_err(io)
        }
        Command::Sim { machine, cycles, expect } => {
            if cycles == 0 {
                return Err(CliError::Usage("--cycles must be at least 1".into()));
            }
            let bm = read_machine(&read_text(&machine)?)
                .map_err(|e| CliError::Parse(format!("{}: {e}", machine.display())))?;
            let stream = bm.run(cycles).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out, "{}", bit_string(stream.digits())).map_err(io)?;
            if let Some(path) = expect {
                let want = read_sequence(&path)?;
                let n = want.len().min(stream.len());
                if let Some(i) = (0..n).find(|&i| want.digits()[i] != stream.digits()[i]) {
                    return Err(CliError::Mismatch(format!("output differs from {} at bit {i}", path.display())));
                }
                writeln!(err, "match: {n} bits agree").map_err(io)?;
            }
            Ok(())
        }
        Command::Compare { input, parallel, dc_policy, perm, format } => {
            let opts = CompareOptions { dc_policy, perm, units: UnitCosts::default() };
            let seqs = input.iter().map(|p| read_sequence(p).map(|s| (p, s))).collect::<Result<Vec<_>, _>>()?;
            let rows = seqs
                .par_iter()
                .map(|(path, a2)| {
                    let p = match parallel {
                        Parallel::Fixed => fixed_point(a2)?,
                        Parallel::Value(p) => p,
                    };
                    let id = path
                        .file_stem()
                        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
                    compare_row(&id, a2, p, &opts)
                })
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Csv => write_csv(&rows, out).map_err(|e| CliError::Usage(e.to_string())),
                Format::Table => write_table(&rows, out).map_err(io),
            }
        }
        Command::Gen { family } => match family {
            Family::Random { length, seed, out: path } => {
                let seq = gen_random(length, seed).map_err(|e| CliError::Usage(e.to_string()))?;
                write_sequence(path.as_deref(), &seq, out)
            }
            Family::Legendre { prime, out: path } => {
                let seq = gen_legendre(prime).map_err(|e| CliError::Usage(e.to_string()))?;
                write_sequence(path.as_deref(), &seq, out)
            }
            Family::Golay { order, out: path } => {
                let (a, b) = gen_golay_pair(order).map_err(|e| CliError::Usage(e.to_string()))?;
                match path {
                    Some(p) => {
                        let suffixed = |ext: &str| {
                            let mut s: OsString = p.clone().into_os_string();
                            s.push(ext);
                            PathBuf::from(s)
                        };
                        write_sequence(Some(&suffixed(".a")), &a, out)?;
                        write_sequence(Some(&suffixed(".b")), &b, out)
                    }
                    None => {
                        write_sequence(None, &a, out)?;
                        write_sequence(None, &b, out)
                    }
                }
            }
        },
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
