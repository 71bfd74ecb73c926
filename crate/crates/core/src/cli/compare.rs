//! Binary machine against LFSR baselines for one sequence.

use std::io::Write;

use crate::baselines::{berlekamp_massey, decimate_synthesis, lfsr_cost, lfsr_parallelize, LfsrCircuit};
use crate::logic::{machine_cost, UnitCosts};
use crate::machine::{binarize, BinaryMachine, DcPolicy, MachineError};
use crate::sequence::{encode_m_ary, DigitSequence, MAX_GROUP_BITS};
use crate::synth::{binary_stage_bound, synthesize_machine, PermutationPolicy, SynthError};

use super::CliError;

/// Column order of the CSV output.
pub const CSV_HEADER: [&str; 10] = [
    "id",
    "k",
    "p",
    "bm_stages",
    "bm_cost",
    "lfsr_bm_length",
    "lfsr_parallel_cost",
    "decimation_bank_cost",
    "ratio_parallel",
    "ratio_decimation",
];

#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub id: String,
    pub k: usize,
    pub p: u32,
    pub bm_stages: usize,
    pub bm_cost: u64,
    pub lfsr_bm_length: usize,
    /// `None` when the matrix method does not apply (`p > L`).
    pub lfsr_parallel_cost: Option<u64>,
    /// `None` when the sequence is too short to decimate by `p`.
    pub decimation_bank_cost: Option<u64>,
}

impl CompareRow {
    pub fn ratio_parallel(&self) -> Option<f64> {
        ratio(self.lfsr_parallel_cost, self.bm_cost)
    }

    pub fn ratio_decimation(&self) -> Option<f64> {
        ratio(self.decimation_bank_cost, self.bm_cost)
    }

    pub fn fields(&self) -> [String; 10] {
        let cost = |c: Option<u64>| c.map_or_else(|| "n/a".to_string(), |c| c.to_string());
        [
            self.id.clone(),
            self.k.to_string(),
            self.p.to_string(),
            self.bm_stages.to_string(),
            self.bm_cost.to_string(),
            self.lfsr_bm_length.to_string(),
            cost(self.lfsr_parallel_cost),
            cost(self.decimation_bank_cost),
            format_ratio(self.ratio_parallel()),
            format_ratio(self.ratio_decimation()),
        ]
    }
}

/// Baseline cost over machine cost, when both are positive.
fn ratio(baseline: Option<u64>, bm: u64) -> Option<f64> {
    match baseline {
        Some(b) if b > 0 && bm > 0 => Some(b as f64 / bm as f64),
        _ => None,
    }
}

pub fn format_ratio(r: Option<f64>) -> String {
    match r {
        Some(r) if r.is_finite() && r > 0.0 => format!("{r:.3}"),
        _ => "inf".to_string(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompareOptions {
    pub dc_policy: DcPolicy,
    pub perm: PermutationPolicy,
    pub units: UnitCosts,
}

/// The binary machine emitting `p` bits of `a2` per cycle.
pub fn build_machine(a2: &DigitSequence, p: u32, opts: &CompareOptions) -> Result<BinaryMachine, CliError> {
    let enc = encode_m_ary(a2, p).map_err(|e| CliError::Usage(e.to_string()))?;
    let mm = synthesize_machine(&enc.sequence, opts.perm).map_err(synth_usage)?;
    let bm = binarize(&mm).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(bm.with_dc_policy(opts.dc_policy))
}

fn synth_usage(e: SynthError) -> CliError {
    CliError::Usage(e.to_string())
}

/// Smallest `p` whose machine has exactly `p` stages, i.e. whose `2^p`-ary
/// encoding has no repeated digit.
pub fn fixed_point(a2: &DigitSequence) -> Result<u32, CliError> {
    for p in 1..=MAX_GROUP_BITS {
        if binary_stage_bound(a2, p).map_err(synth_usage)? == p as usize {
            return Ok(p);
        }
    }
    Err(CliError::Usage(format!("no degree of parallelization up to {MAX_GROUP_BITS} equals its stage count")))
}

pub fn compare_row(id: &str, a2: &DigitSequence, p: u32, opts: &CompareOptions) -> Result<CompareRow, CliError> {
    let bm = build_machine(a2, p, opts)?;
    let cost = machine_cost(&bm, opts.dc_policy, &opts.units).map_err(|e| CliError::Usage(e.to_string()))?;
    let lfsr = berlekamp_massey(a2).map_err(|e| CliError::Usage(e.to_string()))?;
    let lfsr_parallel_cost = lfsr_parallelize(&lfsr, p as usize)
        .ok()
        .map(|map| lfsr_cost(LfsrCircuit::Parallel(&map), &opts.units).total_units);
    let decimation_bank_cost = decimate_synthesis(a2, p as usize)
        .ok()
        .map(|bank| lfsr_cost(LfsrCircuit::Bank(&bank), &opts.units).total_units);
    Ok(CompareRow {
        id: id.to_string(),
        k: a2.len(),
        p,
        bm_stages: bm.stage_count(),
        bm_cost: cost.total_units,
        lfsr_bm_length: lfsr.length(),
        lfsr_parallel_cost,
        decimation_bank_cost,
    })
}

pub fn write_csv<W: Write>(rows: &[CompareRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table<W: Write + ?Sized>(rows: &[CompareRow], out: &mut W) -> std::io::Result<()> {
    let cells: Vec<[String; 10]> = rows.iter().map(CompareRow::fields).collect();
    let widths: Vec<usize> = (0..CSV_HEADER.len())
        .map(|c| cells.iter().map(|r| r[c].len()).chain([CSV_HEADER[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |out: &mut W, row: &[&str]| -> std::io::Result<()> {
        let mut s = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                s.push_str("  ");
            }
            if c == 0 {
                s.push_str(&format!("{cell:<w$}", w = widths[c]));
            } else {
                s.push_str(&format!("{cell:>w$}", w = widths[c]));
            }
        }
        writeln!(out, "{}", s.trim_end())
    };
    line(out, &CSV_HEADER)?;
    for r in &cells {
        line(out, &r.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(())
}

impl From<MachineError> for CliError {
    fn from(e: MachineError) -> Self {
        CliError::Usage(e.to_string())
    }
}
