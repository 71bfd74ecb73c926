//! Linear baselines: shortest LFSR by Berlekamp-Massey, p-step LFSRs from
//! the p-th power of the companion matrix, and banks of LFSRs for the p
//! decimated phases of a sequence.

mod bits;
mod lfsr;
mod matrix;

use rayon::prelude::*;
use thiserror::Error;

pub use lfsr::{berlekamp_massey, LfsrSpec};
pub use matrix::{companion_matrix, lfsr_parallelize, BitMatrix, ParallelLinearMap};

use crate::logic::{CostReport, GateCount, UnitCosts};
use crate::sequence::DigitSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("expected a binary sequence, got alphabet size {0}")]
    NotBinary(u32),
    #[error("degree of parallelization {p} must be in 1..={max}")]
    BadParallelism { p: usize, max: usize },
    #[error("decimation by {p} needs a sequence longer than {p}, got {len}")]
    TooShort { p: usize, len: usize },
    #[error("register of length {length} needs a fill of {length} bits, got {fill}")]
    FillLength { length: usize, fill: usize },
    #[error("tap x^{tap} exceeds register length {length}")]
    TapOutOfRange { tap: usize, length: usize },
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
}

/// One shortest LFSR per phase `j`, generating `a_j, a_{p+j}, a_{2p+j}, ..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimationBank {
    p: usize,
    len: usize,
    phases: Vec<LfsrSpec>,
}

impl DecimationBank {
    pub fn parallelism(&self) -> usize {
        self.p
    }

    pub fn phases(&self) -> &[LfsrSpec] {
        &self.phases
    }

    /// Total register bits, `Σ L_j`.
    pub fn total_bits(&self) -> usize {
        self.phases.iter().map(LfsrSpec::length).sum()
    }

    /// Length of the sequence the bank was built from.
    pub fn source_len(&self) -> usize {
        self.len
    }

    /// First `len` bits of the interleaved phase outputs.
    pub fn interleave(&self, len: usize) -> Vec<bool> {
        let streams: Vec<Vec<bool>> = self.phases.iter().map(|l| l.generate(len.div_ceil(self.p))).collect();
        (0..len).map(|t| streams[t % self.p][t / self.p]).collect()
    }
}

pub fn decimate_synthesis(a2: &DigitSequence, p: usize) -> Result<DecimationBank, BaselineError> {
    if !a2.is_binary() {
        return Err(BaselineError::NotBinary(a2.alphabet()));
    }
    if p == 0 {
        return Err(BaselineError::BadParallelism { p, max: a2.len().saturating_sub(1) });
    }
    if p >= a2.len() {
        return Err(BaselineError::TooShort { p, len: a2.len() });
    }
    let d = a2.digits();
    let phases = (0..p)
        .into_par_iter()
        .map(|j| {
            let sub = DigitSequence::binary(d.iter().copied().skip(j).step_by(p)).expect("nonempty binary phase");
            berlekamp_massey(&sub)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecimationBank { p, len: a2.len(), phases })
}

/// The circuits whose cost [`lfsr_cost`] reports.
#[derive(Clone, Copy, Debug)]
pub enum LfsrCircuit<'a> {
    Serial(&'a LfsrSpec),
    Parallel(&'a ParallelLinearMap),
    Bank(&'a DecimationBank),
}

fn feedback_xors(l: &LfsrSpec) -> usize {
    l.taps().len().saturating_sub(1)
}

/// Registers are the register bits; each next-state linear form of `t`
/// taps costs `t - 1` XORs; no ANDs.
pub fn lfsr_cost(circuit: LfsrCircuit<'_>, units: &UnitCosts) -> CostReport {
    let (xor2, registers) = match circuit {
        LfsrCircuit::Serial(l) => (feedback_xors(l), l.length()),
        LfsrCircuit::Parallel(map) => {
            let m = map.matrix();
            ((0..m.size()).map(|r| m.row_weight(r).saturating_sub(1)).sum(), m.size())
        }
        LfsrCircuit::Bank(bank) => (bank.phases.iter().map(feedback_xors).sum(), bank.total_bits()),
    };
    CostReport::new(GateCount { and2: 0, xor2 }, registers, units)
}
