//! Incompletely specified Boolean functions and what is done with them:
//! algebraic normal form, two-level minimisation, gate costing, and PLA
//! interchange.
//!
//! Vertex `x` of a table over `v` inputs assigns input `i` the value of bit
//! `i` of `x`.

mod anf;
mod cost;
mod fill;
pub mod pla;
mod sop;

pub use anf::{anf, cost_anf, interpolate_anf, AnfPoly, EsopExpr, EsopTerm, Literal};
pub use cost::{machine_cost, CostReport, GateCount, UnitCosts};
pub use fill::{minimize_fill, Completion};
pub use sop::{minimize_completion, minimize_sop, Cover, Cube};

use thiserror::Error;

/// Largest input count for dense tables.
pub const MAX_TABLE_VARS: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("table with {0} inputs exceeds the {max}-input limit", max = MAX_TABLE_VARS)]
    TooManyVars(u32),
    #[error("table has don't-care vertex {0}; a fully specified table is required")]
    DontCare(u32),
    #[error("variable index {var} out of range for {vars} inputs")]
    VarOutOfRange { var: u32, vars: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ternary {
    Zero,
    One,
    DontCare,
}

impl From<bool> for Ternary {
    fn from(b: bool) -> Self {
        if b {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }
}

/// Dense truth table with a value in {0, 1, dc} for each of `2^v` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolTable {
    vars: u32,
    on: Vec<u64>,
    dc: Vec<u64>,
}

fn words_for(vars: u32) -> usize {
    (1usize << vars).div_ceil(64)
}

impl BoolTable {
    /// Table with every vertex a don't care.
    pub fn dont_care(vars: u32) -> Result<Self, LogicError> {
        let mut t = Self::zero(vars)?;
        let n = t.vertex_count();
        for x in 0..n {
            t.dc[x / 64] |= 1 << (x % 64);
        }
        Ok(t)
    }

    /// Constant-zero table.
    pub fn zero(vars: u32) -> Result<Self, LogicError> {
        if vars > MAX_TABLE_VARS {
            return Err(LogicError::TooManyVars(vars));
        }
        let w = words_for(vars);
        Ok(Self { vars, on: vec![0; w], dc: vec![0; w] })
    }

    pub fn from_fn<F>(vars: u32, mut f: F) -> Result<Self, LogicError>
    where
        F: FnMut(u32) -> Ternary,
    {
        let mut t = Self::zero(vars)?;
        for x in 0..t.vertex_count() as u32 {
            t.set(x, f(x));
        }
        Ok(t)
    }

    /// Fully specified table from `2^v` bits, vertex 0 first.
    pub fn from_bits(vars: u32, bits: &[u8]) -> Result<Self, LogicError> {
        let t = Self::from_fn(vars, |x| Ternary::from(bits.get(x as usize).copied().unwrap_or(0) != 0))?;
        Ok(t)
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.vars
    }

    #[inline]
    pub fn get(&self, x: u32) -> Ternary {
        let (w, b) = (x as usize / 64, x % 64);
        if (self.dc[w] >> b) & 1 == 1 {
            Ternary::DontCare
        } else if (self.on[w] >> b) & 1 == 1 {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    #[inline]
    pub fn set(&mut self, x: u32, v: Ternary) {
        let (w, m) = (x as usize / 64, 1u64 << (x % 64));
        match v {
            Ternary::Zero => {
                self.on[w] &= !m;
                self.dc[w] &= !m;
            }
            Ternary::One => {
                self.on[w] |= m;
                self.dc[w] &= !m;
            }
            Ternary::DontCare => {
                self.on[w] &= !m;
                self.dc[w] |= m;
            }
        }
    }

    #[inline]
    pub(crate) fn is_on(&self, x: u32) -> bool {
        (self.on[x as usize / 64] >> (x % 64)) & 1 == 1
    }

    #[inline]
    pub(crate) fn is_off(&self, x: u32) -> bool {
        let (w, b) = (x as usize / 64, x % 64);
        ((self.on[w] | self.dc[w]) >> b) & 1 == 0
    }

    pub fn is_fully_specified(&self) -> bool {
        self.dc.iter().all(|&w| w == 0)
    }

    pub fn on_set(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_count() as u32).filter(|&x| self.is_on(x))
    }

    pub fn off_set(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_count() as u32).filter(|&x| self.is_off(x))
    }

    pub fn dc_set(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_count() as u32).filter(|&x| self.get(x) == Ternary::DontCare)
    }

    pub fn on_count(&self) -> usize {
        self.on.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dc_count(&self) -> usize {
        self.dc.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Every don't care set to `value`.
    pub fn fill_constant(&self, value: bool) -> BoolTable {
        let mut t = self.clone();
        for (on, dc) in t.on.iter_mut().zip(t.dc.iter_mut()) {
            if value {
                *on |= *dc;
            }
            *dc = 0;
        }
        t
    }

    /// Every don't care set to the value of `cover` at that vertex.
    pub fn fill_from_cover(&self, cover: &Cover) -> BoolTable {
        let mut t = self.clone();
        for x in self.dc_set().collect::<Vec<_>>() {
            t.set(x, Ternary::from(cover.eval(x)));
        }
        t
    }

    /// Values as a string of `0`/`1`/`-`, vertex 0 first.
    pub fn to_pattern(&self) -> String {
        (0..self.vertex_count() as u32)
            .map(|x| match self.get(x) {
                Ternary::Zero => '0',
                Ternary::One => '1',
                Ternary::DontCare => '-',
            })
            .collect()
    }

    pub(crate) fn on_words(&self) -> &[u64] {
        &self.on
    }

    /// On-set words of a table with no don't cares.
    pub(crate) fn on_words_mut(&mut self) -> &mut [u64] {
        debug_assert!(self.is_fully_specified());
        &mut self.on
    }
}

impl std::fmt::Debug for BoolTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.vars <= 6 {
            write!(f, "BoolTable({}, {})", self.vars, self.to_pattern())
        } else {
            write!(f, "BoolTable({} vars, {} on, {} dc)", self.vars, self.on_count(), self.dc_count())
        }
    }
}
