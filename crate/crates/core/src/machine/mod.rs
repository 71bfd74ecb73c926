//! Executable m-ary and binary machines.
//!
//! A state is held as one integer in radix `m` with stage 0 as the least
//! significant digit. Every machine is clocked synchronously: all stage
//! functions are evaluated on the current state, then replace it. Output is
//! sampled before the transition, so the initial state's digits come first.

pub mod file;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::logic::{minimize_fill, BoolTable, LogicError, Ternary, MAX_TABLE_VARS};
use crate::sequence::DigitSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("alphabet size must be at least 2, got {0}")]
    BadAlphabet(u32),
    #[error("alphabet size {0} is not a power of two")]
    NotPowerOfTwo(u32),
    #[error("a machine needs at least one stage")]
    NoStages,
    #[error("state space {alphabet}^{stages} is too large")]
    StateSpaceTooLarge { alphabet: u32, stages: usize },
    #[error("state {state} is outside the state space")]
    StateOutOfRange { state: u64 },
    #[error("state {state} is a don't care of an incompletely specified machine")]
    Unspecified { state: u64 },
    #[error("degree of parallelization {p} must be in 1..={stages}")]
    BadParallelism { p: usize, stages: usize },
    #[error("cycle count must be at least 1")]
    ZeroCycles,
    #[error("stage tables disagree on input count or specified domain")]
    InconsistentTables,
    #[error("{0} binary stages exceed the {max}-stage table limit", max = MAX_TABLE_VARS)]
    TooWide(usize),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// How the unspecified vertices of the binary stage functions are filled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DcPolicy {
    #[default]
    Zero,
    One,
    Minimize,
}

impl fmt::Display for DcPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DcPolicy::Zero => "zero",
            DcPolicy::One => "one",
            DcPolicy::Minimize => "minimize",
        })
    }
}

impl FromStr for DcPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(DcPolicy::Zero),
            "one" => Ok(DcPolicy::One),
            "minimize" => Ok(DcPolicy::Minimize),
            other => Err(format!("unknown don't-care policy `{other}` (expected zero, one or minimize)")),
        }
    }
}

fn state_space(alphabet: u32, stages: usize) -> Result<u64, MachineError> {
    u32::try_from(stages)
        .ok()
        .and_then(|s| u64::from(alphabet).checked_pow(s))
        .ok_or(MachineError::StateSpaceTooLarge { alphabet, stages })
}

/// An m-ary n-stage machine whose next-state map is given on a subset of
/// states; the rest are don't cares. All stage functions share that domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MAryMachine {
    alphabet: u32,
    stages: usize,
    init: u64,
    transitions: BTreeMap<u64, u64>,
}

impl MAryMachine {
    pub fn new(alphabet: u32, stages: usize, init: u64, transitions: BTreeMap<u64, u64>) -> Result<Self, MachineError> {
        if alphabet < 2 {
            return Err(MachineError::BadAlphabet(alphabet));
        }
        if stages == 0 {
            return Err(MachineError::NoStages);
        }
        let space = state_space(alphabet, stages)?;
        let check = |s: u64| if s < space { Ok(()) } else { Err(MachineError::StateOutOfRange { state: s }) };
        check(init)?;
        for (&cur, &next) in &transitions {
            check(cur)?;
            check(next)?;
        }
        Ok(Self { alphabet, stages, init, transitions })
    }

    /// Every stage keeps its value: `f_i = x_i`.
    pub fn identity(alphabet: u32, stages: usize) -> Result<Self, MachineError> {
        let space = state_space(alphabet.max(2), stages.max(1))?;
        Self::new(alphabet, stages, 0, (0..space).map(|s| (s, s)).collect())
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn stage_count(&self) -> usize {
        self.stages
    }

    pub fn init(&self) -> u64 {
        self.init
    }

    pub fn transitions(&self) -> &BTreeMap<u64, u64> {
        &self.transitions
    }

    pub fn state_space(&self) -> u64 {
        state_space(self.alphabet, self.stages).expect("validated at construction")
    }

    pub fn dont_care_count(&self) -> u64 {
        self.state_space() - self.transitions.len() as u64
    }

    /// Digit held by `stage` in `state`.
    pub fn digit(&self, state: u64, stage: usize) -> u32 {
        let m = u64::from(self.alphabet);
        ((state / m.pow(stage as u32)) % m) as u32
    }

    /// Digits most significant first, e.g. `"13"` for state 7 in a 4-ary
    /// 2-stage machine.
    pub fn format_state(&self, state: u64) -> String {
        (0..self.stages).rev().map(|q| char::from_digit(self.digit(state, q), 36).unwrap_or('?')).collect()
    }

    /// Value of stage function `f_stage` at `state`, `None` for a don't care.
    pub fn stage_function(&self, stage: usize, state: u64) -> Option<u32> {
        self.transitions.get(&state).map(|&next| self.digit(next, stage))
    }

    /// `i-set(f_stage)` for every value `i`: the specified states mapped to `i`.
    pub fn i_sets(&self, stage: usize) -> Vec<Vec<u64>> {
        let mut sets = vec![Vec::new(); self.alphabet as usize];
        for (&cur, &next) in &self.transitions {
            sets[self.digit(next, stage) as usize].push(cur);
        }
        sets
    }

    pub fn step(&self, state: u64) -> Result<u64, MachineError> {
        if state >= self.state_space() {
            return Err(MachineError::StateOutOfRange { state });
        }
        self.transitions.get(&state).copied().ok_or(MachineError::Unspecified { state })
    }

    /// Stage 0 digit of each of `cycles` consecutive states from `init`.
    pub fn run(&self, cycles: usize) -> Result<DigitSequence, MachineError> {
        if cycles == 0 {
            return Err(MachineError::ZeroCycles);
        }
        let m = u64::from(self.alphabet);
        let mut state = self.init;
        let mut out = Vec::with_capacity(cycles);
        for i in 0..cycles {
            out.push((state % m) as u32);
            if i + 1 < cycles {
                state = self.step(state)?;
            }
        }
        Ok(DigitSequence::new(self.alphabet, out).expect("digits below m"))
    }
}

/// A binary machine: one Boolean table per stage (stage 0 is the least
/// significant state bit), `p` output stages, and the policy that fills
/// don't cares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMachine {
    parallelism: usize,
    init: u64,
    dc_policy: DcPolicy,
    tables: Vec<BoolTable>,
    specified: Vec<u64>,
}

impl BinaryMachine {
    /// Builds a machine from explicit stage tables. `specified` is the shared
    /// domain of the original next-state map; it is derived from the tables
    /// when they still hold don't cares.
    pub fn from_tables(
        tables: Vec<BoolTable>,
        parallelism: usize,
        init: u64,
        dc_policy: DcPolicy,
        specified: Option<Vec<u64>>,
    ) -> Result<Self, MachineError> {
        let stages = tables.len();
        if stages == 0 {
            return Err(MachineError::NoStages);
        }
        if parallelism == 0 || parallelism > stages {
            return Err(MachineError::BadParallelism { p: parallelism, stages });
        }
        if stages > MAX_TABLE_VARS as usize {
            return Err(MachineError::TooWide(stages));
        }
        if tables.iter().any(|t| t.vars() as usize != stages) {
            return Err(MachineError::InconsistentTables);
        }
        let space = 1u64 << stages;
        if init >= space {
            return Err(MachineError::StateOutOfRange { state: init });
        }
        let care = |t: &BoolTable, x: u32| t.get(x) != Ternary::DontCare;
        let derived: Vec<u64> = (0..space as u32).filter(|&x| care(&tables[0], x)).map(u64::from).collect();
        for t in &tables[1..] {
            if (0..space as u32).any(|x| care(t, x) != care(&tables[0], x)) {
                return Err(MachineError::InconsistentTables);
            }
        }
        let specified = match specified {
            Some(mut s) => {
                s.sort_unstable();
                s.dedup();
                if let Some(&bad) = s.iter().find(|&&x| x >= space) {
                    return Err(MachineError::StateOutOfRange { state: bad });
                }
                if !tables[0].is_fully_specified() && s != derived {
                    return Err(MachineError::InconsistentTables);
                }
                s
            }
            None => derived,
        };
        Ok(Self { parallelism, init, dc_policy, tables, specified })
    }

    /// Builds the stage tables from a sparse next-state map over `stages` bits.
    pub fn from_transitions(
        stages: usize,
        parallelism: usize,
        init: u64,
        dc_policy: DcPolicy,
        transitions: &BTreeMap<u64, u64>,
    ) -> Result<Self, MachineError> {
        if stages == 0 {
            return Err(MachineError::NoStages);
        }
        if stages > MAX_TABLE_VARS as usize {
            return Err(MachineError::TooWide(stages));
        }
        let space = 1u64 << stages;
        let mut tables = vec![BoolTable::dont_care(stages as u32)?; stages];
        for (&cur, &next) in transitions {
            for s in [cur, next] {
                if s >= space {
                    return Err(MachineError::StateOutOfRange { state: s });
                }
            }
            for (bit, t) in tables.iter_mut().enumerate() {
                t.set(cur as u32, Ternary::from((next >> bit) & 1 == 1));
            }
        }
        Self::from_tables(tables, parallelism, init, dc_policy, Some(transitions.keys().copied().collect()))
    }

    /// `f_i = x_i` on every vertex.
    pub fn identity(stages: usize, parallelism: usize) -> Result<Self, MachineError> {
        if stages > MAX_TABLE_VARS as usize {
            return Err(MachineError::TooWide(stages));
        }
        let tables = (0..stages)
            .map(|i| BoolTable::from_fn(stages as u32, |x| Ternary::from((x >> i) & 1 == 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_tables(tables, parallelism, 0, DcPolicy::Zero, None)
    }

    pub fn stage_count(&self) -> usize {
        self.tables.len()
    }

    pub fn parallelism(&self) -> usize {
        self.parallelism
    }

    pub fn init(&self) -> u64 {
        self.init
    }

    pub fn dc_policy(&self) -> DcPolicy {
        self.dc_policy
    }

    /// Same tables, recorded under a different policy.
    pub fn with_dc_policy(self, dc_policy: DcPolicy) -> Self {
        Self { dc_policy, ..self }
    }

    /// Stage tables; `tables()[i]` updates stage `i`.
    pub fn tables(&self) -> &[BoolTable] {
        &self.tables
    }

    /// Domain of the original next-state map, ascending.
    pub fn specified_states(&self) -> &[u64] {
        &self.specified
    }

    pub fn is_complete(&self) -> bool {
        self.tables.iter().all(BoolTable::is_fully_specified)
    }

    /// Next state. Don't cares follow the zero/one policy; under `minimize`
    /// the machine must be completed first.
    pub fn step(&self, state: u64) -> Result<u64, MachineError> {
        if state >> self.stage_count() != 0 {
            return Err(MachineError::StateOutOfRange { state });
        }
        let x = state as u32;
        let mut next = 0u64;
        for (bit, t) in self.tables.iter().enumerate() {
            let v = match t.get(x) {
                Ternary::One => true,
                Ternary::Zero => false,
                Ternary::DontCare => match self.dc_policy {
                    DcPolicy::Zero => false,
                    DcPolicy::One => true,
                    DcPolicy::Minimize => return Err(MachineError::Unspecified { state }),
                },
            };
            next |= u64::from(v) << bit;
        }
        Ok(next)
    }

    /// The `p` low stages of the state, most significant bit first.
    pub fn output_bits(&self, state: u64) -> impl Iterator<Item = u32> {
        (0..self.parallelism).rev().map(move |b| ((state >> b) & 1) as u32)
    }

    /// `p * cycles` output bits, sampled before each transition.
    pub fn run(&self, cycles: usize) -> Result<DigitSequence, MachineError> {
        if cycles == 0 {
            return Err(MachineError::ZeroCycles);
        }
        let mut state = self.init;
        let mut bits = Vec::with_capacity(cycles * self.parallelism);
        for i in 0..cycles {
            bits.extend(self.output_bits(state));
            if i + 1 < cycles {
                state = self.step(state)?;
            }
        }
        Ok(DigitSequence::new(2, bits).expect("bits are binary"))
    }

    /// Fills all don't cares according to `policy`; `minimize` fills each
    /// table with [`minimize_fill`]. Vertices on the specified domain are
    /// untouched.
    pub fn complete(&self, policy: DcPolicy) -> Result<BinaryMachine, MachineError> {
        let tables = match policy {
            DcPolicy::Zero => self.tables.iter().map(|t| t.fill_constant(false)).collect(),
            DcPolicy::One => self.tables.iter().map(|t| t.fill_constant(true)).collect(),
            DcPolicy::Minimize => {
                use rayon::prelude::*;
                self.tables.par_iter().map(|t| minimize_fill(t).map(|c| c.table)).collect::<Result<Vec<_>, _>>()?
            }
        };
        Ok(BinaryMachine {
            parallelism: self.parallelism,
            init: self.init,
            dc_policy: policy,
            tables,
            specified: self.specified.clone(),
        })
    }

    /// Next-state map on the specified domain.
    pub fn transitions(&self) -> BTreeMap<u64, u64> {
        self.specified
            .iter()
            .map(|&cur| {
                let x = cur as u32;
                let next =
                    self.tables.iter().enumerate().map(|(bit, t)| u64::from(t.is_on(x)) << bit).fold(0, |a, b| a | b);
                (cur, next)
            })
            .collect()
    }
}

/// Encodes each `2^q`-ary stage as `q` binary stages, digit value `d` as its
/// natural binary code (stage `q*j + b` holds bit `b` of digit `j`). The
/// state integer is therefore unchanged. High binary stages that are zero
/// in every state of the machine are dropped, so the width is the bit
/// length of the largest state it uses (at least `q`). Output is the `q`
/// bits of m-ary stage 0.
pub fn binarize(mm: &MAryMachine) -> Result<BinaryMachine, MachineError> {
    let m = mm.alphabet();
    if !m.is_power_of_two() {
        return Err(MachineError::NotPowerOfTwo(m));
    }
    let q = m.trailing_zeros() as usize;
    let largest = mm.transitions().iter().flat_map(|(&a, &b)| [a, b]).chain([mm.init()]).max().unwrap_or(0);
    let width = (64 - largest.leading_zeros() as usize).max(q);
    debug_assert!(width <= q * mm.stage_count());
    if width > MAX_TABLE_VARS as usize {
        return Err(MachineError::TooWide(width));
    }
    BinaryMachine::from_transitions(width, q, mm.init(), DcPolicy::Zero, mm.transitions())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternary_example() -> MAryMachine {
        let s = [0u64, 3, 1, 7, 4, 2, 11, 6, 15, 8];
        let tr = (0..s.len()).map(|j| (s[j], s[(j + 1) % s.len()])).collect();
        MAryMachine::new(4, 2, 0, tr).unwrap()
    }

    fn octal_example() -> MAryMachine {
        let s = [1u64, 5, 6, 2, 7, 3, 0];
        let tr = (0..s.len()).map(|j| (s[j], s[(j + 1) % s.len()])).collect();
        MAryMachine::new(8, 1, 1, tr).unwrap()
    }

    #[test]
    fn mary_step_examples() {
        assert_eq!(quaternary_example().step(3).unwrap(), 1);
        assert_eq!(octal_example().step(7).unwrap(), 3);
        assert_eq!(octal_example().step(4), Err(MachineError::Unspecified { state: 4 }));
        assert_eq!(octal_example().step(8), Err(MachineError::StateOutOfRange { state: 8 }));
        let id = MAryMachine::identity(3, 2).unwrap();
        for s in 0..9 {
            assert_eq!(id.step(s).unwrap(), s);
        }
    }

    #[test]
    fn mary_run() {
        let out = quaternary_example().run(10).unwrap();
        assert_eq!(out.digits(), &[0, 3, 1, 3, 0, 2, 3, 2, 3, 0]);
        assert_eq!(quaternary_example().run(1).unwrap().digits(), &[0]);
        assert_eq!(quaternary_example().run(0), Err(MachineError::ZeroCycles));
    }

    #[test]
    fn mary_digits_and_sets() {
        let mm = quaternary_example();
        assert_eq!(mm.format_state(7), "13");
        assert_eq!(mm.dont_care_count(), 6);
        assert_eq!(mm.stage_function(0, 0), Some(3));
        assert_eq!(mm.stage_function(0, 12), None);
    }

    #[test]
    fn binarized_octal_tables() {
        let bm = binarize(&octal_example()).unwrap();
        assert_eq!(bm.stage_count(), 3);
        assert_eq!(bm.parallelism(), 3);
        let c = bm.complete(DcPolicy::Zero).unwrap();
        assert_eq!(c.tables()[2].to_pattern(), "01100100");
        assert_eq!(c.tables()[1].to_pattern(), "00100111");
        assert_eq!(c.tables()[0].to_pattern(), "11100001");
        let c = bm.complete(DcPolicy::One).unwrap();
        for t in c.tables() {
            assert_eq!(t.get(4), Ternary::One);
        }
    }

    #[test]
    fn binary_run_and_dc_step() {
        let bm = binarize(&octal_example()).unwrap();
        let bits = bm.run(7).unwrap();
        assert_eq!(bits.digits(), &[0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0]);
        assert_eq!(bm.step(4).unwrap(), 0);
        let one = BinaryMachine { dc_policy: DcPolicy::One, ..bm.clone() };
        assert_eq!(one.step(4).unwrap(), 7);
        let min = BinaryMachine { dc_policy: DcPolicy::Minimize, ..bm };
        assert_eq!(min.step(4), Err(MachineError::Unspecified { state: 4 }));
        assert!(min.complete(DcPolicy::Minimize).unwrap().step(4).is_ok());
    }

    #[test]
    fn complete_keeps_specified_vertices() {
        let bm = binarize(&quaternary_example()).unwrap();
        let tr = bm.transitions();
        for policy in [DcPolicy::Zero, DcPolicy::One, DcPolicy::Minimize] {
            let c = bm.complete(policy).unwrap();
            assert!(c.is_complete());
            assert_eq!(c.transitions(), tr);
            assert_eq!(c.run(10).unwrap(), bm.run(10).unwrap());
        }
        let full = BinaryMachine::identity(3, 1).unwrap();
        assert_eq!(full.complete(DcPolicy::One).unwrap().tables(), full.tables());
    }

    #[test]
    fn binarize_rejects_non_power_of_two() {
        let mm = MAryMachine::new(3, 1, 0, [(0, 1), (1, 0)].into_iter().collect()).unwrap();
        assert_eq!(binarize(&mm), Err(MachineError::NotPowerOfTwo(3)));
    }

    #[test]
    fn binary_alphabet_is_unchanged() {
        let mm = MAryMachine::new(2, 2, 0, [(0u64, 2u64), (2, 1), (1, 0)].into_iter().collect()).unwrap();
        let bm = binarize(&mm).unwrap();
        assert_eq!(bm.stage_count(), 2);
        for q in 0..2 {
            for s in 0..4u64 {
                let expect = match mm.stage_function(q, s) {
                    Some(d) => Ternary::from(d == 1),
                    None => Ternary::DontCare,
                };
                assert_eq!(bm.tables()[q].get(s as u32), expect);
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(MAryMachine::new(1, 1, 0, BTreeMap::new()), Err(MachineError::BadAlphabet(1)));
        assert_eq!(MAryMachine::new(2, 0, 0, BTreeMap::new()), Err(MachineError::NoStages));
        assert_eq!(
            MAryMachine::new(2, 2, 0, [(0, 4)].into_iter().collect()),
            Err(MachineError::StateOutOfRange { state: 4 })
        );
        assert!(matches!(BinaryMachine::identity(3, 4), Err(MachineError::BadParallelism { p: 4, stages: 3 })));
    }
}
