//! State assignment with the residue constraint and construction of the
//! m-ary machine that cycles through the assigned states.
//!
//! Digit `i` draws its states from the pool `B_i = {j*m + i : j < N_max}`,
//! in increasing order by default or in a seeded random order. The j-th
//! digit of the sequence gets the next unused state of its pool, so every
//! state is congruent to its digit modulo `m` and stage 0 of the machine
//! reproduces the sequence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::machine::{MAryMachine, MachineError};
use crate::sequence::{digit_counts, encode_m_ary, period_analysis, DigitCounts, DigitSequence, SequenceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("N_max must be at least 1")]
    EmptyCounts,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Order in which each pool `B_i` is consumed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PermutationPolicy {
    #[default]
    Identity,
    /// Each pool shuffled by ChaCha8 seeded with `seed_from_u64(seed)`,
    /// pools taken in digit order.
    Shuffle(u64),
}

impl fmt::Display for PermutationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermutationPolicy::Identity => f.write_str("identity"),
            PermutationPolicy::Shuffle(seed) => write!(f, "shuffle:{seed}"),
        }
    }
}

impl FromStr for PermutationPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "identity" {
            return Ok(PermutationPolicy::Identity);
        }
        match s.strip_prefix("shuffle:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(PermutationPolicy::Shuffle(seed)),
            _ => Err(format!("unknown permutation `{s}` (expected identity or shuffle:<seed>)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateAssignment {
    pub alphabet: u32,
    pub states: Vec<u64>,
    pub policy: PermutationPolicy,
    /// The used prefix of each pool, in consumption order.
    pub pools: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageBound {
    pub n: usize,
    pub alphabet: u32,
    pub n_max: usize,
}

/// `⌈log_base x⌉` for `x >= 1`, in integers.
pub fn ceil_log(base: u64, x: u64) -> u32 {
    assert!(base >= 2 && x >= 1);
    let mut e = 0;
    let mut power = 1u64;
    while power < x {
        power = power.saturating_mul(base);
        e += 1;
    }
    e
}

/// `n = ⌈log_m N_max⌉ + 1`.
pub fn stage_count(counts: &DigitCounts, alphabet: u32) -> Result<StageBound, SynthError> {
    let n_max = counts.max();
    if n_max == 0 {
        return Err(SynthError::EmptyCounts);
    }
    let n = ceil_log(u64::from(alphabet), n_max as u64) as usize + 1;
    Ok(StageBound { n, alphabet, n_max })
}

/// Binary stages of a p-bit-per-cycle machine: `⌈log_2 N_max⌉ + p`, with
/// `N_max` taken over the radix-`2^p` encoding.
pub fn binary_stage_bound(a2: &DigitSequence, p: u32) -> Result<usize, SynthError> {
    let enc = encode_m_ary(a2, p)?;
    let n_max = digit_counts(&enc.sequence).max();
    Ok(ceil_log(2, n_max as u64) as usize + p as usize)
}

pub fn assign_states(a: &DigitSequence, policy: PermutationPolicy) -> StateAssignment {
    let m = a.alphabet();
    let counts = digit_counts(a);
    let n_max = counts.max() as u64;
    let mut rng = match policy {
        PermutationPolicy::Identity => None,
        PermutationPolicy::Shuffle(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut pools: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let used = counts.count(i);
            if used == 0 {
                return Vec::new();
            }
            let pool = (0..n_max).map(|j| j * u64::from(m) + u64::from(i));
            match rng.as_mut() {
                None => pool.take(used).collect(),
                Some(rng) => {
                    let mut all: Vec<u64> = pool.collect();
                    all.shuffle(rng);
                    all.truncate(used);
                    all
                }
            }
        })
        .collect();

    let mut next = vec![0usize; m as usize];
    let states = a
        .digits()
        .iter()
        .map(|&d| {
            let r = &mut next[d as usize];
            let s = pools[d as usize][*r];
            *r += 1;
            s
        })
        .collect();
    pools.iter_mut().for_each(|p| p.shrink_to_fit());
    StateAssignment { alphabet: m, states, policy, pools }
}

/// Things worth telling the user about an input that is not one clean period.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthWarning {
    /// The sequence only becomes periodic after `pre_period` digits.
    EventuallyPeriodic { pre_period: usize, period: usize },
    /// The sequence repeats a shorter block; the machine still cycles
    /// through all `len` digits.
    ShorterPeriod { period: usize, len: usize },
}

impl fmt::Display for SynthWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthWarning::EventuallyPeriodic { pre_period, period } => write!(
                f,
                "sequence has pre-period {pre_period} and period {period}; synthesizing the whole input as one cycle"
            ),
            SynthWarning::ShorterPeriod { period, len } => {
                write!(f, "sequence repeats with period {period} < {len}; synthesizing the whole input as one cycle")
            }
        }
    }
}

pub fn warnings(a: &DigitSequence) -> Vec<SynthWarning> {
    let r = period_analysis(a);
    let mut out = Vec::new();
    if r.pre_period > 0 {
        out.push(SynthWarning::EventuallyPeriodic { pre_period: r.pre_period, period: r.period });
    } else if r.period < a.len() {
        out.push(SynthWarning::ShorterPeriod { period: r.period, len: a.len() });
    }
    out
}

/// The machine stepping `s_j -> s_{j+1 mod k}` over `⌈log_m N_max⌉ + 1`
/// stages, starting from `s_0`.
pub fn synthesize_machine(a: &DigitSequence, policy: PermutationPolicy) -> Result<MAryMachine, SynthError> {
    let bound = stage_count(&digit_counts(a), a.alphabet())?;
    let sa = assign_states(a, policy);
    let s = &sa.states;
    let k = s.len();
    let transitions: BTreeMap<u64, u64> = (0..k).map(|j| (s[j], s[(j + 1) % k])).collect();
    assert_eq!(transitions.len(), k, "assigned states must be distinct");
    Ok(MAryMachine::new(a.alphabet(), bound.n, s[0], transitions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::binarize;

    fn a2() -> DigitSequence {
        DigitSequence::binary([0u32, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0]).unwrap()
    }

    fn a4() -> DigitSequence {
        DigitSequence::new(4, vec![0, 3, 1, 3, 0, 2, 3, 2, 3, 0]).unwrap()
    }

    #[test]
    fn assignment_examples() {
        assert_eq!(assign_states(&a4(), PermutationPolicy::Identity).states, vec![0, 3, 1, 7, 4, 2, 11, 6, 15, 8]);
        let a8 = DigitSequence::new(8, vec![1, 5, 6, 2, 7, 3, 0]).unwrap();
        assert_eq!(assign_states(&a8, PermutationPolicy::Identity).states, vec![1, 5, 6, 2, 7, 3, 0]);
        let ab = DigitSequence::binary([0u32, 1]).unwrap();
        assert_eq!(assign_states(&ab, PermutationPolicy::Identity).states, vec![0, 1]);
    }

    #[test]
    fn shuffled_assignment_keeps_residues() {
        let a = a4();
        for seed in 0..20 {
            let sa = assign_states(&a, PermutationPolicy::Shuffle(seed));
            let mut seen = std::collections::HashSet::new();
            for (j, &s) in sa.states.iter().enumerate() {
                assert_eq!(s % 4, u64::from(a.digits()[j]));
                assert!(s < 4 * 4);
                assert!(seen.insert(s));
            }
            assert_eq!(sa, assign_states(&a, PermutationPolicy::Shuffle(seed)));
        }
    }

    #[test]
    fn stage_count_examples() {
        let n = |a: &DigitSequence| stage_count(&digit_counts(a), a.alphabet()).unwrap().n;
        assert_eq!(n(&a4()), 2);
        assert_eq!(n(&a2()), 5);
        assert_eq!(n(&DigitSequence::new(8, vec![1, 5, 6, 2, 7, 3, 0]).unwrap()), 1);
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 11), 4);
        assert_eq!(ceil_log(4, 16), 2);
        assert_eq!(ceil_log(4, 17), 3);
    }

    #[test]
    fn binary_bound_examples() {
        assert_eq!(binary_stage_bound(&a2(), 1).unwrap(), 5);
        assert_eq!(binary_stage_bound(&a2(), 2).unwrap(), 4);
        assert_eq!(binary_stage_bound(&a2(), 3).unwrap(), 3);
        assert!(binary_stage_bound(&a2(), 0).is_err());
    }

    #[test]
    fn constant_sequence_cycle() {
        let a = DigitSequence::binary([0u32, 0, 0, 0]).unwrap();
        let mm = synthesize_machine(&a, PermutationPolicy::Identity).unwrap();
        assert_eq!(mm.stage_count(), 3);
        let mut s = mm.init();
        let mut cycle = vec![s];
        for _ in 0..4 {
            s = mm.step(s).unwrap();
            cycle.push(s);
        }
        assert_eq!(cycle, vec![0, 2, 4, 6, 0]);
    }

    #[test]
    fn quaternary_i_sets() {
        let mm = synthesize_machine(&a4(), PermutationPolicy::Identity).unwrap();
        let fmt = |v: &Vec<u64>| v.iter().map(|&s| mm.format_state(s)).collect::<Vec<_>>();
        assert_eq!(fmt(&mm.i_sets(1)[0]), ["00", "03", "10", "20"]);
        assert_eq!(fmt(&mm.i_sets(0)[3]), ["00", "01", "02", "12"]);
    }

    #[test]
    fn regenerates_and_warns() {
        let a = a2();
        let mm = synthesize_machine(&a, PermutationPolicy::Shuffle(9)).unwrap();
        let out = mm.run(40).unwrap();
        assert_eq!(&out.digits()[..20], a.digits());
        assert_eq!(&out.digits()[20..], a.digits());
        assert!(warnings(&a).is_empty());

        let ev = DigitSequence::binary([1u32, 1, 0, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(warnings(&ev), vec![SynthWarning::EventuallyPeriodic { pre_period: 3, period: 2 }]);
        let rep = DigitSequence::binary([0u32, 1, 0, 1]).unwrap();
        assert_eq!(warnings(&rep), vec![SynthWarning::ShorterPeriod { period: 2, len: 4 }]);
    }

    #[test]
    fn binarized_width_meets_bound() {
        for p in 1..=6u32 {
            let enc = encode_m_ary(&a2(), p).unwrap();
            let mm = synthesize_machine(&enc.sequence, PermutationPolicy::Identity).unwrap();
            let bm = binarize(&mm).unwrap();
            assert_eq!(bm.stage_count(), binary_stage_bound(&a2(), p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("identity".parse(), Ok(PermutationPolicy::Identity));
        assert_eq!("shuffle:42".parse(), Ok(PermutationPolicy::Shuffle(42)));
        assert!("shuffle:x".parse::<PermutationPolicy>().is_err());
        assert_eq!(PermutationPolicy::Shuffle(3).to_string(), "shuffle:3");
    }
}
