//! Finite m-ary sequences: validation, radix-2^p regrouping, digit
//! statistics, periodicity analysis, and the three experimental sequence
//! families (seeded random, Golay complementary pairs, Legendre).
//!
//! Bit order inside a p-bit group is most significant first: the group
//! `(a_i, a_{i+1}, .., a_{i+p-1})` has value `a_i * 2^(p-1) + .. + a_{i+p-1}`.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest group width accepted by [`encode_m_ary`].
pub const MAX_GROUP_BITS: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("sequence must contain at least one digit")]
    Empty,
    #[error("digit {digit} at index {index} is out of range for alphabet size {alphabet}")]
    DigitOutOfRange { index: usize, digit: u32, alphabet: u32 },
    #[error("group width p must be in 1..={max}, got {0}", max = MAX_GROUP_BITS)]
    BadGroupWidth(u32),
    #[error("expected a binary sequence, got alphabet size {0}")]
    NotBinary(u32),
    #[error("alphabet size {alphabet} is not 2^{p}")]
    AlphabetMismatch { alphabet: u32, p: u32 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("golay order {0} is too large")]
    GolayOrderTooLarge(u32),
}

/// A nonempty finite sequence over `{0, .., m-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitSequence {
    alphabet: u32,
    digits: Vec<u32>,
}

impl DigitSequence {
    pub fn new(alphabet: u32, digits: Vec<u32>) -> Result<Self, SequenceError> {
        if alphabet < 2 {
            return Err(SequenceError::AlphabetTooSmall(alphabet));
        }
        if digits.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some((index, &digit)) = digits.iter().enumerate().find(|(_, &d)| d >= alphabet) {
            return Err(SequenceError::DigitOutOfRange { index, digit, alphabet });
        }
        Ok(Self { alphabet, digits })
    }

    /// Binary sequence from bits given as `0`/`1` values.
    pub fn binary<I>(bits: I) -> Result<Self, SequenceError>
    where
        I: IntoIterator,
        I::Item: Into<u32>,
    {
        Self::new(2, bits.into_iter().map(Into::into).collect())
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet == 2
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }

    fn ensure_binary(&self) -> Result<(), SequenceError> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(SequenceError::NotBinary(self.alphabet))
        }
    }
}

impl fmt::Debug for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitSequence(m={}, {:?})", self.alphabet, self.digits)
    }
}

/// Per-digit occurrence counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitCounts {
    counts: Vec<usize>,
    max: usize,
}

impl DigitCounts {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, digit: u32) -> usize {
        self.counts.get(digit as usize).copied().unwrap_or(0)
    }

    /// Largest per-digit count (`N_max`).
    pub fn max(&self) -> usize {
        self.max
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn digit_counts(a: &DigitSequence) -> DigitCounts {
    let mut counts = vec![0usize; a.alphabet as usize];
    for &d in &a.digits {
        counts[d as usize] += 1;
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    DigitCounts { counts, max }
}

/// Least pre-period and period of a finite sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub pre_period: usize,
    pub period: usize,
    pub purely_periodic: bool,
}

/// Finds the least period `k` and, for it, the least pre-period `k0` such
/// that `a_i = a_{i+k}` for every in-range `i >= k0`. A candidate only
/// counts when its periodic tail holds at least two full periods
/// (`k0 + 2k <= len`) and is longer than the pre-period (`2 k0 < len`), so
/// a sequence that merely ends in a short repeat is not called eventually
/// periodic. Without such a candidate the whole sequence is one period:
/// `(0, len)`.
pub fn period_analysis(a: &DigitSequence) -> PeriodReport {
    let d = &a.digits;
    let n = d.len();
    for period in 1..=n / 2 {
        // mismatch positions i (with i + period < n) where d[i] != d[i+period];
        // the least valid pre-period is one past the last mismatch.
        let last_mismatch = (0..n - period).rev().find(|&i| d[i] != d[i + period]);
        let pre_period = last_mismatch.map_or(0, |i| i + 1);
        if pre_period + 2 * period <= n && 2 * pre_period < n {
            return PeriodReport { pre_period, period, purely_periodic: pre_period == 0 };
        }
    }
    PeriodReport { pre_period: 0, period: n, purely_periodic: true }
}

/// Result of regrouping a binary sequence into radix-2^p digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub sequence: DigitSequence,
    /// Bits appended to reach a multiple of p (empty when `k mod p == 0`).
    pub pad: Vec<u32>,
}

/// Regroups a binary sequence into `⌈k/p⌉` digits of radix `2^p`, most
/// significant bit first. A short final group is completed with the pad
/// that minimises `N_max`; ties go to the numerically smallest pad.
pub fn encode_m_ary(a2: &DigitSequence, p: u32) -> Result<Encoded, SequenceError> {
    a2.ensure_binary()?;
    if p == 0 || p > MAX_GROUP_BITS {
        return Err(SequenceError::BadGroupWidth(p));
    }
    let p_us = p as usize;
    let alphabet = 1u32 << p;
    let bits = &a2.digits;
    let full = bits.len() / p_us;
    let rem = bits.len() % p_us;

    let group = |chunk: &[u32]| chunk.iter().fold(0u32, |acc, &b| (acc << 1) | b);
    let mut digits: Vec<u32> = bits.chunks_exact(p_us).map(group).collect();
    debug_assert_eq!(digits.len(), full);

    let mut pad = Vec::new();
    if rem > 0 {
        let pad_len = p_us - rem;
        let mut counts = vec![0usize; alphabet as usize];
        for &d in &digits {
            counts[d as usize] += 1;
        }
        let base_max = counts.iter().copied().max().unwrap_or(0);
        let prefix = group(&bits[full * p_us..]) << pad_len;
        // candidates in increasing numeric order, i.e. lexicographic on bits
        let mut best = (usize::MAX, 0u32);
        for cand in 0..(1u32 << pad_len) {
            let n_max = base_max.max(counts[(prefix | cand) as usize] + 1);
            if n_max < best.0 {
                best = (n_max, cand);
            }
        }
        let chosen = best.1;
        pad = (0..pad_len).rev().map(|i| (chosen >> i) & 1).collect();
        digits.push(prefix | chosen);
    }

    Ok(Encoded { sequence: DigitSequence { alphabet, digits }, pad })
}

/// Inverse of [`encode_m_ary`]: expands every digit into p bits, most
/// significant first. The output includes any pad bits.
pub fn decode_m_ary(am: &DigitSequence, p: u32) -> Result<DigitSequence, SequenceError> {
    if p == 0 || p > MAX_GROUP_BITS {
        return Err(SequenceError::BadGroupWidth(p));
    }
    if !am.alphabet.is_power_of_two() || am.alphabet != 1u32 << p {
        return Err(SequenceError::AlphabetMismatch { alphabet: am.alphabet, p });
    }
    let digits = am.digits.iter().flat_map(|&d| (0..p).rev().map(move |i| (d >> i) & 1)).collect();
    Ok(DigitSequence { alphabet: 2, digits })
}

/// Seeded random bits.
///
/// Bit `i` is bit `i mod 64` (least significant first) of the `i / 64`-th
/// `next_u64` output of ChaCha8 seeded with `seed_from_u64(seed)`.
pub fn gen_random(length: usize, seed: u64) -> Result<DigitSequence, SequenceError> {
    if length == 0 {
        return Err(SequenceError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut digits = Vec::with_capacity(length);
    while digits.len() < length {
        let word = rng.next_u64();
        let take = (length - digits.len()).min(64);
        digits.extend((0..take).map(|i| ((word >> i) & 1) as u32));
    }
    Ok(DigitSequence { alphabet: 2, digits })
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre sequence of odd prime length `l`: `a_0 = 1`, and for `i > 0`
/// `a_i = 0` when `i` is a quadratic residue mod `l`, otherwise `1`.
pub fn gen_legendre(l: u64) -> Result<DigitSequence, SequenceError> {
    if l.is_multiple_of(2) || !is_prime(l) {
        return Err(SequenceError::NotOddPrime(l));
    }
    let len = usize::try_from(l).map_err(|_| SequenceError::NotOddPrime(l))?;
    let mut residue = vec![false; len];
    for x in 1..l {
        residue[((x * x) % l) as usize] = true;
    }
    let mut digits: Vec<u32> = residue.iter().map(|&r| u32::from(!r)).collect();
    digits[0] = 1;
    Ok(DigitSequence { alphabet: 2, digits })
}

/// Golay complementary pair of length `2^t` built by `A' = A‖B`,
/// `B' = A‖!B` from `A = B = (0)`.
pub fn gen_golay_pair(order: u32) -> Result<(DigitSequence, DigitSequence), SequenceError> {
    if order > 30 {
        return Err(SequenceError::GolayOrderTooLarge(order));
    }
    let mut a = vec![0u32];
    let mut b = vec![0u32];
    for _ in 0..order {
        let mut na = a.clone();
        na.extend_from_slice(&b);
        let mut nb = a;
        nb.extend(b.iter().map(|&x| x ^ 1));
        a = na;
        b = nb;
    }
    Ok((DigitSequence { alphabet: 2, digits: a }, DigitSequence { alphabet: 2, digits: b }))
}

/// Aperiodic autocorrelation at shift `u` with bits mapped `0 -> +1`, `1 -> -1`.
pub fn aperiodic_autocorrelation(a: &DigitSequence, u: usize) -> i64 {
    let d = &a.digits;
    if u >= d.len() {
        return 0;
    }
    d.iter().zip(&d[u..]).map(|(&x, &y)| if x == y { 1 } else { -1 }).sum()
}

pub mod text {
    //! Sequence text format: one character per digit (`0`-`9` then `a`-`v`),
    //! whitespace ignored, `#` lines are comments, optional `m=<int>` header.

    use super::{DigitSequence, SequenceError};
    use thiserror::Error;

    pub const MAX_TEXT_ALPHABET: u32 = 32;

    #[derive(Debug, Error, Clone, PartialEq, Eq)]
    pub enum TextError {
        #[error("line {line}: bad header `{token}`")]
        BadHeader { line: usize, token: String },
        #[error("line {line}: unexpected character `{ch}`")]
        BadChar { line: usize, ch: char },
        #[error("line {line}: digit `{ch}` out of range for m={alphabet}")]
        OutOfRange { line: usize, ch: char, alphabet: u32 },
        #[error("alphabet size {0} is outside 2..=32")]
        BadAlphabet(u32),
        #[error(transparent)]
        Sequence(#[from] SequenceError),
    }

    fn digit_value(ch: char) -> Option<u32> {
        match ch {
            '0'..='9' => Some(ch as u32 - '0' as u32),
            'a'..='v' => Some(ch as u32 - 'a' as u32 + 10),
            'A'..='V' => Some(ch as u32 - 'A' as u32 + 10),
            _ => None,
        }
    }

    fn digit_char(d: u32) -> char {
        char::from_digit(d, MAX_TEXT_ALPHABET).expect("digit below 32")
    }

    pub fn parse(text: &str) -> Result<DigitSequence, TextError> {
        let mut alphabet = 2u32;
        let mut seen_digits = false;
        let mut digits = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("m=") {
                if seen_digits {
                    return Err(TextError::BadHeader { line: line_no, token: line.to_string() });
                }
                alphabet =
                    rest.trim().parse().map_err(|_| TextError::BadHeader { line: line_no, token: line.to_string() })?;
                if !(2..=MAX_TEXT_ALPHABET).contains(&alphabet) {
                    return Err(TextError::BadAlphabet(alphabet));
                }
                continue;
            }
            for ch in line.chars().filter(|c| !c.is_whitespace()) {
                let d = digit_value(ch).ok_or(TextError::BadChar { line: line_no, ch })?;
                if d >= alphabet {
                    return Err(TextError::OutOfRange { line: line_no, ch, alphabet });
                }
                digits.push(d);
                seen_digits = true;
            }
        }
        Ok(DigitSequence::new(alphabet, digits)?)
    }

    /// Writes a header only for non-binary sequences, then all digits on one line.
    pub fn write(a: &DigitSequence) -> Result<String, TextError> {
        if a.alphabet() > MAX_TEXT_ALPHABET {
            return Err(TextError::BadAlphabet(a.alphabet()));
        }
        let mut out = String::with_capacity(a.len() + 8);
        if a.alphabet() != 2 {
            out.push_str(&format!("m={}\n", a.alphabet()));
        }
        out.extend(a.digits().iter().map(|&d| digit_char(d)));
        out.push('\n');
        Ok(out)
    }
}
