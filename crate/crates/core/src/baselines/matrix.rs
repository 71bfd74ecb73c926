use std::fmt;

use super::bits;
use super::{BaselineError, LfsrSpec};

/// Square matrix over GF(2), rows packed into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, rows: vec![vec![0; bits::words_for(n)]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            bits::set(&mut m.rows[i], i, true);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        bits::get(&self.rows[r], c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        bits::set(&mut self.rows[r], c, v);
    }

    /// Number of ones in row `r`.
    pub fn row_weight(&self, r: usize) -> usize {
        bits::count_ones(&self.rows[r])
    }

    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = BitMatrix::zero(self.n);
        for (dst, row) in out.rows.iter_mut().zip(&self.rows) {
            for (w, &word) in row.iter().enumerate() {
                let mut bitsw = word;
                while bitsw != 0 {
                    let j = w * 64 + bitsw.trailing_zeros() as usize;
                    for (d, s) in dst.iter_mut().zip(&rhs.rows[j]) {
                        *d ^= s;
                    }
                    bitsw &= bitsw - 1;
                }
            }
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut result = BitMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `y = M x` for a packed column vector.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut y = vec![0u64; bits::words_for(self.n)];
        for (i, row) in self.rows.iter().enumerate() {
            let dot = row.iter().zip(x).fold(0u64, |acc, (a, b)| acc ^ (a & b));
            if dot.count_ones() & 1 == 1 {
                bits::flip(&mut y, i);
            }
        }
        y
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.n, self.n)?;
        for r in 0..self.n {
            let row: String = (0..self.n).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// One-step transition of the window state `(s_t, .., s_{t+L-1})`, bit `i`
/// holding `s_{t+i}`: rows shift the window down and the last row forms
/// the feedback.
pub fn companion_matrix(l: &LfsrSpec) -> BitMatrix {
    let n = l.length();
    let mut m = BitMatrix::zero(n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, true);
    }
    for tap in l.taps() {
        m.set(n - 1, n - tap, true);
    }
    m
}

/// An LFSR advanced `p` steps per clock. State bits `0..p` are the bits
/// emitted in that cycle, in time order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelLinearMap {
    p: usize,
    matrix: BitMatrix,
    fill: Vec<u64>,
}

impl ParallelLinearMap {
    pub fn parallelism(&self) -> usize {
        self.p
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn register_length(&self) -> usize {
        self.matrix.size()
    }

    /// Rows of the state that are emitted each cycle.
    pub fn output_rows(&self) -> std::ops::Range<usize> {
        0..self.p
    }

    pub fn step(&self, state: &[u64]) -> Vec<u64> {
        self.matrix.apply(state)
    }

    /// `p * cycles` bits, starting from the register's fill.
    pub fn run(&self, cycles: usize) -> Vec<bool> {
        let mut state = self.fill.clone();
        let mut out = Vec::with_capacity(cycles * self.p);
        for c in 0..cycles {
            out.extend(self.output_rows().map(|i| bits::get(&state, i)));
            if c + 1 < cycles {
                state = self.step(&state);
            }
        }
        out
    }
}

/// The `p`-th power of the companion matrix, `1 <= p <= L`.
pub fn lfsr_parallelize(l: &LfsrSpec, p: usize) -> Result<ParallelLinearMap, BaselineError> {
    if p == 0 || p > l.length() {
        return Err(BaselineError::BadParallelism { p, max: l.length() });
    }
    let matrix = companion_matrix(l).pow(p as u64);
    let mut fill = vec![0u64; bits::words_for(l.length())];
    for (i, &b) in l.fill().iter().enumerate() {
        bits::set(&mut fill, i, b);
    }
    Ok(ParallelLinearMap { p, matrix, fill })
}
